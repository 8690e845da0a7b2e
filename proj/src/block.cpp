#include "rbdecomp/block.hpp"

namespace rbd {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::block7: return "block7";
    case Mode::even10: return "even10";
    case Mode::greedy: return "greedy";
  }
  return "?";
}

void apply_block_right(Perm& p, const Block& b) {
  int n = p.n();
  if (b.inner.n() != n - 1) throw contract_error("block width mismatch");
  // (p * lift)(x) = p(lift(x))
  std::vector<node_t> out(p.size());
  const auto& pi = p.image();
  for (node_t x = 0; x < p.size(); ++x) {
    node_t y = remove_bit(x, n, b.dim);
    out[x] = pi[insert_bit(b.inner[y], n, b.dim, bit_at(x, n, b.dim))];
  }
  p = Perm::unchecked(n, std::move(out));
}

Perm product(int n, const std::vector<Block>& blocks) {
  Perm acc(n);
  for (const auto& b : blocks) apply_block_right(acc, b);
  return acc;
}

}  // namespace rbd
