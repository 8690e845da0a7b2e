#include <algorithm>
#include <map>
#include <string>
#include <optional>
#include <stdexcept>

#include "rbdecomp/cuboid.hpp"
#include "rbdecomp/cycle_synth.hpp"

namespace rbd {

std::vector<Block> invert_blocks(const std::vector<Block>& bs) {
  std::vector<Block> out;
  out.reserve(bs.size());
  for (auto it = bs.rbegin(); it != bs.rend(); ++it) out.push_back(Block{it->dim, inverse(it->inner)});
  return out;
}

std::pair<int, int> spare_dims(int n, int a, int b) {
  std::vector<int> v;
  for (int d = 1; d <= n && v.size() < 2; ++d)
    if (d != a && d != b) v.push_back(d);
  if (v.size() < 2) throw contract_error("spare_dims: not enough dimensions");
  return {v[0], v[1]};
}

Block lower_controlled(const Perm& q, int r1, int d) {
  int n = q.n() + 1;
  return Block{d, restrict(assemble_controlled(Perm(n - 1), q, r1), d)};
}

namespace {

void check_dims(const Perm& s, int r1, int r2, int r3, int r4) {
  int n = s.n();
  for (int d : {r1, r2, r3, r4})
    if (d < 1 || d > n) throw contract_error("controlled_to_identity: dimension out of range");
  if (r2 == r1 || r3 == r1 || r4 == r1 || r3 == r4 || r2 == r3 || r2 == r4)
    throw contract_error("controlled_to_identity: dimensions must be distinct");
  if (n < 4) throw contract_error("controlled_to_identity: n < 4");
  if (!is_controlled(s, r1)) throw contract_error("controlled_to_identity: input is not controlled on r1");
  if (!is_even(s)) throw contract_error("controlled_to_identity: odd permutation");
}

// the five blocks for a given eliminator gp (concurrent on r2 inside the r1-removed space)
ControlledSynthesis synthesize_controlled(const Perm& f, const Perm& k0, const Perm& gp, int r1, int r2, int r3, int r4) {
  int n = f.n() + 1;
  Perm k = compose(k0, gp);
  auto rho = synthesize_pattern(cycle_pattern(k), sub_dim(r4, r1), sub_dim(r3, r1), n - 1);
  const Perm& rho1 = rho.pi;   // on r4
  const Perm& rho2 = rho.tau;  // on r3
  Perm h = conjugator(k, compose(rho1, rho2));
  ControlledSynthesis out;
  out.blocks[0] = lower_controlled(gp, r1, r2);
  out.blocks[1] = Block{r1, inverse(h)};
  out.blocks[2] = lower_controlled(inverse(rho2), r1, r3);
  out.blocks[3] = lower_controlled(inverse(rho1), r1, r4);
  out.blocks[4] = Block{r1, compose(h, inverse(f))};
  return out;
}

void check_identity(const Perm& s, const ControlledSynthesis& cs) {
  Perm check = s;
  for (auto& b : cs.blocks) apply_block_right(check, b);
  if (!check.is_identity()) throw std::logic_error("controlled_to_identity: product is not the identity");
}

}  // namespace

ControlledSynthesis controlled_to_identity(const Perm& s, int r1, int r2, int r3, int r4) {
  check_dims(s, r1, r2, r3, r4);
  int n = s.n();
  auto [f, g] = controlled_halves(s, r1);
  Perm k0 = compose(inverse(f), g);
  Perm gp(n - 1);
  std::size_t rounds = 0;
  if (!cycle_pattern(k0).free_of_35()) {
    if (n < 6) throw contract_error("controlled_to_identity: 3/5-cycle elimination needs n >= 6");
    auto el = eliminate_35_traced(k0, sub_dim(r2, r1));
    gp = std::move(el.pi);
    rounds = el.rounds;
  }
  auto out = synthesize_controlled(f, k0, gp, r1, r2, r3, r4);
  out.rounds_35 = rounds;
  check_identity(s, out);
  return out;
}

namespace {

std::vector<Block> drop_trivial(std::vector<Block> bs, bool keep) {
  if (keep) return bs;
  std::vector<Block> out;
  for (auto& b : bs)
    if (!b.trivial()) out.push_back(std::move(b));
  return out;
}

void check_product(const Perm& s, const std::vector<Block>& bs, const char* who) {
  if (product(s.n(), bs) != s) throw std::logic_error(std::string(who) + ": block product differs from the input");
}

template <class F>
void any_inner(int m, F&& f) {
  std::vector<node_t> v(std::size_t(1) << m);
  for (node_t i = 0; i < v.size(); ++i) v[i] = i;
  do {
    if (f(Perm::unchecked(m, v))) return;
  } while (std::next_permutation(v.begin(), v.end()));
}

// s * c0 c1 c2 * p0 .. p4 = id gives s = p4^-1 .. p0^-1 c2^-1 c1^-1 c0^-1; p0 and c2 merge when
// they share a dimension
std::vector<Block> assemble(const ControlResult& ctl, const ControlledSynthesis& cs) {
  std::vector<Block> bs;
  for (int i = 4; i >= 1; --i) bs.push_back(Block{cs.blocks[i].dim, inverse(cs.blocks[i].inner)});
  if (cs.blocks[0].dim == ctl.blocks[2].dim) {
    bs.push_back(Block{cs.blocks[0].dim, compose(inverse(cs.blocks[0].inner), inverse(ctl.blocks[2].inner))});
  } else {
    bs.push_back(Block{cs.blocks[0].dim, inverse(cs.blocks[0].inner)});
    bs.push_back(Block{ctl.blocks[2].dim, inverse(ctl.blocks[2].inner)});
  }
  bs.push_back(Block{ctl.blocks[1].dim, inverse(ctl.blocks[1].inner)});
  bs.push_back(Block{ctl.blocks[0].dim, inverse(ctl.blocks[0].inner)});
  return bs;
}

// Four bits are too few for the elimination lemma, so the eliminator is found by trying
// every concurrent 2-bit factor on each spare dimension.
std::optional<std::vector<Block>> four_bit_blocks(const Perm& s, int r1) {
  auto ctl = to_controlled(s, r1);
  auto [f, g] = controlled_halves(ctl.controlled, r1);
  Perm k0 = compose(inverse(f), g);
  std::vector<int> order{ctl.r_pair};
  for (int d = 1; d <= 4; ++d)
    if (d != r1 && d != ctl.r_pair) order.push_back(d);
  for (int r2 : order) {
    auto [r3, r4] = spare_dims(4, r1, r2);
    std::optional<Perm> gp;
    if (cycle_pattern(k0).free_of_35()) gp = Perm(3);
    else
      any_inner(2, [&](const Perm& q) {
        Perm cand = lift(q, sub_dim(r2, r1));
        if (!cycle_pattern(compose(k0, cand)).free_of_35()) return false;
        gp = cand;
        return true;
      });
    if (!gp) continue;
    auto cs = synthesize_controlled(f, k0, *gp, r1, r2, r3, r4);
    check_identity(ctl.controlled, cs);
    return assemble(ctl, cs);
  }
  return std::nullopt;
}

std::vector<Block> greedy_blocks(const Perm& s, int r1) {
  int n = s.n();
  if (s.is_identity()) return {};
  if (n == 4) {
    for (int k = 0; k < 4; ++k) {
      int d = 1 + (r1 - 1 + k) % 4;
      if (auto bs = four_bit_blocks(s, d)) return *bs;
    }
    throw contract_error("greedy: no 4-bit route found");
  }
  auto ctl = to_controlled(s, r1);
  auto [f, g] = controlled_halves(ctl.controlled, r1);
  Perm k = compose(inverse(f), g);
  std::vector<Block> out{Block{r1, f}};
  for (auto& b : greedy_blocks(k, 1)) {
    int d = super_dim(b.dim, r1);
    out.push_back(lower_controlled(b.lifted(), r1, d));
  }
  for (auto& b : invert_blocks({ctl.blocks.begin(), ctl.blocks.end()})) out.push_back(std::move(b));
  return out;
}

}  // namespace

Decomposition decompose_greedy(const Perm& s, int r1) {
  int n = s.n();
  if (n < 4) throw contract_error("decompose: n < 4 is not supported");
  if (r1 < 1 || r1 > n) throw contract_error("decompose: dimension out of range");
  if (!is_even(s)) throw contract_error("decompose: odd permutation");
  Decomposition d;
  d.n = n;
  d.mode = Mode::greedy;
  d.source_digest = digest(s);
  d.blocks = drop_trivial(greedy_blocks(s, r1), false);
  check_product(s, d.blocks, "decompose_greedy");
  return d;
}

Decomposition decompose7(const Perm& s, const Options& opt) {
  int n = s.n();
  if (!is_even(s)) throw contract_error("decompose7: odd permutation");
  if (n < 6) {
    if (n < 4) throw contract_error("decompose7: n < 4");
    return decompose_greedy(s, opt.r1);
  }
  int r1 = opt.r1;
  if (r1 < 1 || r1 > n) throw contract_error("decompose7: dimension out of range");
  Decomposition d;
  d.n = n;
  d.mode = Mode::block7;
  d.source_digest = digest(s);
  if (s.is_identity()) return d;

  auto ctl = to_controlled(s, r1);
  int r2 = ctl.r_pair;
  auto [r3, r4] = spare_dims(n, r1, r2);
  auto cs = controlled_to_identity(ctl.controlled, r1, r2, r3, r4);
  d.rounds_35 = cs.rounds_35;
  d.case_labels.push_back(to_string(ctl.first_label));
  if (ctl.switched) d.case_labels.push_back(to_string(ctl.used_label));

  auto bs = assemble(ctl, cs);
  d.blocks = drop_trivial(std::move(bs), opt.keep_identity_blocks);
  check_product(s, d.blocks, "decompose7");
  return d;
}

}  // namespace rbd
