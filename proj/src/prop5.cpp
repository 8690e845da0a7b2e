#include <stdexcept>
#include <string>

#include "rbdecomp/cuboid.hpp"
#include "rbdecomp/cycle_synth.hpp"
#include "rbdecomp/even_synth.hpp"

namespace rbd {

namespace {

void check_even_dims(const Perm& s, int r1, int r2, int r3, int r4) {
  int n = s.n();
  if (n < 10) throw contract_error("controlled_to_identity_even: n < 10");
  for (int d : {r1, r2, r3, r4})
    if (d < 1 || d > n) throw contract_error("controlled_to_identity_even: dimension out of range");
  if (r2 == r1 || r3 == r1 || r4 == r1 || r2 == r3 || r2 == r4 || r3 == r4)
    throw contract_error("controlled_to_identity_even: dimensions must be distinct");
  if (!is_controlled(s, r1)) throw contract_error("controlled_to_identity_even: input is not controlled on r1");
  if (!is_even(s)) throw contract_error("controlled_to_identity_even: odd permutation");
}

// Two 13-cycles on fix-point pairs {x, x^d}, x taken lowest first; concurrent and even on d.
Perm two_13_cycles(const Perm& k, int d) {
  node_t mask = dim_mask(k.n(), d);
  std::vector<node_t> low, high;
  for (node_t x = 0; x < k.size() && low.size() < 13; ++x)
    if (!(x & mask) && k(x) == x && k(x | mask) == (x | mask)) {
      low.push_back(x);
      high.push_back(x | mask);
    }
  if (low.size() < 13) throw std::logic_error("controlled_to_identity_even: fewer than 13 fix-point pairs");
  return from_cycles(k.n(), {low, high});
}

}  // namespace

EvenControlledSynthesis controlled_to_identity_even(const Perm& s, int r1, int r2, int r3, int r4) {
  check_even_dims(s, r1, r2, r3, r4);
  int n = s.n();
  int m = n - 1;
  int d2 = sub_dim(r2, r1), d3 = sub_dim(r3, r1), d4 = sub_dim(r4, r1);
  auto [f, g] = controlled_halves(s, r1);
  Perm k0 = compose(inverse(f), g);

  EvenControlledSynthesis out;
  const int dims[8] = {r1, r3, r4, r1, r3, r2, r1, r2};
  if (s.is_identity()) {
    for (int i = 0; i < 8; ++i) out.blocks[i] = Block{dims[i], Perm(m)};
    return out;
  }
  auto el = eliminate_35_even_traced(k0, d2);
  out.stage2_rounds = el.stage2_rounds;
  Perm gp = el.pi;
  Perm k = compose(k0, gp);
  if (!even_synthesis_applies(cycle_pattern(k))) {
    gp = compose(gp, two_13_cycles(k, d2));
    k = compose(k0, gp);
    out.added_13_cycles = true;
  }

  // f and g*gp share a parity; an odd pair is shifted by a concurrently odd s built from even blocks
  Perm sp(m);
  std::array<Perm, 4> odd_parts{Perm(n), Perm(n), Perm(n), Perm(n)};
  if (!is_even(f)) {
    auto ob = odd_block_from_even(n, r1, r2, r3);
    if (compose(ob.pi, ob.pi) != Perm(n)) throw std::logic_error("controlled_to_identity_even: odd block is not an involution");
    sp = restrict(ob.pi, r1);
    odd_parts = ob.parts;
    out.odd_repair = true;
  }
  Perm fs = compose(f, sp);
  Perm target = compose({inverse(sp), k, sp});  // (fs)^-1 g gp s

  auto tt = synthesize_pattern_even(cycle_pattern(k), d3, d4, m);
  Perm h = even_conjugator(compose(tt.pi, tt.tau), target);

  // s*[id,gp] = lift(fsh) [id,tau1] [id,tau2] lift(h^-1) lift(s^-1)
  Block tail = lower_controlled(gp, r1, r2);
  out.blocks[0] = Block{r1, compose(fs, h)};
  out.blocks[1] = lower_controlled(tt.pi, r1, r3);
  out.blocks[2] = lower_controlled(tt.tau, r1, r4);
  out.blocks[3] = Block{r1, inverse(h)};
  out.blocks[4] = Block{r3, restrict(odd_parts[0], r3)};
  out.blocks[5] = Block{r2, restrict(odd_parts[1], r2)};
  out.blocks[6] = Block{r1, restrict(odd_parts[2], r1)};
  out.blocks[7] = Block{r2, compose(restrict(odd_parts[3], r2), inverse(tail.inner))};

  for (int i = 0; i < 8; ++i)
    if (out.blocks[i].dim != dims[i]) throw std::logic_error("controlled_to_identity_even: block order");
  for (const auto& b : out.blocks)
    if (!is_even(b.inner)) throw std::logic_error("controlled_to_identity_even: block on dim " + std::to_string(b.dim) + " is odd");
  if (product(n, {out.blocks.begin(), out.blocks.end()}) != s)
    throw std::logic_error("controlled_to_identity_even: product differs from the input");
  return out;
}

Decomposition decompose10(const Perm& s, int r1) {
  int n = s.n();
  if (!is_even(s)) throw contract_error("decompose10: odd permutation");
  if (n < 10) throw contract_error("decompose10: n < 10 is not supported in even mode");
  if (r1 < 1 || r1 > n) throw contract_error("decompose10: dimension out of range");
  Decomposition d;
  d.n = n;
  d.mode = Mode::even10;
  d.source_digest = digest(s);
  if (s.is_identity()) return d;

  auto ctl = to_controlled_even(s, r1);
  int r2 = ctl.r_pair;
  auto [r3, r4] = spare_dims(n, r1, r2);
  auto cs = controlled_to_identity_even(ctl.controlled, r1, r2, r3, r4);
  d.rounds_35 = cs.stage2_rounds;
  d.case_labels.push_back(to_string(ctl.first_label));
  if (ctl.switched) d.case_labels.push_back(to_string(ctl.used_label));

  // s c0 c1 c2 = ctl.controlled = b0 .. b7, so s = b0 .. b7 c2^-1 c1^-1 c0^-1
  std::vector<Block> bs(cs.blocks.begin(), cs.blocks.begin() + 7);
  const Block& last = cs.blocks[7];
  if (last.dim == ctl.blocks[2].dim) {
    bs.push_back(Block{last.dim, compose(last.inner, inverse(ctl.blocks[2].inner))});
  } else {
    bs.push_back(last);
    bs.push_back(Block{ctl.blocks[2].dim, inverse(ctl.blocks[2].inner)});
  }
  bs.push_back(Block{ctl.blocks[1].dim, inverse(ctl.blocks[1].inner)});
  bs.push_back(Block{ctl.blocks[0].dim, inverse(ctl.blocks[0].inner)});
  for (auto& b : bs)
    if (!b.trivial()) d.blocks.push_back(std::move(b));
  if (d.blocks.size() > 10) throw std::logic_error("decompose10: more than 10 blocks");
  for (const auto& b : d.blocks)
    if (!is_even(b.inner)) throw std::logic_error("decompose10: odd block");
  if (product(n, d.blocks) != s) throw std::logic_error("decompose10: block product differs from the input");
  return d;
}

}  // namespace rbd
