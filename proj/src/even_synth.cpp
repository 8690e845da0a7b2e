#include "rbdecomp/even_synth.hpp"

#include <algorithm>
#include <stdexcept>
#include <optional>

#include "rbdecomp/cycle_synth.hpp"

namespace rbd {

Perm even_conjugator(const Perm& p, const Perm& q) {
  if (p.n() != q.n()) throw contract_error("even_conjugator: width mismatch");
  if (cycle_pattern(p) != cycle_pattern(q)) throw contract_error("even_conjugator: cycle patterns differ");
  Perm h = conjugator(p, q);
  if (is_even(h)) return h;
  // rotating one even cycle of p commutes with p and flips the parity
  for (const auto& c : cycles(p)) {
    if (c.size() % 2) continue;
    std::vector<node_t> rot(p.size());
    for (node_t x = 0; x < rot.size(); ++x) rot[x] = x;
    for (std::size_t k = 0; k < c.size(); ++k) rot[c[k]] = c[(k + 1) % c.size()];
    return compose(h, Perm::unchecked(p.n(), std::move(rot)));
  }
  throw contract_error("even_conjugator: no even-length cycle to repair the parity");
}

namespace {

void check_request(const CyclePattern& pattern, int r1, int r2, int n, const char* who) {
  std::string w(who);
  if (n < 3) throw contract_error(w + ": n < 3");
  if (r1 < 1 || r2 < 1 || r1 > n || r2 > n || r1 == r2) throw contract_error(w + ": bad dimensions");
  if (pattern.total() != (std::size_t(1) << n)) throw contract_error(w + ": pattern total is not 2^n");
  if (!pattern.free_of_35()) throw contract_error(w + ": pattern has 3- or 5-cycles");
  if (!pattern.is_even()) throw contract_error(w + ": odd pattern");
}

// Alternative pairings for when the first one has no all-even variant: rotate which
// same-parity partners meet. Each pairing is still a valid consumption of the pattern.
std::vector<std::vector<CyclePair>> pairings(const CyclePattern& pattern) {
  std::vector<std::vector<CyclePair>> out{pair_cycles(pattern)};
  std::vector<std::size_t> evens, odds;
  for (auto [len, cnt] : pattern.counts)
    for (std::size_t i = 0; i < cnt; ++i) (len % 2 ? odds : evens).push_back(len);
  // longest with shortest inside each parity class
  auto fold = [](std::vector<std::size_t> v, std::vector<CyclePair>& dst) {
    std::sort(v.begin(), v.end());
    std::size_t i = 0, j = v.size();
    while (j - i >= 2) {
      dst.emplace_back(v[i], v[j - 1]);
      ++i;
      --j;
    }
    if (j - i == 1) dst.emplace_back(v[i], v[i]);  // unreachable for valid input
  };
  std::vector<CyclePair> folded;
  fold(evens, folded);
  fold(odds, folded);
  out.push_back(std::move(folded));
  // same-parity neighbours after sorting, but shifted by one inside each class
  auto shift = [](std::vector<std::size_t> v, std::vector<CyclePair>& dst) {
    std::sort(v.begin(), v.end());
    if (v.size() >= 4) std::rotate(v.begin(), v.begin() + 1, v.end());
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) dst.emplace_back(std::min(v[i], v[i + 1]), std::max(v[i], v[i + 1]));
  };
  std::vector<CyclePair> shifted;
  shift(evens, shifted);
  shift(odds, shifted);
  out.push_back(std::move(shifted));
  return out;
}

// Flips the concurrent parity of one factor without touching the pattern: one inner
// transposition (x y), lifted on d, is prepended to pi or appended to tau. The
// consecutive-pair swap (x0 -> x1 and y0 -> y1 both steps of pi*tau) always works
// when available; otherwise pairs from the support and a few free columns are tried
// and kept only if the recount matches.
bool global_toggle(PackPair& pp, int d, bool pi_side) {
  Perm g = compose(pp.pi, pp.tau);
  int n = g.n();
  node_t mask = dim_mask(n, d);
  auto target = cycle_pattern(g);
  std::vector<node_t> cand;
  for (int pass = 0; pass < 2; ++pass)
    for (node_t x = 0; x < g.size(); ++x) {
      if (x & mask) continue;
      bool step = g(x) == (x | mask) || g(x | mask) == x;
      bool moved = g(x) != x || g(x | mask) != (x | mask);
      if (pass == 0 ? step : (moved && !step)) cand.push_back(x);
    }
  std::size_t spare = 0;
  for (node_t x = 0; x < g.size() && spare < 8; ++x)
    if (!(x & mask) && g(x) == x && g(x | mask) == (x | mask)) {
      cand.push_back(x);
      ++spare;
    }
  const std::size_t budget = 4096;
  std::size_t tried = 0;
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      if (++tried > budget) return false;
      node_t x = cand[i], y = cand[j];
      Perm sw = compose(transposition(n, x, y), transposition(n, x | mask, y | mask));
      Perm pi = pi_side ? compose(sw, pp.pi) : pp.pi;
      Perm tau = pi_side ? pp.tau : compose(pp.tau, sw);
      if (cycle_pattern(compose(pi, tau)) != target) continue;
      pp = PackPair{std::move(pi), std::move(tau)};
      return true;
    }
  return false;
}

PackPair synth_even(const CyclePattern& pattern, int r1, int r2, int n, const char* who) {
  for (int pass = 0; pass < 2; ++pass)
  for (const auto& pairs : pairings(pattern)) {
    bool fits = true;
    for (auto [a, b] : pairs) fits = fits && valid_arity(a, b);
    if (!fits) continue;
    std::optional<PackPair> pp;
    if (pass == 0) {
      pp = packs::realize(pairs, n, r1, r2, true);
    } else {
      // no variant combination is even everywhere: repair the default globally
      pp = packs::realize(pairs, n, r1, r2, false);
      if (pp && !is_concurrently_even(pp->pi, r1) && !global_toggle(*pp, r1, true)) pp.reset();
      if (pp && !is_concurrently_even(pp->tau, r2) && !global_toggle(*pp, r2, false)) pp.reset();
    }
    if (!pp) continue;
    if (cycle_pattern(compose(pp->pi, pp->tau)) != pattern) throw std::logic_error(std::string(who) + ": recount mismatch");
    if (!is_concurrently_even(pp->pi, r1) || !is_concurrently_even(pp->tau, r2))
      throw std::logic_error(std::string(who) + ": parity search returned an odd factor");
    return *pp;
  }
  throw std::logic_error(std::string(who) + ": no pairing admits concurrently even factors for " + pattern.str());
}

}  // namespace

bool even_synthesis_applies(const CyclePattern& pattern) { return pattern.nontrivial() >= 12 || pattern.longest() >= 12; }

PackPair synth_many_cycles_even(const CyclePattern& pattern, int r1, int r2, int n) {
  check_request(pattern, r1, r2, n, "synth_many_cycles_even");
  if (pattern.nontrivial() < 12) throw contract_error("synth_many_cycles_even: fewer than 12 nontrivial cycles");
  return synth_even(pattern, r1, r2, n, "synth_many_cycles_even");
}

PackPair synth_long_cycle_even(const CyclePattern& pattern, int r1, int r2, int n) {
  check_request(pattern, r1, r2, n, "synth_long_cycle_even");
  if (pattern.longest() < 12) throw contract_error("synth_long_cycle_even: no cycle of length >= 12");
  return synth_even(pattern, r1, r2, n, "synth_long_cycle_even");
}

PackPair synthesize_pattern_even(const CyclePattern& pattern, int r1, int r2, int n) {
  if (pattern.nontrivial() >= 12) return synth_many_cycles_even(pattern, r1, r2, n);
  return synth_long_cycle_even(pattern, r1, r2, n);
}

namespace {

// the 3-bit construction on dims (1, 2, 3)
const char* const kOddPi = "(001,011)(101,111)";
const char* const kOddParts[4] = {
    "(010,100,110)(011,101,111)",  // on dim 3
    "(001,100,101)(011,110,111)",  // on dim 2
    "(001,010,011)(101,110,111)",  // on dim 1
    "(001,101,100)(011,111,110)",  // on dim 2
};

// places a 3-bit permutation on dims (r1, r2, r3); every other bit must be 0 to move
Perm embed3(const Perm& small, int n, int r1, int r2, int r3) {
  const int dims[3] = {r1, r2, r3};
  node_t rest = ~node_t(0);
  for (int d : dims) rest &= ~dim_mask(n, d);
  std::vector<node_t> img(std::size_t(1) << n);
  for (node_t x = 0; x < img.size(); ++x) {
    img[x] = x;
    if (x & rest) continue;
    node_t y = 0;
    for (int k = 0; k < 3; ++k) y |= node_t(bit_at(x, n, dims[k])) << (2 - k);
    node_t z = small(y), out = 0;
    for (int k = 0; k < 3; ++k)
      if ((z >> (2 - k)) & 1u) out |= dim_mask(n, dims[k]);
    img[x] = out;
  }
  return Perm::unchecked(n, std::move(img));
}

}  // namespace

OddBlock odd_block_from_even(int n, int r1, int r2, int r3) {
  if (n < 3) throw contract_error("odd_block_from_even: n < 3");
  for (int d : {r1, r2, r3})
    if (d < 1 || d > n) throw contract_error("odd_block_from_even: dimension out of range");
  if (r1 == r2 || r1 == r3 || r2 == r3) throw contract_error("odd_block_from_even: dimensions must be distinct");
  OddBlock out{embed3(parse_cycle_string(kOddPi, 3), n, r1, r2, r3), {}};
  for (int i = 0; i < 4; ++i) out.parts[i] = embed3(parse_cycle_string(kOddParts[i], 3), n, r1, r2, r3);
  return out;
}

}  // namespace rbd
