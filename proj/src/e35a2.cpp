#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "rbdecomp/even_synth.hpp"
#include "tracker.hpp"

namespace rbd {

using detail::short_leaders;
using detail::Tracker;

namespace {

// s*pi under construction. Every move is concurrent on r1: a transposition pair
// (a b)(a^ b^) or a 3-cycle pair, appended on the right.
class Work {
 public:
  Work(const Perm& s, int r1)
      : n_(s.n()), mask_(dim_mask(s.n(), r1)), cur_(s), pi_(s.size()), in_c0_(s.size(), 0), in_w_(s.size(), 0) {
    for (node_t x = 0; x < pi_.size(); ++x) pi_[x] = x;
  }

  std::size_t size() const { return pi_.size(); }
  node_t mask() const { return mask_; }
  node_t flip(node_t x) const { return x ^ mask_; }
  bool same_side(node_t a, node_t b) const { return (a & mask_) == (b & mask_); }
  const Tracker& cur() const { return cur_; }
  node_t next(node_t x) const { return cur_.next(x); }
  int parity() const { return parity_; }

  // (a b)(a^ b^); a and b on the same side of r1
  void pair_swap(node_t a, node_t b) {
    if (!same_side(a, b) || a == b) throw std::logic_error("eliminate_35_even: swap is not concurrent");
    raw_swap(a, b);
    raw_swap(flip(a), flip(b));
    parity_ ^= 1;
  }
  // (a b c)(a^ b^ c^) = (a c)(a b) on each side
  void triple(node_t a, node_t b, node_t c) {
    raw_swap(a, c);
    raw_swap(a, b);
    raw_swap(flip(a), flip(c));
    raw_swap(flip(a), flip(b));
  }

  std::vector<node_t> cycle_of(node_t x) const { return cur_.cycle_of(x); }
  std::size_t cycle_len(node_t x) const {
    std::size_t k = 1;
    for (node_t y = cur_.next(x); y != x; y = cur_.next(y)) ++k;
    return k;
  }
  bool same_cycle(node_t x, node_t y, std::size_t cap) const {
    node_t z = x;
    for (std::size_t k = 0; k < cap; ++k) {
      if (z == y) return true;
      z = cur_.next(z);
      if (z == x) return false;
    }
    return false;
  }

  // the protected even cycle
  void set_c0(node_t x) {
    for (node_t y : c0_) in_c0_[y] = 0;
    c0_ = cycle_of(x);
    for (node_t y : c0_) in_c0_[y] = 1;
  }
  const std::vector<node_t>& c0() const { return c0_; }
  bool in_c0(node_t x) const { return in_c0_[x]; }
  bool in_zone(node_t x) const { return in_c0_[x] || in_c0_[flip(x)]; }
  bool c0_intact() const {
    if (c0_.empty() || c0_.size() % 2) return false;
    std::size_t k = 0;
    node_t x = c0_.front();
    do {
      if (!in_c0_[x]) return false;
      ++k;
      x = cur_.next(x);
    } while (x != c0_.front());
    return k == c0_.size();
  }
  // true if (u t)(u^ t^) would leave no 3- or 5-cycle through the four nodes
  bool clean_after(node_t u, node_t t) {
    node_t pu = flip(u), pt = flip(t);
    cur_.swap(u, t);
    cur_.swap(pu, pt);
    std::set<node_t> bad;
    short_leaders(cur_, {u, t, pu, pt}, &bad);
    cur_.swap(pu, pt);
    cur_.swap(u, t);
    return bad.empty();
  }
  // nodes set aside in Stage IV after Stage III merged the protected cycle with odd ones
  void set_w(const std::vector<node_t>& w) {
    for (node_t y : w) in_w_[y] = 1;
    has_w_ = true;
  }
  bool has_w() const { return has_w_; }
  bool in_w(node_t x) const { return in_w_[x]; }

  // cycles of length <= 5 with no node in the protected zone
  std::size_t zeta() const {
    std::vector<char> seen(size(), 0);
    std::size_t z = 0;
    for (node_t x = 0; x < size(); ++x) {
      if (seen[x]) continue;
      std::size_t len = 0;
      bool zone = false;
      node_t y = x;
      do {
        seen[y] = 1;
        zone = zone || in_zone(y);
        ++len;
        y = cur_.next(y);
      } while (y != x);
      if (len <= 5 && !zone) ++z;
    }
    return z;
  }

  // leaders of all 3- and 5-cycles
  std::vector<node_t> odd_short() const {
    std::vector<node_t> out;
    std::vector<char> seen(size(), 0);
    for (node_t x = 0; x < size(); ++x) {
      if (seen[x]) continue;
      std::size_t len = 0;
      node_t y = x;
      do {
        seen[y] = 1;
        ++len;
        y = cur_.next(y);
      } while (y != x);
      if (len == 3 || len == 5) out.push_back(x);
    }
    return out;
  }

  bool touches_zone(node_t x) const {
    node_t y = x;
    do {
      if (in_zone(y)) return true;
      y = cur_.next(y);
    } while (y != x);
    return false;
  }

  Perm pi() const { return Perm::unchecked(n_, pi_); }
  Perm product() const {
    std::vector<node_t> img(size());
    for (node_t x = 0; x < size(); ++x) img[x] = cur_.next(x);
    return Perm::unchecked(n_, std::move(img));
  }

 private:
  void raw_swap(node_t a, node_t b) {
    cur_.swap(a, b);
    std::swap(pi_[a], pi_[b]);
  }

  int n_;
  node_t mask_;
  Tracker cur_;
  std::vector<node_t> pi_;
  std::vector<node_t> c0_;
  std::vector<char> in_c0_, in_w_;
  bool has_w_ = false;
  int parity_ = 0;
};

// nodes within 5 steps of x either way, x included
std::vector<node_t> near5(const Work& w, node_t x) {
  std::vector<node_t> out{x};
  node_t f = x, b = x;
  for (int k = 0; k < 5; ++k) {
    f = w.cur().next(f);
    b = w.cur().prev(b);
    out.push_back(f);
    out.push_back(b);
  }
  return out;
}

// ---- Stage I: an even cycle of length at most 4 ----

int stage1(Work& w, const Perm& s) {
  std::size_t N = w.size();
  // Case 0
  for (node_t x = 0; x < N; ++x)
    if (s(x) != x && s(s(x)) == x) {
      w.set_c0(x);
      return 0;
    }
  // Case 1: u, v, s(u), s(v) all on one side
  auto flat = [&](node_t x) { return s(x) != x && w.same_side(x, s(x)); };
  for (node_t u = 0; u < N; ++u) {
    if (!flat(u)) continue;
    for (node_t v = u + 1; v < N; ++v) {
      if (!flat(v) || !w.same_side(u, v)) continue;
      node_t a = u, b = v;
      if (s(b) == a) std::swap(a, b);
      if (s(a) == b) {
        // s(b) != a here, otherwise Case 0 would have applied
        node_t sb = s(b);
        w.pair_swap(a, sb);
        w.set_c0(b);
      } else {
        node_t su = s(u), sv = s(v);
        w.pair_swap(u, su);
        w.pair_swap(v, sv);
        w.pair_swap(su, sv);
        w.set_c0(su);
      }
      return 1;
    }
  }
  // Case 2
  for (node_t u = 0; u < N; ++u) {
    node_t a = s(u), b = s(a);
    if (!w.same_side(u, b) || w.same_side(u, a)) continue;
    if (u == b || u == w.flip(a) || b == w.flip(a)) continue;
    w.pair_swap(u, b);
    w.set_c0(a);
    return 2;
  }
  // Case 3: two fix-points on one side
  for (node_t u = 0; u < N; ++u) {
    if (s(u) != u) continue;
    for (node_t v = u + 1; v < N; ++v)
      if (s(v) == v && w.same_side(u, v)) {
        w.pair_swap(u, v);
        w.set_c0(u);
        return 3;
      }
  }
  // Case 4
  for (const auto& c : cycles(s)) {
    if (c.size() == 4) {
      int pairs = 0;
      for (node_t x : c) pairs += std::count(c.begin(), c.end(), w.flip(x)) ? 1 : 0;
      if (pairs == 4) {
        w.set_c0(c.front());
        return 4;
      }
    }
    std::size_t L = c.size();
    if (L < 6) continue;
    for (std::size_t i = 0; i < L; ++i) {
      node_t u[6];
      for (int k = 0; k < 6; ++k) u[k] = c[(i + k) % L];
      if (u[1] != w.flip(u[0]) || u[3] != w.flip(u[2]) || u[5] != w.flip(u[4])) continue;
      if (!w.same_side(u[0], u[2]) || !w.same_side(u[0], u[4])) continue;
      w.triple(u[0], u[2], u[4]);
      w.set_c0(u[1]);
      return 4;
    }
  }
  throw std::logic_error("eliminate_35_even: no Stage I case applies");
}

// ---- Stage II: one concurrent swap per round away from the protected cycle ----

// one round with the given odd cycle member u (u^ outside its cycle); false if no target
bool stage2_round(Work& w, node_t u, const std::vector<char>* extra_forbid) {
  node_t v = w.flip(u);
  std::vector<char> forbid(w.size(), 0);
  for (node_t y : w.cycle_of(u)) forbid[y] = 1;
  for (node_t y : near5(w, v)) forbid[y] = 1;
  for (node_t y : w.c0()) forbid[y] = 1;
  auto bad = [&](node_t x) { return forbid[x] || w.in_zone(x) || (extra_forbid && (*extra_forbid)[x]); };
  std::optional<node_t> pick, fallback;
  std::size_t scanned = 0;
  for (node_t t = 0; t < w.size() && !pick && scanned < 256; ++t) {
    if (!w.same_side(t, u) || bad(t) || bad(w.flip(t))) continue;
    ++scanned;
    if (!fallback) fallback = t;
    if (w.clean_after(u, t)) pick = t;
  }
  if (!fallback) return false;
  w.pair_swap(u, pick ? *pick : *fallback);
  return true;
}

// member of the cycle through x whose flip lies outside it and outside the zone's cycle
std::optional<node_t> free_member(const Work& w, node_t x, bool allow_c0_flip) {
  auto c = w.cycle_of(x);
  std::sort(c.begin(), c.end());
  for (node_t y : c) {
    node_t f = w.flip(y);
    if (std::binary_search(c.begin(), c.end(), f)) continue;
    if (!allow_c0_flip && w.in_c0(f)) continue;
    return y;
  }
  return std::nullopt;
}

void stage2(Work& w, EvenElimination& out) {
  std::size_t zeta = w.zeta();
  out.zeta.push_back(zeta);
  for (;;) {
    std::optional<node_t> lead;
    for (node_t x : w.odd_short())
      if (!w.touches_zone(x)) {
        lead = x;
        break;
      }
    if (!lead) return;
    auto u = free_member(w, *lead, false);
    if (!u) throw std::logic_error("eliminate_35_even: odd cycle closed under the flip");
    if (!stage2_round(w, *u, nullptr)) throw std::logic_error("eliminate_35_even: no free Stage II target");
    ++out.stage2_rounds;
    std::size_t z = w.zeta();
    if (z >= zeta) throw std::logic_error("eliminate_35_even: Stage II round did not decrease zeta");
    if (!w.c0_intact()) throw std::logic_error("eliminate_35_even: Stage II disturbed the protected cycle");
    zeta = z;
    out.zeta.push_back(z);
  }
}

// ---- Stage III: the 3/5-cycles next to the protected cycle ----

void stage3_pass(Work& w, EvenElimination& out, const std::vector<node_t>& left) {
  if (left.size() > 2) throw std::logic_error("eliminate_35_even: more than two 3/5-cycles reached Stage III");
  if (left.size() == 2) {
    auto flipped_into_c0 = [&](node_t x) {
      for (node_t y : w.cycle_of(x))
        if (w.in_c0(w.flip(y))) return std::optional<node_t>(y);
      return std::optional<node_t>();
    };
    auto v3 = flipped_into_c0(left[0]), v4 = flipped_into_c0(left[1]);
    if (!v3 || !v4) throw std::logic_error("eliminate_35_even: Stage III pair is not next to the protected cycle");
    node_t b = w.same_side(*v3, *v4) ? *v4 : w.flip(*v4);
    w.pair_swap(*v3, b);
    w.set_c0(*v3);
    out.stage3_cases.push_back("2");
    return;
  }
  node_t c3 = left[0];
  if (auto u = free_member(w, c3, false)) {
    if (!stage2_round(w, *u, nullptr)) throw std::logic_error("eliminate_35_even: no free Stage III target");
    out.stage3_cases.push_back("3.1");
    return;
  }
  auto cyc = w.cycle_of(c3);
  std::vector<char> in_c3(w.size(), 0);
  for (node_t y : cyc) in_c3[y] = 1;
  std::optional<node_t> pu;
  for (node_t y : cyc)
    if (in_c3[w.flip(y)]) {
      pu = y;
      break;
    }
  if (!pu) throw std::logic_error("eliminate_35_even: Stage III cycle has no concurrent pair");
  // 3.2.1: a concurrent pair (t, s) outside C0 and C3 split over two cycles
  auto outside = [&](node_t x) { return !w.in_c0(x) && !in_c3[x]; };
  std::optional<std::pair<node_t, node_t>> pick, fallback;  // (u, t)
  std::size_t scanned = 0;
  for (node_t t = 0; t < w.size() && !pick && scanned < 256; ++t) {
    node_t sn = w.flip(t);
    if (!outside(t) || !outside(sn)) continue;
    if (w.same_cycle(t, sn, w.size())) continue;
    ++scanned;
    node_t u = w.same_side(*pu, t) ? *pu : w.flip(*pu);
    if (!fallback) fallback = std::make_pair(u, t);
    if (w.clean_after(u, t)) pick = std::make_pair(u, t);
  }
  if (pick || fallback) {
    auto [u, t] = pick ? *pick : *fallback;
    w.pair_swap(u, t);
    out.stage3_cases.push_back("3.2.1");
    return;
  }
  // 3.2.2: every other concurrent pair shares a cycle; merge through C0 instead
  std::optional<node_t> sc0;
  for (node_t y : w.c0())
    if (!in_c3[w.flip(y)]) {
      sc0 = y;
      break;
    }
  if (!sc0) throw std::logic_error("eliminate_35_even: Stage III Case 3.2.2 has no usable node in the protected cycle");
  node_t t = w.flip(*sc0);
  node_t u = w.same_side(*pu, t) ? *pu : w.flip(*pu);
  std::vector<node_t> old;
  for (node_t y : w.c0()) {
    old.push_back(y);
    old.push_back(w.flip(y));
  }
  w.pair_swap(u, t);
  w.set_c0(u);
  w.set_w(old);
  out.stage3_cases.push_back("3.2.2");
}

void stage3(Work& w, EvenElimination& out) {
  for (;;) {
    auto left = w.odd_short();
    if (left.empty()) return;
    if (out.stage3_passes == 2) throw std::logic_error("eliminate_35_even: 3/5-cycles left after two Stage III passes");
    ++out.stage3_passes;
    stage3_pass(w, out, left);
    // a Case 2 or 3.2.2 merge may leave an odd protected cycle only through a bug
    if (!w.c0_intact()) throw std::logic_error("eliminate_35_even: Stage III lost the even cycle");
  }
}

// ---- Stage IV: concurrent parity ----

bool stage4_case1(Work& w) {
  auto excluded = [&](node_t x) { return w.in_c0(x) || (w.has_w() && w.in_w(x)); };
  for (node_t u = 0; u < w.size(); ++u) {
    node_t v = w.flip(u);
    if (u > v || excluded(u) || excluded(v) || w.same_cycle(u, v, w.size())) continue;
    std::vector<char> forbid(w.size(), 0);
    for (node_t y : w.c0()) forbid[y] = 1;
    for (node_t y : near5(w, u)) forbid[y] = 1;
    for (node_t y : near5(w, v)) forbid[y] = 1;
    for (node_t t = 0; t < w.size(); ++t) {
      if (!w.same_side(t, u) || forbid[t] || forbid[w.flip(t)]) continue;
      if (!w.clean_after(u, t)) continue;
      w.pair_swap(u, t);
      return true;
    }
  }
  return false;
}

void stage4_case2(Work& w, EvenElimination& out) {
  // after a Case 3.2.2 merge only W is set aside and the long cycle may be C0 itself;
  // a three-way split of an even cycle always keeps an even part
  auto excluded = [&](node_t x) { return w.has_w() ? w.in_w(x) : w.in_zone(x); };
  const std::size_t kLong = 2 * (21 * 2 + 12 + 1);
  auto long_even = [&]() -> std::optional<node_t> {
    std::vector<char> seen(w.size(), 0);
    for (node_t x = 0; x < w.size(); ++x) {
      if (seen[x] || excluded(x)) continue;
      auto c = w.cycle_of(x);
      for (node_t y : c) seen[y] = 1;
      if (c.size() >= kLong && c.size() % 2 == 0) return x;
    }
    return std::nullopt;
  };
  // merge three cycles at a time with 3-cycle pairs until a long even cycle exists
  for (std::size_t guard = 0; !long_even(); ++guard) {
    if (guard > w.size()) throw std::logic_error("eliminate_35_even: Stage IV merging did not converge");
    std::vector<node_t> reps;  // one node per distinct cycle, all on one side
    std::vector<char> used(w.size(), 0);
    for (node_t x = 0; x < w.size() && reps.size() < 3; ++x) {
      if ((x & w.mask()) || excluded(x) || excluded(w.flip(x)) || used[x]) continue;
      for (node_t y : w.cycle_of(x)) used[y] = 1;
      reps.push_back(x);
    }
    if (reps.size() < 3) throw std::logic_error("eliminate_35_even: Stage IV cannot find three cycles to merge");
    std::size_t before = w.odd_short().size();
    w.triple(reps[0], reps[1], reps[2]);
    if (w.odd_short().size() > before) {
      // the other orientation of the same merge
      w.triple(reps[0], reps[2], reps[1]);
      w.triple(reps[0], reps[2], reps[1]);
    }
  }
  node_t head = *long_even();
  auto c1 = w.cycle_of(head);
  out.stage4_merged_length = c1.size();
  if (c1.size() < kLong) throw std::logic_error("eliminate_35_even: merged cycle shorter than 110");
  std::vector<std::size_t> pos(w.size(), kInfinity);
  for (std::size_t i = 0; i < c1.size(); ++i) pos[c1[i]] = i;
  auto gap = [&](node_t a, node_t b) {
    std::size_t d = (pos[b] + c1.size() - pos[a]) % c1.size();
    return std::min(d, c1.size() - d);
  };
  // pairs inside C1, same side, pairwise at least 6 apart
  std::vector<node_t> us;
  for (node_t x : c1) {
    if ((x & w.mask()) || excluded(x) || excluded(w.flip(x)) || pos[w.flip(x)] == kInfinity) continue;
    bool far = true;
    for (node_t y : us)
      far = far && gap(x, y) >= 6 && gap(x, w.flip(y)) >= 6 && gap(w.flip(x), y) >= 6 &&
            gap(w.flip(x), w.flip(y)) >= 6;
    if (far) us.push_back(x);
    if (us.size() == 3) break;
  }
  if (us.size() < 3) throw std::logic_error("eliminate_35_even: Stage IV found fewer than three spread pairs");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (w.clean_after(us[i], us[j])) {
        w.pair_swap(us[i], us[j]);
        return;
      }
  throw std::logic_error("eliminate_35_even: no Stage IV split avoids 3/5-cycles");
}

}  // namespace

EvenElimination eliminate_35_even_traced(const Perm& s, int r1) {
  int n = s.n();
  if (n < 8) throw contract_error("eliminate_35_even: n < 8");
  if (r1 < 1 || r1 > n) throw contract_error("eliminate_35_even: dimension out of range");
  if (!is_even(s)) throw contract_error("eliminate_35_even: odd permutation");

  EvenElimination out;
  Work w(s, r1);
  out.stage1_case = stage1(w, s);
  if (!w.c0_intact() || w.c0().size() > 4) throw std::logic_error("eliminate_35_even: Stage I produced no short even cycle");
  stage2(w, out);
  stage3(w, out);
  if (w.parity()) {
    if (stage4_case1(w)) out.stage4_case = 1;
    else {
      stage4_case2(w, out);
      out.stage4_case = 2;
    }
    if (!w.odd_short().empty()) throw std::logic_error("eliminate_35_even: Stage IV created a 3/5-cycle");
  }
  out.pi = w.pi();
  Perm sp = w.product();
  auto pat = cycle_pattern(sp);
  if (!pat.free_of_35() || !pat.has_even_cycle()) throw std::logic_error("eliminate_35_even: postcondition failed");
  if (!is_concurrent(out.pi, r1) || !is_concurrently_even(out.pi, r1))
    throw std::logic_error("eliminate_35_even: result is not concurrently even");
  return out;
}

}  // namespace rbd
