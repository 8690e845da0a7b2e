#include "rbdecomp/cycle_synth.hpp"

#include "tracker.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace rbd {

std::size_t short_cycle_count(const Perm& p) {
  auto pat = cycle_pattern(p);
  std::size_t z = 0;
  for (std::size_t k = 1; k <= 5; ++k) z += pat.count(k);
  return z;
}

using detail::Tracker;

using detail::short_leaders;

Elimination eliminate_35_traced(const Perm& s, int r1) {
  int n = s.n();
  if (n < 5) throw contract_error("eliminate_35: n < 5");
  if (r1 < 1 || r1 > n) throw contract_error("eliminate_35: dimension out of range");
  if (!is_even(s)) throw contract_error("eliminate_35: odd permutation");

  Elimination out;
  std::vector<node_t> pi(s.size());
  for (node_t x = 0; x < pi.size(); ++x) pi[x] = x;
  Tracker cur(s);
  node_t mask = dim_mask(n, r1);

  std::set<node_t> work;
  std::size_t zeta = 0;
  for (const auto& c : cycles(s, true)) {
    if (c.size() <= 5) ++zeta;
    if (c.size() == 3 || c.size() == 5) work.insert(c.front());
  }
  out.initial_35 = work.size();
  out.zeta.push_back(zeta);

  while (!work.empty()) {
    node_t lead = *work.begin();
    work.erase(work.begin());
    node_t check;
    std::size_t len = cur.short_len(lead, &check);
    if ((len != 3 && len != 5) || check != lead) continue;  // stale entry

    auto c1 = cur.cycle_of(lead);
    std::sort(c1.begin(), c1.end());
    auto in_c1 = [&](node_t x) { return std::binary_search(c1.begin(), c1.end(), x); };
    node_t u = 0;
    bool found = false;
    for (node_t x : c1)
      if (!in_c1(x ^ mask)) {
        u = x;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("eliminate_35: odd cycle closed under the flip");
    node_t v = u ^ mask;

    std::set<node_t> forbid(c1.begin(), c1.end());
    forbid.insert(v);
    node_t f = v, b = v;
    for (int k = 0; k < 5; ++k) {
      f = cur.next(f);
      b = cur.prev(b);
      forbid.insert(f);
      forbid.insert(b);
    }
    // minimal eligible t, preferring one whose merges create no new 3- or 5-cycle
    std::optional<node_t> pick, fallback;
    std::size_t scanned = 0;
    for (node_t x = 0; x < s.size() && !pick && scanned < 256; ++x) {
      if ((x & mask) != (u & mask)) continue;
      if (forbid.count(x) || forbid.count(x ^ mask)) continue;
      ++scanned;
      if (!fallback) fallback = x;
      std::set<node_t> pre35, post35;
      std::size_t pre = short_leaders(cur, {u, v, x, node_t(x ^ mask)}, &pre35).size();
      cur.swap(u, x);
      cur.swap(v, x ^ mask);
      std::size_t post = short_leaders(cur, {u, v, x, node_t(x ^ mask)}, &post35).size();
      cur.swap(v, x ^ mask);
      cur.swap(u, x);
      if (post < pre && post35.size() < pre35.size()) pick = x;
    }
    if (!fallback) throw std::logic_error("eliminate_35: no free transposition target");
    node_t t = pick ? *pick : *fallback;
    node_t sn = t ^ mask;
    if (!pick) ++out.fallbacks;

    std::size_t before_all = short_leaders(cur, {u, v, t, sn}, nullptr).size();
    cur.swap(u, t);
    cur.swap(v, sn);
    std::swap(pi[u], pi[t]);
    std::swap(pi[v], pi[sn]);
    std::set<node_t> fresh;
    std::size_t after = short_leaders(cur, {u, v, t, sn}, &fresh).size();
    if (after >= before_all) throw std::logic_error("eliminate_35: short-cycle count did not decrease");
    zeta = zeta - before_all + after;
    out.zeta.push_back(zeta);
    ++out.rounds;
    work.insert(fresh.begin(), fresh.end());
  }
  out.pi = Perm::unchecked(n, std::move(pi));
  return out;
}

PackPair synthesize_pattern(const CyclePattern& pattern, int r1, int r2, int n) {
  if (n < 3) throw contract_error("synthesize_pattern: n < 3");
  if (r1 < 1 || r2 < 1 || r1 > n || r2 > n || r1 == r2) throw contract_error("synthesize_pattern: bad dimensions");
  if (pattern.total() != (std::size_t(1) << n)) throw contract_error("synthesize_pattern: pattern total is not 2^n");
  if (!pattern.free_of_35())
    throw contract_error("synthesize_pattern: pattern " + pattern.str() + " has 3- or 5-cycles, which two factors cannot form");
  if (!pattern.is_even()) throw contract_error("synthesize_pattern: odd pattern");
  auto pp = packs::realize(pair_cycles(pattern), n, r1, r2, false);
  if (cycle_pattern(compose(pp->pi, pp->tau)) != pattern) throw std::logic_error("synthesize_pattern: recount mismatch");
  return *pp;
}

Perm conjugator(const Perm& p, const Perm& q) {
  if (p.n() != q.n()) throw contract_error("conjugator: width mismatch");
  std::map<std::size_t, std::vector<Cycle>> cp, cq;
  for (auto& c : cycles(p, true)) cp[c.size()].push_back(std::move(c));
  for (auto& c : cycles(q, true)) cq[c.size()].push_back(std::move(c));
  std::vector<node_t> h(p.size());
  for (auto& [len, list] : cp) {
    auto it = cq.find(len);
    if (it == cq.end() || it->second.size() != list.size()) throw contract_error("conjugator: cycle patterns differ");
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t k = 0; k < len; ++k) h[list[i][k]] = it->second[i][k];
  }
  if (cp.size() != cq.size()) throw contract_error("conjugator: cycle patterns differ");
  return Perm::unchecked(p.n(), std::move(h));
}

}  // namespace rbd
