#include "rbdecomp/packs.hpp"

#include <algorithm>
#include <string>

namespace rbd {

std::vector<node_t> Region::nodes() const {
  std::vector<node_t> out;
  out.reserve(node_count());
  int lo = std::min(r1, r2), hi = std::max(r1, r2);
  for (node_t j : base)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        node_t t = insert_bit(j, n - 1, lo, x);
        out.push_back(insert_bit(t, n, hi, y));
      }
  std::sort(out.begin(), out.end());
  return out;
}

bool valid_arity(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return false;
  if (a == 3 || a == 5 || b == 3 || b == 5) return false;
  return (a + b) % 2 == 0;
}

std::vector<CyclePair> pair_cycles(const CyclePattern& pattern) {
  std::map<std::size_t, std::size_t> c = pattern.counts;
  for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
  std::vector<CyclePair> out;
  while (!c.empty()) {
    auto i = c.begin();
    std::size_t len = i->first;
    // equal lengths pair with themselves first, which is what the greedy does
    std::size_t same = i->second / 2;
    for (std::size_t k = 0; k < same; ++k) out.emplace_back(len, len);
    i->second -= 2 * same;
    if (i->second == 0) {
      c.erase(i);
      continue;
    }
    c.erase(i);
    auto j = std::find_if(c.begin(), c.end(), [&](auto& e) { return (e.first + len) % 2 == 0; });
    if (j == c.end()) throw contract_error("pair_cycles: pattern " + pattern.str() + " is not that of an even permutation");
    out.emplace_back(len, j->first);
    if (--j->second == 0) c.erase(j);
  }
  return out;
}

namespace packs {

const char* to_string(Family f) {
  switch (f) {
    case Family::single: return "single";
    case Family::split: return "split";
    case Family::bridge: return "bridge";
    case Family::lone: return "lone";
  }
  return "?";
}

namespace {

// Local coordinates: full columns 0..C-1, the half column is C. P-position (v, c) is 2c+v,
// T-position (u, c) is 2c+u and exists for full columns only.
struct Local {
  std::size_t cols = 0;
  int half = -1;  // v of the half P-position, -1 if none
  std::vector<node_t> P, T;

  std::size_t length() const { return 2 * cols + (half >= 0 ? 1 : 0); }
};

std::vector<node_t> ppos_order(const Local& l) {
  std::vector<node_t> v;
  v.reserve(l.length());
  for (std::size_t c = 0; c < l.cols; ++c) {
    v.push_back(node_t(2 * c));
    v.push_back(node_t(2 * c + 1));
  }
  if (l.half >= 0) v.push_back(node_t(2 * l.cols + l.half));
  return v;
}

void close_cycle(std::vector<node_t>& P, const std::vector<node_t>& cyc) {
  for (std::size_t i = 0; i < cyc.size(); ++i) P[cyc[i]] = cyc[(i + 1) % cyc.size()];
}

Local blank(std::size_t cols, int half) {
  Local l;
  l.cols = cols;
  l.half = half;
  l.P.resize(2 * cols + 2);
  l.T.resize(2 * cols);
  for (std::size_t i = 0; i < l.P.size(); ++i) l.P[i] = node_t(i);
  for (std::size_t i = 0; i < l.T.size(); ++i) l.T[i] = node_t(i);
  return l;
}

bool family_fits(Family f, std::size_t a, std::size_t b, std::size_t cols, std::size_t L) {
  switch (f) {
    case Family::single: return a == b && a == L;
    case Family::split: return cols >= 1 && a % 2 == 0 && b % 2 == 0 && a >= 2 && b >= 2;
    case Family::bridge: {
      if (cols < 2 || a < 2 || a == 3) return false;
      std::size_t beta = L + 1 - a, iq = a == 2 ? 3 : 2, last = (iq + beta) % L;
      return last != 0 && last != 1 && last != iq;
    }
    case Family::lone: return a == 1 && cols >= 2;
  }
  return false;
}

Local build(Family f, std::size_t a, std::size_t b, std::size_t cols, int half) {
  Local l = blank(cols, half);
  std::vector<node_t> order = ppos_order(l);
  std::size_t L = order.size();
  (void)b;
  switch (f) {
    case Family::single:
      close_cycle(l.P, order);
      break;
    case Family::split: {
      std::size_t l1 = a / 2;
      std::vector<node_t> c1{0}, c2{1};
      c1.insert(c1.end(), order.begin() + 2, order.begin() + 2 + (l1 - 1));
      c2.insert(c2.end(), order.begin() + 2 + (l1 - 1), order.end());
      close_cycle(l.P, c1);
      close_cycle(l.P, c2);
      std::swap(l.T[0], l.T[1]);
      break;
    }
    case Family::bridge: {
      // one L-cycle; a cross transposition merges the two layers, the second splits at distance a
      std::size_t beta = L + 1 - a, iq = a == 2 ? 3 : 2;
      std::vector<node_t> idx(L, node_t(-1));
      idx[0] = 0;
      idx[1] = 1;
      idx[iq] = 2;
      idx[(iq + beta) % L] = 3;
      std::size_t r = 4;
      for (auto& x : idx)
        if (x == node_t(-1)) x = order[r++];
      close_cycle(l.P, idx);
      std::swap(l.T[0], l.T[3]);
      break;
    }
    case Family::lone: {
      std::vector<node_t> c1{0, 2, 3}, c2{1};
      c2.insert(c2.end(), order.begin() + 4, order.end());
      close_cycle(l.P, c1);
      close_cycle(l.P, c2);
      // (0,c0) -> (1,c1) -> (1,c0) -> (0,c0)
      l.T[0] = 3;
      l.T[3] = 1;
      l.T[1] = 0;
      break;
    }
  }
  return l;
}

int table_parity(const std::vector<node_t>& t) {
  std::vector<char> seen(t.size(), 0);
  int par = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (node_t x = node_t(i); !seen[x]; x = t[x]) {
      seen[x] = 1;
      ++len;
    }
    par ^= int((len - 1) & 1);
  }
  return par;
}

// Two T-positions x, y whose layer-0 node is sent by pi*tau to its layer-1 node (or all
// the other way round). Then tau*lift(x y) keeps the cycle pattern and flips tau's parity.
std::optional<std::pair<node_t, node_t>> find_toggle(const Local& l) {
  std::vector<node_t> up, down;
  auto g = [&](node_t u, node_t v, node_t c, node_t& u2, node_t& v2, node_t& c2) {
    node_t t = l.T[2 * c + u];
    node_t p = l.P[2 * (t >> 1) + v];
    u2 = t & 1;
    v2 = p & 1;
    c2 = p >> 1;
  };
  for (node_t c = 0; c < l.cols; ++c)
    for (node_t u = 0; u < 2; ++u) {
      node_t u2, v2, c2;
      g(u, 0, c, u2, v2, c2);
      if (u2 == u && v2 == 1 && c2 == c) up.push_back(2 * c + u);
      g(u, 1, c, u2, v2, c2);
      if (u2 == u && v2 == 0 && c2 == c) down.push_back(2 * c + u);
    }
  if (up.size() >= 2) return std::make_pair(up[0], up[1]);
  if (down.size() >= 2) return std::make_pair(down[0], down[1]);
  return std::nullopt;
}

void apply_toggle(Local& l) {
  auto t = find_toggle(l);
  if (!t) throw contract_error("pack toggle requested but unavailable");
  std::swap(l.T[t->first], l.T[t->second]);
}

struct SubShape {
  std::size_t a, b, cols;
  int half;
};

std::vector<SubShape> shapes(const Group& g) {
  if (g.pairs.size() == 1) {
    auto [a, b] = g.pairs[0];
    if ((a + b) % 4 == 0) return {{a, b, (a + b) / 4, -1}};
    return {{a, b, (a + b - 2) / 4, 0}};
  }
  auto [a, b] = g.pairs[0];
  auto [c, d] = g.pairs[1];
  return {{a, b, (a + b - 2) / 4, 0}, {c, d, (c + d - 2) / 4, 1}};
}

constexpr Family kFamilies[] = {Family::single, Family::split, Family::bridge, Family::lone};

struct SubOption {
  SubChoice choice;
  int p, t;
};

std::vector<SubOption> sub_options(const SubShape& s) {
  std::vector<SubOption> out;
  std::size_t L = 2 * s.cols + (s.half >= 0 ? 1 : 0);
  for (Family f : kFamilies) {
    if (!family_fits(f, s.a, s.b, s.cols, L)) continue;
    Local l = build(f, s.a, s.b, s.cols, s.half);
    int p = table_parity(l.P), t = table_parity(l.T);
    out.push_back({{f, false}, p, t});
    if (find_toggle(l)) out.push_back({{f, true}, p, t ^ 1});
  }
  if (out.empty())
    throw contract_error("no pack construction for arities (" + std::to_string(s.a) + "," + std::to_string(s.b) + ")");
  return out;
}

void write_local(const Local& l, const std::vector<node_t>& colmap, int n, int dP, int dT, std::vector<node_t>& p_inner,
                 std::vector<node_t>& t_inner) {
  int pbit = sub_dim(dT, dP), tbit = sub_dim(dP, dT);
  auto penc = [&](node_t i) { return insert_bit(colmap[i >> 1], n - 1, pbit, int(i & 1)); };
  auto tenc = [&](node_t i) { return insert_bit(colmap[i >> 1], n - 1, tbit, int(i & 1)); };
  for (node_t i : ppos_order(l)) p_inner[penc(i)] = penc(l.P[i]);
  for (node_t i = 0; i < l.T.size(); ++i) t_inner[tenc(i)] = tenc(l.T[i]);
}

}  // namespace

bool Group::trivial() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const CyclePair& p) { return p.first == 1 && p.second == 1; });
}

std::vector<Group> group_pairs(const std::vector<CyclePair>& pairs) {
  std::vector<Group> out;
  std::optional<CyclePair> pending;
  for (const auto& p : pairs) {
    if (!valid_arity(p.first, p.second))
      throw contract_error("invalid pack arities (" + std::to_string(p.first) + "," + std::to_string(p.second) + ")");
    std::size_t s = p.first + p.second;
    if (s % 4 == 0) {
      out.push_back({{p}, s / 4});
    } else if (pending) {
      out.push_back({{*pending, p}, (s + pending->first + pending->second) / 4});
      pending.reset();
    } else {
      pending = p;
    }
  }
  if (pending) throw contract_error("pairing leaves one pair with sum 2 mod 4");
  return out;
}

std::vector<Variant> group_variants(const Group& g) {
  auto sh = shapes(g);
  std::vector<std::vector<SubOption>> opts;
  for (auto& s : sh) opts.push_back(sub_options(s));
  std::vector<Variant> out;
  auto add = [&](Variant v) {
    for (auto& w : out)
      if (w.pi_parity == v.pi_parity && w.tau_parity == v.tau_parity) return;
    out.push_back(v);
  };
  for (int sw = 0; sw < 2; ++sw) {
    std::size_t second = opts.size() > 1 ? opts[1].size() : 1;
    for (auto& o0 : opts[0])
      for (std::size_t k = 0; k < second; ++k) {
        Variant v;
        v.swapped = sw == 1;
        v.sub[0] = o0.choice;
        int p = o0.p, t = o0.t;
        if (opts.size() > 1) {
          v.sub[1] = opts[1][k].choice;
          p ^= opts[1][k].p;
          t ^= opts[1][k].t;
        }
        v.pi_parity = v.swapped ? t : p;
        v.tau_parity = v.swapped ? p : t;
        add(v);
      }
  }
  return out;
}

Variant default_variant(const Group& g) {
  auto sh = shapes(g);
  Variant v;
  for (std::size_t i = 0; i < sh.size(); ++i) {
    std::size_t L = 2 * sh[i].cols + (sh[i].half >= 0 ? 1 : 0);
    bool found = false;
    for (Family f : kFamilies)
      if (family_fits(f, sh[i].a, sh[i].b, sh[i].cols, L)) {
        v.sub[i].family = f;
        found = true;
        break;
      }
    if (!found)
      throw contract_error("no pack construction for arities (" + std::to_string(sh[i].a) + "," +
                           std::to_string(sh[i].b) + ")");
  }
  return v;
}

void emit_group(const Group& g, const Variant& v, const node_t* cols, int n, int r1, int r2,
                std::vector<node_t>& pi_inner, std::vector<node_t>& tau_inner) {
  auto sh = shapes(g);
  int dP = v.swapped ? r2 : r1, dT = v.swapped ? r1 : r2;
  auto& p_inner = v.swapped ? tau_inner : pi_inner;
  auto& t_inner = v.swapped ? pi_inner : tau_inner;
  std::size_t first = 0;
  std::size_t half_col = g.columns - 1;  // the shared half column is the group's last
  for (std::size_t i = 0; i < sh.size(); ++i) {
    Local l = build(v.sub[i].family, sh[i].a, sh[i].b, sh[i].cols, sh[i].half);
    if (v.sub[i].toggle) apply_toggle(l);
    std::vector<node_t> colmap(sh[i].cols + 1);
    for (std::size_t c = 0; c < sh[i].cols; ++c) colmap[c] = cols[first + c];
    colmap[sh[i].cols] = sh[i].half >= 0 ? cols[half_col] : node_t(0);
    write_local(l, colmap, n, dP, dT, p_inner, t_inner);
    first += sh[i].cols;
  }
}

std::optional<PackPair> realize(const std::vector<CyclePair>& pairs, int n, int r1, int r2, bool want_even,
                                EngineStats* stats) {
  auto groups = group_pairs(pairs);
  std::size_t total_cols = 0;
  for (auto& g : groups) total_cols += g.columns;
  if (total_cols != (std::size_t(1) << (n - 2))) throw contract_error("pairing does not cover the cube");

  std::vector<Variant> chosen(groups.size());
  if (!want_even) {
    for (std::size_t i = 0; i < groups.size(); ++i)
      if (!groups[i].trivial()) chosen[i] = default_variant(groups[i]);
  } else {
    // reachability over the four (pi, tau) parity states
    constexpr int kNone = -1;
    std::vector<std::array<int, 4>> from(groups.size());
    std::vector<std::vector<Variant>> vars(groups.size());
    std::array<bool, 4> reach{true, false, false, false};
    for (std::size_t i = 0; i < groups.size(); ++i) {
      from[i].fill(kNone);
      if (groups[i].trivial()) {
        for (int s = 0; s < 4; ++s) from[i][s] = reach[s] ? s * 16 : kNone;
        continue;
      }
      vars[i] = group_variants(groups[i]);
      std::array<bool, 4> next{};
      for (int s = 0; s < 4; ++s) {
        if (!reach[s]) continue;
        for (std::size_t k = 0; k < vars[i].size(); ++k) {
          int t = s ^ (vars[i][k].pi_parity | (vars[i][k].tau_parity << 1));
          if (!next[t]) {
            next[t] = true;
            from[i][t] = s * 16 + int(k);
          }
        }
      }
      reach = next;
    }
    if (!reach[0]) return std::nullopt;
    int s = 0;
    for (std::size_t i = groups.size(); i-- > 0;) {
      int code = from[i][s];
      if (!groups[i].trivial()) chosen[i] = vars[i][code % 16];
      s = code / 16;
    }
  }

  std::size_t m = std::size_t(1) << (n - 1);
  std::vector<node_t> pi_inner(m), tau_inner(m);
  for (std::size_t i = 0; i < m; ++i) pi_inner[i] = tau_inner[i] = node_t(i);
  std::vector<node_t> cols(total_cols);
  for (std::size_t j = 0; j < total_cols; ++j) cols[j] = node_t(j);
  std::size_t cursor = 0;
  EngineStats st;
  st.parity_search = want_even;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!groups[i].trivial()) {
      emit_group(groups[i], chosen[i], cols.data() + cursor, n, r1, r2, pi_inner, tau_inner);
      ++st.groups;
      st.swapped += chosen[i].swapped ? 1 : 0;
      st.toggles += (chosen[i].sub[0].toggle ? 1 : 0) + (chosen[i].sub[1].toggle ? 1 : 0);
    }
    cursor += groups[i].columns;
  }
  if (stats) *stats = st;
  return PackPair{lift(Perm::unchecked(n - 1, std::move(pi_inner)), r1),
                  lift(Perm::unchecked(n - 1, std::move(tau_inner)), r2)};
}

}  // namespace packs

namespace {

void check_region(int r1, int r2, const Region& s, std::size_t need) {
  if (s.n < 3) throw contract_error("pack region needs n >= 3");
  if (r1 < 1 || r2 < 1 || r1 > s.n || r2 > s.n || r1 == r2) throw contract_error("pack dimensions invalid");
  if (s.r1 != r1 || s.r2 != r2) throw contract_error("region dimensions do not match the request");
  if (need > s.base.size()) throw contract_error("region too small for the requested cycles");
  std::vector<node_t> b = s.base;
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end()) throw contract_error("region base has duplicates");
  if (!b.empty() && b.back() >= (node_t(1) << (s.n - 2))) throw contract_error("region base out of range");
}

PackPair emit_public(const packs::Group& g, const Region& s, int r1, int r2) {
  std::vector<node_t> cols = s.base;
  std::sort(cols.begin(), cols.end());
  std::size_t m = std::size_t(1) << (s.n - 1);
  std::vector<node_t> pi_inner(m), tau_inner(m);
  for (std::size_t i = 0; i < m; ++i) pi_inner[i] = tau_inner[i] = node_t(i);
  if (!g.trivial()) packs::emit_group(g, packs::default_variant(g), cols.data(), s.n, r1, r2, pi_inner, tau_inner);
  return {lift(Perm::unchecked(s.n - 1, std::move(pi_inner)), r1), lift(Perm::unchecked(s.n - 1, std::move(tau_inner)), r2)};
}

}  // namespace

PackPair rpack(int r1, int r2, std::size_t a, std::size_t b, const Region& s) {
  if (a == 0 && b == 0) {
    check_region(r1, r2, s, 0);
    return {Perm(s.n), Perm(s.n)};
  }
  if (a > b) std::swap(a, b);
  if (!valid_arity(a, b)) throw contract_error("rpack: invalid arities");
  std::size_t need = (a + b + 2) / 4;
  check_region(r1, r2, s, need);
  packs::Group g{{{a, b}}, need};
  return emit_public(g, s, r1, r2);
}

PackPair tpack(int r1, int r2, std::size_t a, std::size_t b, std::size_t c, std::size_t d, const Region& s) {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  if (!valid_arity(a, b) || !valid_arity(c, d)) throw contract_error("tpack: invalid arities");
  if ((a + b) % 4 != 2 || (c + d) % 4 != 2) throw contract_error("tpack: both sums must be 2 mod 4");
  std::size_t need = (a + b + c + d) / 4;
  check_region(r1, r2, s, need);
  packs::Group g{{{a, b}, {c, d}}, need};
  return emit_public(g, s, r1, r2);
}

}  // namespace rbd
