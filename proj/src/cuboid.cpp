#include "rbdecomp/cuboid.hpp"

#include <algorithm>
#include <mutex>

namespace rbd {

namespace {

// Contents of an r2-pair position, as a subset of {r2 = 0, r2 = 1} of nodes whose
// image has r1-bit 0:  E = {}, P = {0}, Q = {1}, F = {0, 1}.
enum Content : unsigned { E = 0, P = 1, Q = 2, F = 3 };

struct Layout {
  int n, r1, r2;
  int r1_in_pairs;  // r1 inside the space with r2 removed
  int r2_in_rows;   // r2 inside the space with r1 removed
  Layout(int n_, int r1_, int r2_) : n(n_), r1(r1_), r2(r2_), r1_in_pairs(sub_dim(r1_, r2_)), r2_in_rows(sub_dim(r2_, r1_)) {}

  std::size_t half() const { return std::size_t(1) << (n - 1); }
  std::size_t columns() const { return std::size_t(1) << (n - 2); }
  // r2-pair position of column z on face a
  node_t pair_pos(node_t z, int a) const { return insert_bit(z, n - 1, r1_in_pairs, a); }
  // r1-pair position of column z at r2-value b
  node_t row_pos(node_t z, int b) const { return insert_bit(z, n - 1, r2_in_rows, b); }
};

std::vector<unsigned> contents(const Perm& s, const Layout& L) {
  std::vector<unsigned> c(L.half());
  node_t m1 = dim_mask(L.n, L.r1);
  for (node_t p = 0; p < c.size(); ++p) {
    node_t x0 = insert_bit(p, L.n, L.r2, 0), x1 = insert_bit(p, L.n, L.r2, 1);
    c[p] = ((s[x0] & m1) ? 0u : 1u) | ((s[x1] & m1) ? 0u : 2u);
  }
  return c;
}

// r1-pair types: bit 0 = lower node's image on face 0, bit 1 = upper node's
std::vector<unsigned> row_types(const Perm& s, const Layout& L) {
  std::vector<unsigned> t(L.half());
  node_t m1 = dim_mask(L.n, L.r1);
  for (node_t q = 0; q < t.size(); ++q) {
    node_t x0 = insert_bit(q, L.n, L.r1, 0), x1 = insert_bit(q, L.n, L.r1, 1);
    t[q] = ((s[x0] & m1) ? 0u : 1u) | ((s[x1] & m1) ? 0u : 2u);
  }
  return t;
}

// Perm on positions with target[p] drawn from the source position holding the same
// label; sources are consumed in ascending order.
Perm match_labels(int width, const std::vector<unsigned>& src, const std::vector<unsigned>& dst, unsigned nlabels) {
  std::vector<std::vector<node_t>> pool(nlabels);
  for (node_t p = 0; p < src.size(); ++p) pool[src[p]].push_back(p);
  std::vector<std::size_t> next(nlabels, 0);
  std::vector<node_t> img(dst.size());
  for (node_t p = 0; p < dst.size(); ++p) {
    auto& v = pool[dst[p]];
    if (next[dst[p]] >= v.size()) throw contract_error("label multisets differ");
    img[p] = v[next[dst[p]]++];
  }
  return Perm::unchecked(width, std::move(img));
}

// Swap the sources of two targets with equal source labels; flips the parity
// without changing which label lands where.
bool toggle_within_label(Perm& m, const std::vector<unsigned>& src_label) {
  std::vector<long long> seen(4, -1);
  for (node_t p = 0; p < m.size(); ++p) {
    unsigned l = src_label[m[p]];
    if (seen[l] >= 0) {
      m.swap_images(node_t(seen[l]), p);
      return true;
    }
    seen[l] = p;
  }
  return false;
}

struct ColumnType {
  unsigned bottom, top;
  unsigned row_type(int b) const { return ((bottom >> b) & 1u) | (((top >> b) & 1u) << 1); }
};

struct CoreSet {
  unsigned mask;  // subset of the 16 column types
  std::array<std::size_t, 4> usage;
};

// Column type sets used once each whose row types pair up among themselves.
const std::vector<CoreSet>& core_sets() {
  static std::vector<CoreSet> sets;
  static std::once_flag once;
  std::call_once(once, [] {
    for (unsigned mask = 0; mask < (1u << 16); ++mask) {
      if (__builtin_popcount(mask) % 2) continue;
      unsigned parity = 0;
      std::array<std::size_t, 4> use{};
      for (unsigned k = 0; k < 16; ++k) {
        if (!(mask >> k & 1)) continue;
        ColumnType c{k & 3u, k >> 2};
        parity ^= 1u << c.row_type(0);
        parity ^= 1u << c.row_type(1);
        ++use[c.bottom];
        ++use[c.top];
      }
      if (parity == 0) sets.push_back({mask, use});
    }
    std::stable_sort(sets.begin(), sets.end(), [](const CoreSet& x, const CoreSet& y) {
      return __builtin_popcount(x.mask) < __builtin_popcount(y.mask);
    });
  });
  return sets;
}

std::array<std::size_t, 4> content_totals(const PairCounts& c) {
  std::array<std::size_t, 4> t{};
  t[E] = c.b3() + c.a4();
  t[P] = c.b1() + c.a2();
  t[Q] = c.a1() + c.b2();
  t[F] = c.b4() + c.a3();
  return t;
}

const CoreSet* find_core(const std::array<std::size_t, 4>& have, std::size_t ncols) {
  for (const auto& k : core_sets()) {
    if (std::size_t(__builtin_popcount(k.mask)) > ncols) continue;
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) ok = k.usage[i] <= have[i] && (have[i] - k.usage[i]) % 2 == 0;
    if (ok) return &k;
  }
  return nullptr;
}

std::vector<ColumnType> plan_columns(const std::array<std::size_t, 4>& have, std::size_t ncols) {
  const CoreSet* core = find_core(have, ncols);
  if (!core) return {};
  std::vector<ColumnType> cols;
  std::array<std::size_t, 4> rest = have;
  for (unsigned k = 0; k < 16; ++k)
    if (core->mask >> k & 1) cols.push_back({k & 3u, k >> 2});
  for (int i = 0; i < 4; ++i) rest[i] -= core->usage[i];
  std::vector<unsigned> halfs;
  for (unsigned c = 0; c < 4; ++c)
    for (std::size_t j = 0; j < rest[c] / 2; ++j) halfs.push_back(c);
  // each doubled column contributes every row type twice
  for (std::size_t i = 0; i + 1 < halfs.size(); i += 2) {
    cols.push_back({halfs[i], halfs[i + 1]});
    cols.push_back({halfs[i], halfs[i + 1]});
  }
  if (cols.size() != ncols) throw contract_error("column plan size mismatch");
  return cols;
}

Block identity_block(int n, int d) { return Block{d, Perm(n - 1)}; }

}  // namespace

std::string PairCounts::str() const {
  return "(" + std::to_string(a1()) + "," + std::to_string(a2()) + "," + std::to_string(a3()) + "," +
         std::to_string(a4()) + "; " + std::to_string(b1()) + "," + std::to_string(b2()) + "," +
         std::to_string(b3()) + "," + std::to_string(b4()) + ")";
}

bool Cuboid::all_white() const {
  return std::all_of(color.begin(), color.end(), [](std::uint8_t c) { return c == 0; });
}

PairCounts pair_counts(const Perm& s, int r1, int r2) {
  if (r1 == r2) throw contract_error("build_cuboid: r1 == r2");
  int n = s.n();
  node_t m1 = dim_mask(n, r1), m2 = dim_mask(n, r2);
  PairCounts pc;
  for (node_t x = 0; x < s.size(); ++x) {
    if (x & m2) continue;
    node_t y = x | m2;
    bool c0 = ((s[x] ^ x) & m1) != 0, c1 = ((s[y] ^ y) & m1) != 0;
    int t = !c0 && c1 ? 0 : c0 && !c1 ? 1 : c0 && c1 ? 2 : 3;
    if (x & m1)
      ++pc.a[t];
    else
      ++pc.b[t];
  }
  return pc;
}

Cuboid build_cuboid(const Perm& s, int r1, int r2) {
  Cuboid c;
  c.n = s.n();
  c.r1 = r1;
  c.r2 = r2;
  c.counts = pair_counts(s, r1, r2);
  node_t m1 = dim_mask(s.n(), r1);
  c.color.resize(s.size());
  for (node_t x = 0; x < s.size(); ++x) c.color[x] = ((s[x] ^ x) & m1) ? 1 : 0;
  return c;
}

void check_counts(const PairCounts& c, int n) {
  std::size_t quarter = std::size_t(1) << (n - 2);
  std::size_t sa = c.a1() + c.a2() + c.a3() + c.a4(), sb = c.b1() + c.b2() + c.b3() + c.b4();
  if (sa != quarter || sb != quarter) throw contract_error("pair counts do not sum to 2^(n-2)");
  if (c.a1() + c.a2() + 2 * c.a3() != c.b1() + c.b2() + 2 * c.b3())
    throw contract_error("pair counts: black totals differ between faces");
  if (c.mono_sum() % 2) throw contract_error("pair counts: a3+a4+b3+b4 is odd");
}

std::pair<std::size_t, std::size_t> vertical_pair_stats(const Perm& s, int r1) {
  node_t m1 = dim_mask(s.n(), r1);
  std::size_t mixed = 0, both = 0;
  for (node_t x = 0; x < s.size(); ++x) {
    if (x & m1) continue;
    node_t y = x | m1;
    bool c0 = ((s[x] ^ x) & m1) != 0, c1 = ((s[y] ^ y) & m1) != 0;
    if (c0 != c1) ++mixed;
    if (c0 && c1) ++both;
  }
  return {mixed, both};
}

const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::Good1: return "Good1";
    case CaseLabel::Good2: return "Good2";
    case CaseLabel::Good3: return "Good3";
    case CaseLabel::Bad1: return "Bad1";
    case CaseLabel::Bad2: return "Bad2";
  }
  return "?";
}

CaseLabel case_classify(const PairCounts& c) {
  std::size_t q = c.a1() + c.a2() + c.a3() + c.a4();
  if (q < 1 || (q & (q - 1))) throw contract_error("pair counts: face size is not a power of two");
  int n = 2;
  while ((std::size_t(1) << (n - 2)) < q) ++n;
  check_counts(c, n);
  std::size_t s = c.mono_sum();
  std::size_t x = c.x_count(), y = c.y_count();
  if (s > 2) return CaseLabel::Good1;
  if (s == 2) return std::min(x, y) > 0 ? CaseLabel::Good2 : CaseLabel::Bad1;
  return x % 2 == 0 ? CaseLabel::Good3 : CaseLabel::Bad2;
}

CardTally card_tally(const PairCounts& c) {
  if (c.a2() + c.a3() > c.b2() + c.b3()) throw contract_error("card_tally: requires a2+a3 <= b2+b3");
  CardTally t;
  t.alpha = (c.a1() + c.b2() - c.a2() - c.b1()) / 2;
  t.beta = c.b1() + c.a2();
  t.gamma = c.mono_sum() / 2;
  return t;
}

std::optional<CardTally> recount_cards(const Perm& s, int r1, int r2) {
  Layout L(s.n(), r1, r2);
  auto ct = contents(s, L);
  CardTally t;
  for (node_t z = 0; z < L.columns(); ++z) {
    unsigned bot = ct[L.pair_pos(z, 0)], top = ct[L.pair_pos(z, 1)];
    if (bot == Q && top == Q)
      ++t.alpha;
    else if (bot == P && top == Q)
      ++t.beta;
    else if (bot == F && top == E)
      ++t.gamma;
    else
      return std::nullopt;
  }
  return t;
}

Canonicalization canonicalize(const Perm& s, int r1, int r2) {
  int n = s.n();
  if (n < 3) throw contract_error("canonicalize: n < 3");
  PairCounts pc = pair_counts(s, r1, r2);
  if (pc.a2() + pc.a3() > pc.b2() + pc.b3()) throw contract_error("canonicalize: requires a2+a3 <= b2+b3");
  CardTally tally = card_tally(pc);
  Layout L(n, r1, r2);
  auto src = contents(s, L);
  auto have = content_totals(pc);

  // step 1: P and F onto the bottom face, E onto the top, Q fills the rest
  std::vector<unsigned> mid(L.half());
  {
    std::vector<unsigned> bottom, top;
    for (std::size_t i = 0; i < have[P]; ++i) bottom.push_back(P);
    for (std::size_t i = 0; i < have[F]; ++i) bottom.push_back(F);
    for (std::size_t i = 0; i < have[E]; ++i) top.push_back(E);
    while (bottom.size() < L.columns()) bottom.push_back(Q);
    while (top.size() < L.columns()) top.push_back(Q);
    for (node_t z = 0; z < L.columns(); ++z) {
      mid[L.pair_pos(z, 0)] = bottom[z];
      mid[L.pair_pos(z, 1)] = top[z];
    }
  }
  // step 2: alpha A-cards, beta B-cards, gamma C-cards in ascending column order
  std::vector<unsigned> fin(L.half());
  for (node_t z = 0; z < L.columns(); ++z) {
    unsigned bot, top;
    if (z < tally.alpha)
      bot = Q, top = Q;
    else if (z < tally.alpha + tally.beta)
      bot = P, top = Q;
    else
      bot = F, top = E;
    fin[L.pair_pos(z, 0)] = bot;
    fin[L.pair_pos(z, 1)] = top;
  }
  Perm m1 = match_labels(n - 1, src, mid, 4);
  Perm m2 = match_labels(n - 1, mid, fin, 4);
  Canonicalization out{Perm(n), lift(m1, r2), lift(m2, r2)};
  out.pi = compose(out.step1, out.step2);
  return out;
}

Perm mirror_faces(const Perm& s, int r1) {
  node_t m = dim_mask(s.n(), r1);
  std::vector<node_t> img(s.size());
  for (node_t x = 0; x < s.size(); ++x) img[x] = s[x ^ m] ^ m;
  return Perm::unchecked(s.n(), std::move(img));
}

bool whitenable(const PairCounts& c, int n) {
  check_counts(c, n);
  return find_core(content_totals(c), std::size_t(1) << (n - 2)) != nullptr;
}

Whitening solve_good(const Perm& s, int r1, int r2, const ParityRequest& req) {
  int n = s.n();
  if (n < 3) throw contract_error("solve_good: n < 3");
  if (r1 == r2) throw contract_error("solve_good: r1 == r2");
  Layout L(n, r1, r2);
  PairCounts pc = pair_counts(s, r1, r2);
  auto cols = plan_columns(content_totals(pc), L.columns());
  if (cols.empty()) throw contract_error("solve_good: no whitening exists for this (r1, r2) (bad case)");

  // first block: move contents into the planned columns
  auto src = contents(s, L);
  std::vector<unsigned> want(L.half());
  for (node_t z = 0; z < L.columns(); ++z) {
    want[L.pair_pos(z, 0)] = cols[z].bottom;
    want[L.pair_pos(z, 1)] = cols[z].top;
  }
  Perm first = match_labels(n - 1, src, want, 4);
  if (req.first && parity(first) != *req.first && !toggle_within_label(first, src))
    throw contract_error("solve_good: cannot toggle first block");
  Perm cur = s;
  apply_block_right(cur, Block{r2, first});

  // middle block: pair up equal row types on the two r2-values of each column
  auto rows = row_types(cur, L);
  std::vector<std::vector<node_t>> by_type(4);
  for (node_t q = 0; q < rows.size(); ++q) by_type[rows[q]].push_back(q);
  std::vector<node_t> img(L.half());
  node_t z = 0;
  for (auto& v : by_type) {
    if (v.size() % 2) throw contract_error("solve_good: unpaired row type");
    for (std::size_t i = 0; i < v.size(); i += 2, ++z) {
      img[L.row_pos(z, 0)] = v[i];
      img[L.row_pos(z, 1)] = v[i + 1];
    }
  }
  Perm middle = Perm::unchecked(n - 1, std::move(img));
  if (req.middle && parity(middle) != *req.middle && !toggle_within_label(middle, rows))
    throw contract_error("solve_good: cannot toggle middle block");
  apply_block_right(cur, Block{r1, middle});

  // last block: full r2-pairs go to face 0, empty ones to face 1
  auto mono = contents(cur, L);
  std::vector<unsigned> target(L.half());
  for (node_t zz = 0; zz < L.columns(); ++zz) {
    target[L.pair_pos(zz, 0)] = F;
    target[L.pair_pos(zz, 1)] = E;
  }
  Perm last = match_labels(n - 1, mono, target, 4);
  if (req.last && parity(last) != *req.last && !toggle_within_label(last, mono))
    throw contract_error("solve_good: cannot toggle last block");
  apply_block_right(cur, Block{r2, last});
  if (!is_controlled(cur, r1)) throw contract_error("solve_good: result is not controlled (internal)");
  return Whitening{Block{r2, std::move(first)}, Block{r1, std::move(middle)}, Block{r2, std::move(last)}, std::move(cur)};
}

ControlResult to_controlled(const Perm& s, int r1, bool even_blocks) {
  int n = s.n();
  if (n < 4) throw contract_error("to_controlled: n < 4");
  if (r1 < 1 || r1 > n) throw contract_error("to_controlled: dimension out of range");
  if (!is_even(s)) throw contract_error("to_controlled: odd permutation");
  int r2 = r1 == 1 ? 2 : 1;
  ControlResult out;
  out.r1 = r1;
  out.r_pair = r2;
  PairCounts pc = pair_counts(s, r1, r2);
  out.first_label = out.used_label = case_classify(pc);
  if (is_controlled(s, r1)) {
    out.blocks = {identity_block(n, r2), identity_block(n, r1), identity_block(n, r2)};
    out.controlled = s;
    return out;
  }
  ParityRequest req = even_blocks ? ParityRequest::all_even() : ParityRequest{};
  if (!whitenable(pc, n)) {
    int r3 = 1;
    while (r3 == r1 || r3 == r2) ++r3;
    out.r_pair = r3;
    out.switched = true;
    out.used_label = case_classify(pair_counts(s, r1, r3));
  }
  Whitening w = solve_good(s, r1, out.r_pair, req);
  out.blocks = {std::move(w.first), std::move(w.middle), std::move(w.last)};
  out.controlled = std::move(w.result);
  return out;
}

}  // namespace rbd
