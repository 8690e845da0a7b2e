#include "rbdecomp/oracle.hpp"

#include <atomic>
#include <limits>
#include <thread>

namespace rbd {

namespace {

// Runs body(i) for i in [0, count) over `jobs` threads; the lowest index whose body
// returns true is reported, independent of scheduling.
template <class F>
std::size_t first_hit(std::size_t count, unsigned jobs, F&& body) {
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best{none};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || i > best.load()) return;
      if (body(i)) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> ts;
    for (unsigned j = 0; j < jobs; ++j) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
  }
  return best.load();
}

// all inner permutations on 2^(n-1) points, lifted along d, as flat tables
std::vector<std::uint8_t> all_lifts(int n, int d) {
  int m = 1 << (n - 1);
  std::size_t N = std::size_t(1) << n;
  std::vector<std::uint8_t> out;
  any_inner_perm(m, [&](const std::vector<node_t>& v) {
    for (node_t x = 0; x < N; ++x) {
      node_t y = remove_bit(x, n, d);
      out.push_back(std::uint8_t(insert_bit(v[y], n, d, bit_at(x, n, d))));
    }
    return false;
  });
  return out;
}

bool rows_pair_up(const Perm& s, int r1) {
  node_t m1 = dim_mask(s.n(), r1);
  std::size_t cnt[4] = {0, 0, 0, 0};
  for (node_t x = 0; x < s.size(); ++x) {
    if (x & m1) continue;
    unsigned t = ((s[x] & m1) ? 0u : 1u) | ((s[x | m1] & m1) ? 0u : 2u);
    ++cnt[t];
  }
  return cnt[0] % 2 == 0 && cnt[1] % 2 == 0 && cnt[2] % 2 == 0 && cnt[3] % 2 == 0;
}

}  // namespace

std::size_t block_bound(Mode m) {
  switch (m) {
    case Mode::block7: return 7;
    case Mode::even10: return 10;
    case Mode::greedy: return std::numeric_limits<std::size_t>::max();
  }
  return 0;
}

VerifyReport verify_decomposition(const Perm& s, const Decomposition& d) {
  if (d.n != s.n()) throw contract_error("verify: width mismatch");
  VerifyReport r;
  r.block_count = d.blocks.size();
  r.bound = block_bound(d.mode);
  r.count_ok = r.block_count <= r.bound;
  r.memberships_ok = true;
  bool widths_ok = true;
  for (const auto& b : d.blocks) {
    BlockCheck c;
    c.dim = b.dim;
    c.dim_in_range = b.dim >= 1 && b.dim <= s.n() && b.inner.n() == s.n() - 1;
    if (c.dim_in_range) {
      Perm l = b.lifted();
      c.concurrent = is_concurrent(l, b.dim);
      c.inner_parity = parity(b.inner);
    }
    bool ok = c.dim_in_range && c.concurrent && (d.mode != Mode::even10 || c.inner_parity == Parity::even);
    r.memberships_ok = r.memberships_ok && ok;
    widths_ok = widths_ok && c.dim_in_range;
    r.blocks.push_back(c);
  }
  r.product_matches = widths_ok && product(s.n(), d.blocks) == s;
  r.ok = r.count_ok && r.memberships_ok && r.product_matches;
  return r;
}

bool exists_pi_to_controlled(const Perm& s, int r2, int r3) {
  if (r2 == r3) throw contract_error("exists_pi_to_controlled: r2 == r3");
  int n = s.n();
  node_t m2 = dim_mask(n, r2), m3 = dim_mask(n, r3);
  std::size_t zero_pairs = 0;
  for (node_t y = 0; y < s.size(); ++y) {
    if (y & m2) continue;
    bool l0 = (s[y] & m3) != 0, l1 = (s[y | m2] & m3) != 0;
    if (l0 != l1) return false;
    if (!l0) ++zero_pairs;
  }
  return zero_pairs == (std::size_t(1) << (n - 2));
}

bool exists_pi_to_controlled_enum(const Perm& s, int r2, int r3) {
  int n = s.n();
  node_t m3 = dim_mask(n, r3);
  return any_inner_perm(1 << (n - 1), [&](const std::vector<node_t>& v) {
    for (node_t x = 0; x < s.size(); ++x) {
      node_t px = insert_bit(v[remove_bit(x, n, r2)], n, r2, bit_at(x, n, r2));
      if ((s[px] ^ x) & m3) return false;
    }
    return true;
  });
}

bool exists_whitening_enum(const Perm& s, int r1, int r2) {
  int n = s.n();
  return any_inner_perm(1 << (n - 1), [&](const std::vector<node_t>& v) {
    Perm q = Perm::unchecked(n - 1, v);
    Perm t = s;
    apply_block_right(t, Block{r2, q});
    return rows_pair_up(t, r1);
  });
}

bool exists_whitening_full(const Perm& s, int r1, int r2) {
  int n = s.n();
  if (n != 3) throw contract_error("exists_whitening_full: n must be 3");
  std::vector<Perm> inner;
  any_inner_perm(4, [&](const std::vector<node_t>& v) {
    inner.push_back(Perm::unchecked(2, v));
    return false;
  });
  for (const auto& a : inner) {
    Perm sa = s;
    apply_block_right(sa, Block{r2, a});
    for (const auto& b : inner) {
      Perm sab = sa;
      apply_block_right(sab, Block{r1, b});
      for (const auto& c : inner) {
        Perm t = sab;
        apply_block_right(t, Block{r2, c});
        if (is_controlled(t, r1)) return true;
      }
    }
  }
  return false;
}

Perm tight_sigma(int n) {
  if (n < 3) throw contract_error("tight_sigma: n < 3");
  Perm cur = parse_cycle_string("(000,001)(101,111)(010,110)", 3);
  for (int k = 3; k < n; ++k) {
    node_t u = 0;
    while (cur[u] != u) ++u;  // smallest fix-point
    std::vector<node_t> img(std::size_t(1) << (k + 1));
    node_t top = node_t(1) << k;
    for (node_t x = 0; x < img.size(); ++x) img[x] = x;
    for (node_t v = 0; v < cur.size(); ++v)
      if (cur[v] != v) img[v] = cur[v];
    img[u] = u | top;
    img[u | top] = u;
    cur = Perm::unchecked(k + 1, std::move(img));
  }
  return cur;
}

TightReport brute_new1tight(int n, unsigned jobs) {
  Perm s = tight_sigma(n);
  TightReport rep;
  std::vector<std::pair<int, int>> dims;
  for (int r2 = 1; r2 <= n; ++r2)
    for (int r3 = 1; r3 <= n; ++r3)
      if (r2 != r3) dims.push_back({r2, r3});
  std::size_t per = 1;
  for (int i = 2; i <= (1 << (n - 1)); ++i) per *= std::size_t(i);
  for (int r1 = 1; r1 <= n; ++r1) {
    auto lifts = all_lifts(n, r1);
    std::size_t N = std::size_t(1) << n;
    std::size_t hit = first_hit(per, jobs, [&](std::size_t i) {
      std::vector<node_t> img(N);
      for (node_t x = 0; x < N; ++x) img[x] = s[lifts[i * N + x]];
      Perm st = Perm::unchecked(n, std::move(img));
      for (auto [r2, r3] : dims)
        if (exists_pi_to_controlled(st, r2, r3)) return true;
      // with r2 = r3 the second factor keeps bit r3, so only st itself can qualify
      for (int r3 = 1; r3 <= n; ++r3)
        if (is_controlled(st, r3)) return true;
      return false;
    });
    rep.checked += per * dims.size();
    if (hit != std::numeric_limits<std::size_t>::max()) {
      rep.witness = "r1=" + std::to_string(r1) + " inner index " + std::to_string(hit);
      rep.holds = false;
      return rep;
    }
  }
  rep.holds = true;
  return rep;
}

FreeReport brute_35free(int n, int r1, int r2, std::size_t sample5, std::uint64_t seed, unsigned jobs) {
  if (n != 4) throw contract_error("brute_35free: only n = 4 is supported");
  if (r1 == r2) throw contract_error("brute_35free: r1 == r2");
  FreeReport rep;
  auto lifts = all_lifts(n, r2);
  const std::size_t N = 16, per = 40320;
  node_t m1 = dim_mask(n, r1);
  // is target * lift(q) concurrent on r1 for some q?  (lift(q)^-1 ranges over all lifts)
  auto reachable = [&](const Perm& t) {
    std::size_t hit = first_hit(per, jobs, [&](std::size_t i) {
      const std::uint8_t* l = &lifts[i * N];
      for (node_t x = 0; x < N; ++x) {
        if (x & m1) continue;
        node_t y = t[l[x]];
        if (y & m1) return false;
        if (t[l[x | m1]] != (y | m1)) return false;
      }
      return true;
    });
    return hit != std::numeric_limits<std::size_t>::max();
  };
  rep.holds = true;
  for (node_t a = 0; a < N && rep.holds; ++a)
    for (node_t b = a + 1; b < N && rep.holds; ++b)
      for (node_t c = b + 1; c < N && rep.holds; ++c)
        for (int orient = 0; orient < 2 && rep.holds; ++orient) {
          Perm t = orient ? from_cycles(n, {{a, b, c}}) : from_cycles(n, {{a, c, b}});
          ++rep.three_cycles;
          if (reachable(t)) {
            rep.holds = false;
            rep.witness = to_cycle_string(t);
          }
        }
  Rng rng(seed);
  for (std::size_t k = 0; k < sample5 && rep.holds; ++k) {
    std::vector<node_t> pts(N);
    for (node_t i = 0; i < N; ++i) pts[i] = i;
    rng.shuffle(pts);
    pts.resize(5);
    Perm t = from_cycles(n, {pts});
    ++rep.five_cycles;
    if (reachable(t)) {
      rep.holds = false;
      rep.witness = to_cycle_string(t);
    }
  }
  // positive control: a concurrent double swap is its own first factor
  Perm control = lift(transposition(n - 1, 0, 1), r1);
  rep.control_found = reachable(control);
  rep.holds = rep.holds && rep.control_found;
  return rep;
}

Perm random_bad_case(int n, int r1, int r2, CaseLabel which, Rng& rng) {
  if (which != CaseLabel::Bad1 && which != CaseLabel::Bad2) throw contract_error("random_bad_case: label must be Bad1 or Bad2");
  std::size_t half = std::size_t(1) << (n - 1);
  std::vector<unsigned> content(half);  // 0 = none, 1 = r2-low, 2 = r2-high, 3 = both in preimage of face 0
  if (which == CaseLabel::Bad2) {
    std::size_t x = 1 + 2 * rng.below(half / 2);  // odd count of 1-contents
    for (std::size_t i = 0; i < half; ++i) content[i] = i < x ? 1u : 2u;
  } else {
    unsigned fill = rng.coin() ? 1u : 2u;
    for (std::size_t i = 0; i < half; ++i) content[i] = fill;
    content[0] = 0;
    content[1] = 3;
  }
  rng.shuffle(content);
  node_t m1 = dim_mask(n, r1);
  std::vector<node_t> lowface, highface, dom0, dom1;
  for (node_t x = 0; x < (node_t(1) << n); ++x) (x & m1 ? highface : lowface).push_back(x);
  for (node_t p = 0; p < half; ++p)
    for (int b = 0; b < 2; ++b) {
      node_t x = insert_bit(p, n, r2, b);
      (content[p] >> b & 1u ? dom0 : dom1).push_back(x);
    }
  rng.shuffle(lowface);
  rng.shuffle(highface);
  std::vector<node_t> img(std::size_t(1) << n);
  for (std::size_t i = 0; i < dom0.size(); ++i) img[dom0[i]] = lowface[i];
  for (std::size_t i = 0; i < dom1.size(); ++i) img[dom1[i]] = highface[i];
  Perm s(n, std::move(img));
  if (!is_even(s)) s.swap_images(dom0[0], dom0[1]);
  return s;
}

BadcaseReport brute_badcase_invariants(std::size_t trials, std::uint64_t seed) {
  BadcaseReport rep;
  Rng rng(seed);
  auto fail = [&](const std::string& why) {
    if (rep.failure.empty()) rep.failure = why;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    int n = 4 + int(t % 2);
    CaseLabel which = (t / 2) % 2 ? CaseLabel::Bad2 : CaseLabel::Bad1;
    int r1 = 1 + int(rng.below(n));
    int r2 = 1 + int(rng.below(n - 1));
    if (r2 >= r1) ++r2;
    Perm s = random_bad_case(n, r1, r2, which, rng);
    if (case_classify(pair_counts(s, r1, r2)) != which) fail("generator produced the wrong class");
    auto [eta, xi] = vertical_pair_stats(s, r1);
    if (which == CaseLabel::Bad1) {
      ++rep.bad1;
      if (eta % 4 != 2) fail("Bad1 start: eta mod 4 != 2");
    } else {
      ++rep.bad2;
      if (xi % 2 != 1) fail("Bad2 start: xi even");
    }
    // one factor applied directly to the bad-class permutation
    Perm by_pair = compose(s, random_concurrent(n, r2, rng));
    auto [e1, x1] = vertical_pair_stats(by_pair, r1);
    if (which == CaseLabel::Bad1 && e1 % 4 != eta % 4) fail("eta mod 4 changed under a pair-dimension factor");
    if (which == CaseLabel::Bad2 && x1 % 2 != xi % 2) fail("xi parity changed under a pair-dimension factor");
    Perm by_row = compose(s, random_concurrent(n, r1, rng));
    if (vertical_pair_stats(by_row, r1) != std::make_pair(eta, xi)) fail("eta or xi changed under a factor on r1");
    // pair, row, pair chain: the last factor acts on a state that need not be in the bad class
    Perm chain = compose(compose(by_pair, random_concurrent(n, r1, rng)), random_concurrent(n, r2, rng));
    auto [e3, x3] = vertical_pair_stats(chain, r1);
    if ((which == CaseLabel::Bad1 && e3 % 4 != eta % 4) || (which == CaseLabel::Bad2 && x3 % 2 != xi % 2)) ++rep.chain_breaks;
    if (whitenable(pair_counts(s, r1, r2), n)) fail("bad-class permutation admits a whitening");
    ++rep.trials;
  }
  rep.holds = rep.failure.empty();
  return rep;
}

TaxonomyReport calibrate_taxonomy(bool swap_types) {
  Perm s = parse_cycle_string("(1001,1100,0101)(1110,0110,0111,1111)(1010,0010,0011,1011)", 4);
  TaxonomyReport rep;
  rep.fixture = pair_counts(s, 1, 2);
  if (swap_types) {
    std::swap(rep.fixture.a[0], rep.fixture.a[1]);
    std::swap(rep.fixture.b[0], rep.fixture.b[1]);
  }
  rep.identity4 = pair_counts(Perm(4), 1, 2);
  PairCounts want;
  want.a = {1, 0, 1, 2};
  want.b = {1, 0, 1, 2};
  PairCounts white;
  white.a = {0, 0, 0, 4};
  white.b = {0, 0, 0, 4};
  rep.holds = rep.fixture == want && rep.identity4 == white;
  return rep;
}

}  // namespace rbd
