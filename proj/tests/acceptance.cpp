// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <new>
#include <string>
#include <thread>

#include "fixtures.hpp"
#include "rbdecomp/cuboid.hpp"
#include "rbdecomp/cycle_synth.hpp"
#include "rbdecomp/even_synth.hpp"
#include "rbdecomp/oracle.hpp"
#include "rbdecomp/random.hpp"

// heap accounting for the memory target; every allocation carries its size in a header
namespace heap {
std::atomic<std::size_t> live{0}, peak{0};
std::atomic<std::size_t> big_threshold{~std::size_t(0)}, big_live{0}, big_at_peak{0};
constexpr std::size_t kHeader = 16;

void* take(std::size_t n) {
  auto* p = static_cast<unsigned char*>(std::malloc(n + kHeader));
  if (!p) throw std::bad_alloc();
  *reinterpret_cast<std::size_t*>(p) = n;
  std::size_t now = live += n;
  if (n >= big_threshold) ++big_live;
  if (now > peak) {
    peak = now;
    big_at_peak = big_live.load();
  }
  return p + kHeader;
}

void give(void* q) {
  if (!q) return;
  auto* p = static_cast<unsigned char*>(q) - kHeader;
  std::size_t n = *reinterpret_cast<std::size_t*>(p);
  live -= n;
  if (n >= big_threshold) --big_live;
  std::free(p);
}
}  // namespace heap

void* operator new(std::size_t n) { return heap::take(n); }
void* operator new[](std::size_t n) { return heap::take(n); }
void operator delete(void* p) noexcept { heap::give(p); }
void operator delete[](void* p) noexcept { heap::give(p); }
void operator delete(void* p, std::size_t) noexcept { heap::give(p); }
void operator delete[](void* p, std::size_t) noexcept { heap::give(p); }

using namespace rbd;
using clk = std::chrono::steady_clock;

namespace {

const unsigned kJobs = std::max(1u, std::thread::hardware_concurrency());
int failures = 0;

double seconds_since(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// runs body, catching anything it throws; body sets detail and returns the verdict
void criterion(int id, const char* title, double budget_s, const std::function<bool(std::string&)>& body) {
  auto t0 = clk::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  double s = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs of %.0fs", s, budget_s);
  if (s > budget_s) ok = false;
  report(id, title, ok, detail + (detail.empty() ? "" : ", ") + buf);
}

std::string fmt(const char* f, auto... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

// random partition of 2^n without 3- and 5-cycles, redrawn until even
CyclePattern random_free_pattern(int n, Rng& rng) {
  std::size_t total = std::size_t(1) << n;
  while (true) {
    CyclePattern p;
    std::size_t left = total;
    while (left > 0) {
      // mostly short cycles, now and then a long one
      std::size_t cap = rng.coin() ? std::min<std::size_t>(left, 12) : left;
      std::size_t k = 1 + rng.below(cap);
      if (k == 3 || k == 5) continue;
      p.counts[k]++;
      left -= k;
    }
    if (p.is_even()) return p;
  }
}

bool inside(const Perm& p, const std::vector<node_t>& sorted_nodes) {
  for (node_t x = 0; x < p.size(); ++x)
    if (p[x] != x && !std::binary_search(sorted_nodes.begin(), sorted_nodes.end(), x)) return false;
  return true;
}

bool all_blocks_concurrent(const Decomposition& d) {
  for (const auto& b : d.blocks)
    if (!is_concurrent(b.lifted(), b.dim)) return false;
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance run, %u worker threads\n", kJobs);

  criterion(1, "depth 7 on random even permutations, n = 6..12", 300, [](std::string& d) {
    Rng rng(1001);
    std::size_t runs = 0, worst = 0;
    bool ok = true;
    for (int n = 6; n <= 12; ++n)
      for (int t = 0; t < 200; ++t) {
        Perm s = random_even_perm(n, rng);
        auto dec = decompose7(s);
        worst = std::max(worst, dec.blocks.size());
        ok = ok && dec.blocks.size() <= 7 && all_blocks_concurrent(dec) && product(n, dec.blocks) == s;
        ++runs;
      }
    d = fmt("%zu runs, max %zu blocks", runs, worst);
    return ok && runs == 1400;
  });

  criterion(2, "even depth 10 on random even permutations, n = 10..12", 600, [](std::string& d) {
    Rng rng(2002);
    std::size_t runs = 0, worst = 0;
    bool ok = true;
    for (int n = 10; n <= 12; ++n)
      for (int t = 0; t < 50; ++t) {
        Perm s = random_even_perm(n, rng);
        auto dec = decompose10(s);
        worst = std::max(worst, dec.blocks.size());
        ok = ok && dec.blocks.size() <= 10 && all_blocks_concurrent(dec) && product(n, dec.blocks) == s;
        for (const auto& b : dec.blocks) ok = ok && is_even(b.inner);
        ++runs;
      }
    d = fmt("%zu runs, max %zu blocks", runs, worst);
    return ok && runs == 150;
  });

  criterion(3, "worked 4-bit instance: factor identity, memberships, cuboid counts", 1, [](std::string& d) {
    Perm pi5i = inverse(fx::pi5()), pi4i = inverse(fx::pi4()), p123 = compose({fx::pi1(), fx::pi2(), fx::pi3()});
    bool p123_ok = p123 == fx::pi123();
    bool identity = compose({fx::pi6(), fx::pi7(), fx::pi8(), fx::pi9(), pi5i, pi4i, inverse(p123)}) == fx::sigma();
    bool members = is_concurrent(fx::pi6(), 1) && is_concurrent(fx::pi9(), 1) && is_concurrent(pi4i, 1) &&
                   is_concurrent(fx::pi7(), 2) && is_concurrent(pi5i, 2) && is_concurrent(inverse(p123), 2) &&
                   is_concurrent(fx::pi8(), 3);
    Cuboid c = build_cuboid(fx::sigma(), 1, 2);
    bool counts = c.counts.a == std::array<std::size_t, 4>{1, 0, 1, 2} && c.counts.b == std::array<std::size_t, 4>{1, 0, 1, 2};
    d = fmt("identity %d, pi1pi2pi3 listing %d, memberships %d, counts %s", identity, p123_ok, members, c.counts.str().c_str());
    return identity && p123_ok && members && counts;
  });

  criterion(4, "no 3- or 5-cycle from two factors on (1, 2) at n = 4", 900, [](std::string& d) {
    auto r = brute_35free(4, 1, 2, 1000, 4004, kJobs);
    d = fmt("3-cycles %zu of 1120, 5-cycles sampled %zu, control %d%s%s", r.three_cycles, r.five_cycles, r.control_found,
            r.witness.empty() ? "" : ", witness ", r.witness.c_str());
    return r.holds && r.three_cycles == 1120 && r.five_cycles >= 1000 && r.control_found;
  });

  criterion(5, "tightness construction has no escape with one factor pair", 600, [](std::string& d) {
    auto r = brute_new1tight(4, kJobs);
    d = fmt("%zu combinations checked, expected %zu", r.checked, std::size_t(4) * 40320 * 12);
    return r.holds && r.checked == std::size_t(4) * 40320 * 12;
  });

  criterion(6, "3/5 elimination: outputs free, even variant parity and even cycle, zeta decreasing", 300, [](std::string& d) {
    Rng rng(6006);
    bool ok = true;
    std::size_t rounds = 0, rounds_even = 0;
    for (int t = 0; t < 100; ++t) {
      int n = 5 + t % 6;
      Perm s = random_even_perm(n, rng);
      int r1 = 1 + int(rng.below(n));
      auto el = eliminate_35_traced(s, r1);
      ok = ok && is_concurrent(el.pi, r1) && cycle_pattern(compose(s, el.pi)).free_of_35();
      for (std::size_t i = 1; i < el.zeta.size(); ++i) ok = ok && el.zeta[i] < el.zeta[i - 1];
      rounds += el.rounds;
    }
    bool ok_even = true;
    for (int t = 0; t < 100; ++t) {
      int n = 8 + t % 4;
      Perm s = random_even_perm(n, rng);
      int r1 = 1 + int(rng.below(n));
      auto el = eliminate_35_even_traced(s, r1);
      auto pat = cycle_pattern(compose(s, el.pi));
      ok_even = ok_even && is_concurrent(el.pi, r1) && is_concurrently_even(el.pi, r1) && pat.free_of_35() && pat.has_even_cycle();
      for (std::size_t i = 1; i < el.zeta.size(); ++i) ok_even = ok_even && el.zeta[i] < el.zeta[i - 1];
      rounds_even += el.stage2_rounds;
    }
    d = fmt("plain %s over %zu rounds, even %s over %zu rounds", ok ? "ok" : "FAILED", rounds, ok_even ? "ok" : "FAILED", rounds_even);
    return ok && ok_even;
  });

  criterion(7, "pack synthesis: exhaustive n = 4, 500 random patterns at n = 6, 8, 10, worked instances", 300, [](std::string& d) {
    bool ok = true;
    // every 3/5-free even pattern at n = 4
    std::size_t exhaustive = 0;
    std::vector<std::size_t> parts;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t maxp) {
      if (left == 0) {
        CyclePattern p;
        for (auto k : parts) p.counts[k]++;
        if (!p.is_even()) return;
        auto pp = synthesize_pattern(p, 1, 4, 4);
        ok = ok && is_concurrent(pp.pi, 1) && is_concurrent(pp.tau, 4) && cycle_pattern(compose(pp.pi, pp.tau)) == p;
        ++exhaustive;
        return;
      }
      for (std::size_t k = std::min(left, maxp); k >= 1; --k) {
        if (k == 3 || k == 5) continue;
        parts.push_back(k);
        rec(left - k, k);
        parts.pop_back();
      }
    };
    rec(16, 16);

    Rng rng(7007);
    std::size_t randoms = 0;
    for (int n : {6, 8, 10})
      for (int t = 0; t < 500; ++t) {
        auto p = random_free_pattern(n, rng);
        int r1 = 1 + int(rng.below(n)), r2 = 1 + int(rng.below(n - 1));
        if (r2 >= r1) ++r2;
        auto pp = synthesize_pattern(p, r1, r2, n);
        ok = ok && is_concurrent(pp.pi, r1) && is_concurrent(pp.tau, r2) && cycle_pattern(compose(pp.pi, pp.tau)) == p;
        ++randoms;
      }

    // single packs on random partial regions keep their support inside the region
    std::size_t regions = 0;
    for (int t = 0; t < 300; ++t) {
      int n = 6 + 2 * int(rng.below(3));
      int r1 = 1 + int(rng.below(n)), r2 = 1 + int(rng.below(n - 1));
      if (r2 >= r1) ++r2;
      std::vector<node_t> all(std::size_t(1) << (n - 2));
      for (node_t j = 0; j < all.size(); ++j) all[j] = j;
      rng.shuffle(all);
      Region reg{n, r1, r2, {}};
      reg.base.assign(all.begin(), all.begin() + 2 + rng.below(all.size() - 2));
      std::size_t sum = 4 * (1 + rng.below(reg.base.size()));
      std::size_t a = 1 + rng.below(sum - 1), b = sum - a;
      if (!valid_arity(a, b)) continue;
      auto pp = rpack(r1, r2, a, b, reg);
      auto nodes = reg.nodes();
      auto pat = cycle_pattern(compose(pp.pi, pp.tau));
      ok = ok && inside(pp.pi, nodes) && inside(pp.tau, nodes) && is_concurrent(pp.pi, r1) && is_concurrent(pp.tau, r2) &&
           pat.count(a) >= 1 && pat.count(b) >= 1;
      ++regions;
    }

    // worked instances: the two-cycle pack on the 12-node region and the 3-bit two-pair pattern
    std::vector<node_t> region;
    for (auto s : fx::rpack_region) region.push_back(parse_bits(s));
    std::sort(region.begin(), region.end());
    auto rp = rpack(1, 2, 4, 6, Region{4, 1, 2, {0, 1, 2}});
    bool rpack_ok = is_concurrent(fx::rpack_pi(), 1) && is_concurrent(fx::rpack_tau(), 2) && inside(fx::rpack_pi(), region) &&
                    inside(fx::rpack_tau(), region) && inside(rp.pi, region) && inside(rp.tau, region) &&
                    cycle_pattern(compose(rp.pi, rp.tau)) == make_pattern({{6, 1}, {4, 1}}, 16);
    auto tp = synthesize_pattern(cycle_pattern(fx::finv_g()), 1, 2, 3);
    bool tpack_ok = is_concurrent(fx::s1(), 1) && is_concurrent(fx::s2(), 2) &&
                    cycle_pattern(compose(fx::s1(), fx::s2())) == cycle_pattern(fx::finv_g()) && is_concurrent(tp.pi, 1) &&
                    is_concurrent(tp.tau, 2) && cycle_pattern(compose(tp.pi, tp.tau)) == cycle_pattern(fx::finv_g());
    d = fmt("%zu exhaustive patterns, %zu random, %zu region packs, worked pack %d, worked pair %d", exhaustive, randoms, regions,
            rpack_ok, tpack_ok);
    return ok && rpack_ok && tpack_ok && randoms == 1500 && regions > 100;
  });

  criterion(8, "odd block from four even blocks: literals and n = 3..5 sweep", 1, [](std::string& d) {
    bool lit = compose({fx::odd4_t1(), fx::odd4_t2(), fx::odd4_t3(), fx::odd4_t4()}) == fx::odd4_pi() &&
               is_concurrent(fx::odd4_pi(), 1) && concurrent_parity(fx::odd4_pi(), 1) == Parity::odd &&
               is_concurrently_even(fx::odd4_t1(), 3) && is_concurrently_even(fx::odd4_t2(), 2) &&
               is_concurrently_even(fx::odd4_t3(), 1) && is_concurrently_even(fx::odd4_t4(), 2);
    bool sweep = true;
    std::size_t triples = 0;
    for (int n = 3; n <= 5; ++n)
      for (int r1 = 1; r1 <= n; ++r1)
        for (int r2 = 1; r2 <= n; ++r2)
          for (int r3 = 1; r3 <= n; ++r3) {
            if (r1 == r2 || r1 == r3 || r2 == r3) continue;
            auto o = odd_block_from_even(n, r1, r2, r3);
            sweep = sweep && compose({o.parts[0], o.parts[1], o.parts[2], o.parts[3]}) == o.pi && is_concurrent(o.pi, r1) &&
                    concurrent_parity(o.pi, r1) == Parity::odd;
            const int dims[4] = {r3, r2, r1, r2};
            for (int i = 0; i < 4; ++i) sweep = sweep && is_concurrently_even(o.parts[i], dims[i]);
            ++triples;
          }
    d = fmt("literals %d, %zu dimension triples", lit, triples);
    return lit && sweep && triples == 6 + 24 + 60;
  });

  criterion(9, "invariants: parity, lift/restrict, bad-class statistics, conjugation", 300, [](std::string& d) {
    Rng rng(9009);
    bool hom = true, lr = true, conj = true;
    for (int t = 0; t < 1000; ++t) {
      int n = 2 + int(rng.below(9));
      Perm p = random_perm(n, rng), q = random_perm(n, rng);
      hom = hom && (parity(compose(p, q)) == Parity::even) == (parity(p) == parity(q));
      int dim = 1 + int(rng.below(n));
      Perm inner = random_perm(n - 1, rng);
      Perm up = lift(inner, dim);
      lr = lr && is_concurrent(up, dim) && restrict(up, dim) == inner && lift(restrict(up, dim), dim) == up &&
           concurrent_parity(up, dim) == parity(inner);
      conj = conj && cycle_pattern(conjugate(q, p)) == cycle_pattern(p) && conjugate(conjugator(p, conjugate(q, p)), p) == conjugate(q, p);
    }
    auto bc = brute_badcase_invariants(1000, 9009);
    d = fmt("parity %d, lift/restrict %d, conjugation %d, bad-class %zu trials (%zu Bad1, %zu Bad2)%s%s", hom, lr, conj, bc.trials,
            bc.bad1, bc.bad2, bc.failure.empty() ? "" : ", ", bc.failure.c_str());
    return hom && lr && conj && bc.holds && bc.trials == 1000;
  });

  criterion(10, "decompose7 at n = 16 under 2 s and n = 20 under 60 s, memory per permutation", 120, [](std::string& d) {
    bool ok = true;
    for (auto [n, limit] : {std::pair{16, 2.0}, std::pair{20, 60.0}}) {
      Rng rng(10010 + n);
      Perm s = random_even_perm(n, rng);
      std::size_t table = s.size() * sizeof(node_t);
      heap::big_threshold = table / 2;  // full tables and (n-1)-bit inner tables
      heap::big_live = 0;
      heap::peak = heap::live.load();
      std::size_t base = heap::live;
      auto t0 = clk::now();
      auto dec = decompose7(s);
      double secs = seconds_since(t0);
      std::size_t peak = heap::peak - base, tables = std::max<std::size_t>(1, heap::big_at_peak);
      heap::big_threshold = ~std::size_t(0);
      bool exact = dec.blocks.size() <= 7 && product(n, dec.blocks) == s;
      double per = double(peak) / double(tables) / double(table);
      d += fmt("%sn=%d %.2fs, peak %.1f tables over %zu live tables, %.2fx per table", d.empty() ? "" : "; ", n, secs,
               double(peak) / double(table), tables, per);
      ok = ok && exact && secs < limit && per < 2.0;
    }
    return ok;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
