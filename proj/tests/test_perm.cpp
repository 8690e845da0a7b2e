#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "rbdecomp/block.hpp"
#include "rbdecomp/perm.hpp"
#include "rbdecomp/random.hpp"

using namespace rbd;

TEST_CASE("bit helpers: dimension 1 is the most significant bit") {
  CHECK(dim_mask(4, 1) == 8u);
  CHECK(dim_mask(4, 4) == 1u);
  CHECK(bit_at(parse_bits("0100"), 4, 2) == 1);
  for (node_t x = 0; x < 32; ++x)
    for (int d = 1; d <= 5; ++d) {
      node_t y = remove_bit(x, 5, d);
      CHECK(insert_bit(y, 5, d, bit_at(x, 5, d)) == x);
    }
  CHECK(sub_dim(1, 2) == 1);
  CHECK(sub_dim(3, 2) == 2);
  CHECK_THROWS_AS(sub_dim(2, 2), contract_error);
}

TEST_CASE("compose applies the right factor first") {
  Perm p = parse_cycle_string("(00,01)", 2);
  Perm q = parse_cycle_string("(01,10)", 2);
  Perm pq = compose(p, q);
  for (node_t x = 0; x < 4; ++x) CHECK(pq[x] == p[q[x]]);
  CHECK(compose(Perm(2), q) == q);
  CHECK(compose(q, inverse(q)).is_identity());
  CHECK_THROWS_AS(compose(Perm(2), Perm(3)), contract_error);
}

TEST_CASE("worked instance: product of the three first-layer factors") {
  CHECK(compose({fx::pi1(), fx::pi2(), fx::pi3()}) == fx::pi123());
}

TEST_CASE("parity") {
  CHECK(parity(fx::tight3()) == Parity::odd);
  CHECK(parity(Perm(3)) == Parity::even);
  CHECK(parity(fx::sigma()) == Parity::even);
  CHECK(parity(transposition(3, 1, 6)) == Parity::odd);
}

TEST_CASE("parity is a homomorphism, exhaustive pairs of a sample at n=3 and random up to n=12") {
  Rng rng(11);
  std::vector<Perm> sample;
  for (int i = 0; i < 60; ++i) sample.push_back(random_perm(3, rng));
  for (auto& p : sample)
    for (auto& q : sample) CHECK((parity(compose(p, q)) == Parity::odd) == ((parity(p) == Parity::odd) != (parity(q) == Parity::odd)));
  for (int n = 2; n <= 12; ++n)
    for (int t = 0; t < 10; ++t) {
      Perm p = random_perm(n, rng), q = random_perm(n, rng);
      CHECK((parity(compose(p, q)) == Parity::odd) == ((parity(p) == Parity::odd) != (parity(q) == Parity::odd)));
    }
}

TEST_CASE("cycles and pattern") {
  CHECK(cycle_pattern(Perm(2)).str() == "{1:4}");
  Perm k = compose(inverse(fx::f()), fx::g());
  CHECK(k == fx::finv_g());
  CHECK(to_cycle_string(k) == "(000,101,100,110)(001,010)");
  CHECK(cycle_pattern(k) == make_pattern({{4, 1}, {2, 1}, {1, 2}}));
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Perm p = random_perm(6, rng);
    CHECK(from_cycles(6, cycles(p)) == p);
    CHECK(cycle_pattern(p).total() == 64);
  }
}

TEST_CASE("membership predicates") {
  Perm tau = parse_cycle_string("(00,01)(10,11)", 2);
  CHECK(is_concurrent(tau, 1));
  CHECK(restrict(tau, 1) == parse_cycle_string("(0,1)", 1));
  auto [fh, gh] = controlled_halves(tau, 1);
  CHECK(fh == gh);
  CHECK(is_concurrent(fx::pi8(), 3));
  for (int d = 1; d <= 4; ++d) {
    CHECK(is_concurrent(Perm(4), d));
    CHECK(concurrent_parity(Perm(4), d) == Parity::even);
  }
  CHECK_FALSE(is_concurrent(fx::sigma(), 1));
  CHECK_THROWS_AS(concurrent_parity(fx::sigma(), 1), contract_error);
}

TEST_CASE("lift and restrict") {
  // the inner permutation acts on the remaining bits, so this must invert restrict
  CHECK(lift(parse_cycle_string("(0,1)", 1), 1) == parse_cycle_string("(00,01)(10,11)", 2));
  CHECK(lift(parse_cycle_string("(0,1)", 1), 2) == parse_cycle_string("(00,10)(01,11)", 2));
  // exhaustive round trip over all 3-bit concurrent permutations on each dimension
  std::vector<node_t> img(4);
  std::iota(img.begin(), img.end(), 0);
  do {
    Perm q(2, img);
    for (int d = 1; d <= 3; ++d) {
      Perm p = lift(q, d);
      CHECK(is_concurrent(p, d));
      CHECK(is_controlled(p, d));
      CHECK(restrict(p, d) == q);
      CHECK(is_even(p));
    }
  } while (std::next_permutation(img.begin(), img.end()));
  Rng rng(5);
  for (int n = 3; n <= 12; ++n) {
    int d = 1 + int(rng.below(n));
    Perm q = random_perm(n - 1, rng);
    Perm p = lift(q, d);
    CHECK(is_even(p));  // lifted blocks are even whatever the inner parity
    CHECK(restrict(p, d) == q);
  }
}

TEST_CASE("controlled halves") {
  auto [f, g] = controlled_halves(fx::sigma_ctl(), 1);
  CHECK(f == fx::f());
  CHECK(g == fx::g());
  auto [fi, gi] = controlled_halves(Perm(4), 2);
  CHECK(fi.is_identity());
  CHECK(gi.is_identity());
  Rng rng(9);
  for (int d = 1; d <= 5; ++d) {
    Perm a = random_perm(4, rng), b = random_perm(4, rng);
    Perm s = assemble_controlled(a, b, d);
    auto [a2, b2] = controlled_halves(s, d);
    CHECK(a2 == a);
    CHECK(b2 == b);
  }
  CHECK_THROWS_AS(controlled_halves(fx::sigma(), 1), contract_error);
}

TEST_CASE("conjugate") {
  Perm s12 = compose(fx::s1(), fx::s2());
  CHECK(conjugate(fx::h(), fx::finv_g()) == s12);
  CHECK(conjugate(Perm(3), fx::g()) == fx::g());
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    Perm h = random_perm(5, rng), p = random_perm(5, rng);
    CHECK(cycle_pattern(conjugate(h, p)) == cycle_pattern(p));
    CHECK(conjugate(h, p) == compose({h, p, inverse(h)}));
  }
}

TEST_CASE("dist and support") {
  Perm c = parse_cycle_string("(000,101,100,110)", 3);
  CHECK(dist(c, 0, 0) == 0);
  CHECK(dist(c, parse_bits("000"), parse_bits("100")) == 2);
  CHECK(dist_min(c, parse_bits("000"), parse_bits("110")) == 1);
  CHECK(dist(c, parse_bits("000"), parse_bits("001")) == kInfinity);
  CHECK(support(c).size() == 4);
}

TEST_CASE("text formats round trip") {
  Perm s = fx::sigma();
  CHECK(parse_cycle_string(to_cycle_string(s), 4) == s);
  CHECK(to_cycle_string(parse_cycle_string(to_cycle_string(s), 4)) == to_cycle_string(s));
  CHECK(parse_image_text(to_image_text(s)) == s);
  CHECK(parse_cycle_string("(0000,0001)(0010,0011)", 4) == from_cycles(4, {{0, 1}, {2, 3}}));
  CHECK(parse_cycle_string("", 3).is_identity());
  CHECK_THROWS_AS(parse_image_text("2\n0 1 1 3\n"), parse_error);
  try {
    parse_image_text("2\n0 1 1 3\n");
  } catch (const parse_error& e) {
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_image_text("30\n"), parse_error);
  CHECK_THROWS_AS(parse_cycle_string("(000,001)(001,010)", 3), parse_error);
  CHECK_THROWS_AS(parse_cycle_string("(00,001)", 3), parse_error);
}

TEST_CASE("block products") {
  Rng rng(8);
  std::vector<Block> bs;
  Perm acc(6);
  for (int i = 0; i < 5; ++i) {
    Block b{1 + int(rng.below(6)), random_perm(5, rng)};
    acc = compose(acc, b.lifted());
    bs.push_back(b);
  }
  CHECK(product(6, bs) == acc);
}

TEST_CASE("seeded generation is reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 5; ++i) CHECK(random_even_perm(7, a) == random_even_perm(7, b));
  Rng c(1);
  for (int i = 0; i < 20; ++i) CHECK(is_even(random_even_perm(5, c)));
  CHECK(digest(Perm(4)) == digest(Perm(4)));
  CHECK(digest(Perm(4)) != digest(fx::sigma()));
}
