#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "rbdecomp/block.hpp"
#include "rbdecomp/cuboid.hpp"
#include "rbdecomp/perm.hpp"
#include "rbdecomp/random.hpp"

namespace rbd {

struct BlockCheck {
  int dim = 0;
  bool concurrent = false;
  bool dim_in_range = false;
  Parity inner_parity = Parity::even;
};

struct VerifyReport {
  bool ok = false;
  bool product_matches = false;
  bool count_ok = false;
  bool memberships_ok = false;
  std::size_t block_count = 0;
  std::size_t bound = 0;
  std::vector<BlockCheck> blocks;
};

// Checks every block is a valid lift (and concurrently even in even10 mode),
// the block count bound of the mode, and that the ordered product equals s.
VerifyReport verify_decomposition(const Perm& s, const Decomposition& d);
std::size_t block_bound(Mode m);

// Is there pi in SC(r2) with s*pi controlled on r3?  Counting test: every r2-pair
// must be monochromatic under y -> s(y)_{r3}, with half of the pairs labelled 0.
bool exists_pi_to_controlled(const Perm& s, int r2, int r3);
// same question by enumerating all (2^(n-1))! concurrent candidates
bool exists_pi_to_controlled_enum(const Perm& s, int r2, int r3);

// Enumerates every inner permutation of a first factor on r2; the remaining two
// factors are decided by the row-type pairing test.
bool exists_whitening_enum(const Perm& s, int r1, int r2);
// Full enumeration of all three factors; only feasible at n = 3.
bool exists_whitening_full(const Perm& s, int r1, int r2);

// Visits all permutations of {0..m-1} in lexicographic order; stops when f returns true.
template <class F>
bool any_inner_perm(int m, F&& f);

// tightness construction: even-width family with no escape by one factor pair
Perm tight_sigma(int n);
struct TightReport {
  bool holds = false;
  std::size_t checked = 0;
  std::string witness;  // first counterexample, if any
};
TightReport brute_new1tight(int n, unsigned jobs = 1);

struct FreeReport {
  bool holds = false;
  std::size_t three_cycles = 0, five_cycles = 0;
  bool control_found = false;
  std::string witness;
};
// no product of factors on (r1, r2) is a single 3- or 5-cycle (n = 4)
FreeReport brute_35free(int n, int r1, int r2, std::size_t sample5, std::uint64_t seed, unsigned jobs = 1);

struct BadcaseReport {
  bool holds = false;
  std::size_t trials = 0;
  std::size_t bad1 = 0, bad2 = 0;
  std::size_t chain_breaks = 0;  // pair/row/pair chains where the statistic moved (diagnostic)
  std::string failure;
};
BadcaseReport brute_badcase_invariants(std::size_t trials, std::uint64_t seed);

// random even permutation whose (r1, r2) cuboid falls in the requested bad class
Perm random_bad_case(int n, int r1, int r2, CaseLabel which, Rng& rng);

struct TaxonomyReport {
  bool holds = false;
  PairCounts fixture;
  PairCounts identity4;
};
// swap_types exchanges the meaning of types 1 and 2, which must break the fixture
TaxonomyReport calibrate_taxonomy(bool swap_types = false);

template <class F>
bool any_inner_perm(int m, F&& f) {
  std::vector<node_t> v(m);
  for (int i = 0; i < m; ++i) v[i] = node_t(i);
  do {
    if (f(v)) return true;
  } while (std::next_permutation(v.begin(), v.end()));
  return false;
}

}  // namespace rbd
