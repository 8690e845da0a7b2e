#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "rbdecomp/block.hpp"
#include "rbdecomp/packs.hpp"
#include "rbdecomp/perm.hpp"

namespace rbd {

// h even with h p h^-1 = q; needs an even-length cycle in p for the parity repair
Perm even_conjugator(const Perm& p, const Perm& q);

// pi on r1 and tau on r2, both concurrently even, with cycle_pattern(pi*tau) == pattern
PackPair synth_many_cycles_even(const CyclePattern& pattern, int r1, int r2, int n);  // >= 12 nontrivial cycles
PackPair synth_long_cycle_even(const CyclePattern& pattern, int r1, int r2, int n);   // some cycle of length >= 12
// picks one of the two above; ties go to the many-cycles route
PackPair synthesize_pattern_even(const CyclePattern& pattern, int r1, int r2, int n);
bool even_synthesis_applies(const CyclePattern& pattern);

// pi concurrently odd on r1, written as parts[0]*parts[1]*parts[2]*parts[3] with
// parts on r3, r2, r1, r2, each concurrently even
struct OddBlock {
  Perm pi;
  std::array<Perm, 4> parts;
};
OddBlock odd_block_from_even(int n, int r1, int r2, int r3);

struct EvenElimination {
  Perm pi;  // concurrently even on r1
  int stage1_case = 0;                  // 0..4
  std::size_t stage2_rounds = 0;
  std::vector<std::size_t> zeta;        // short cycles away from the protected cycle, per Stage II round
  std::size_t stage3_passes = 0;
  std::vector<std::string> stage3_cases;
  int stage4_case = 0;                  // 0: no parity fix needed
  std::size_t stage4_merged_length = 0;  // Case 2 only
};

// s*pi is 3/5-free and has an even-length cycle; n >= 8
EvenElimination eliminate_35_even_traced(const Perm& s, int r1);
inline Perm eliminate_35_even(const Perm& s, int r1) { return eliminate_35_even_traced(s, r1).pi; }

struct EvenControlledSynthesis {
  std::array<Block, 8> blocks;  // dims (r1, r3, r4, r1, r3, r2, r1, r2); product = s
  std::size_t stage2_rounds = 0;
  bool added_13_cycles = false;
  bool odd_repair = false;
};

// s controlled on r1, n >= 10
EvenControlledSynthesis controlled_to_identity_even(const Perm& s, int r1, int r2, int r3, int r4);

// at most 10 concurrently even blocks; n >= 10
Decomposition decompose10(const Perm& s, int r1 = 1);

}  // namespace rbd
