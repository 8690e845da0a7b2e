#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rbdecomp/block.hpp"
#include "rbdecomp/packs.hpp"
#include "rbdecomp/perm.hpp"

namespace rbd {

// number of cycles of length 1..5
std::size_t short_cycle_count(const Perm& p);

struct Elimination {
  Perm pi;  // concurrent on the requested dimension
  std::size_t rounds = 0;
  std::size_t initial_35 = 0;
  std::size_t fallbacks = 0;  // rounds where every candidate target formed a new 3/5-cycle
  std::vector<std::size_t> zeta;  // short-cycle count before the first round and after each
};

// One transposition pair (u t)(u^ t^) per round until s*pi has no 3- or 5-cycles.
Elimination eliminate_35_traced(const Perm& s, int r1);
inline Perm eliminate_35(const Perm& s, int r1) { return eliminate_35_traced(s, r1).pi; }

// pi on r1 and tau on r2 with cycle_pattern(pi*tau) == pattern
PackPair synthesize_pattern(const CyclePattern& pattern, int r1, int r2, int n);

// h with h p h^-1 = q; equal-length cycles matched in leader order
Perm conjugator(const Perm& p, const Perm& q);

struct ControlledSynthesis {
  std::array<Block, 5> blocks;  // dims (r2, r1, r3, r4, r1); s * product = id
  std::size_t rounds_35 = 0;
};

// s controlled on r1; r2, r3, r4 distinct and different from r1
ControlledSynthesis controlled_to_identity(const Perm& s, int r1, int r2, int r3, int r4);

// the two smallest dimensions outside {a, b}
std::pair<int, int> spare_dims(int n, int a, int b);

struct Options {
  int r1 = 1;
  bool keep_identity_blocks = false;
};

// at most 7 blocks for even s with n >= 6; 4 <= n < 6 falls back to the greedy mode
Decomposition decompose7(const Perm& s, const Options& opt = {});
// unbounded depth: whiten, split off the top half, recurse down to 4 bits, where the
// 3/5-cycle eliminator is found by search; n >= 4
Decomposition decompose_greedy(const Perm& s, int r1 = 1);

// [id, q] controlled on r1 as a block on d, where q is concurrent on d's position
// inside the r1-removed space
Block lower_controlled(const Perm& q, int r1, int d);

// inverse of a block list: reversed order, inverted inners
std::vector<Block> invert_blocks(const std::vector<Block>& bs);

}  // namespace rbd
