#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbdecomp/perm.hpp"

namespace rbd {

// One concurrent factor: an (n-1)-bit permutation applied on both halves of `dim`.
struct Block {
  int dim = 0;
  Perm inner;

  Perm lifted() const { return lift(inner, dim); }
  bool trivial() const { return inner.is_identity(); }
};

enum class Mode { block7, even10, greedy };
const char* to_string(Mode m);

struct Decomposition {
  int n = 0;
  Mode mode = Mode::block7;
  std::vector<Block> blocks;  // source = lift(blocks[0]) * lift(blocks[1]) * ...
  std::uint64_t source_digest = 0;
  // diagnostics
  std::size_t rounds_35 = 0;
  std::vector<std::string> case_labels;
};

// ordered product of lifted blocks (identity when empty)
Perm product(int n, const std::vector<Block>& blocks);

// right-multiply p by lift(b) in place without materializing the lift
void apply_block_right(Perm& p, const Block& b);

}  // namespace rbd
