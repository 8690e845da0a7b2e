#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rbdecomp/block.hpp"
#include "rbdecomp/perm.hpp"

namespace rbd {

// Pair tallies of the colored cuboid. A pair {x, x^r2} is read as
// (color at x_r2 = 0, color at x_r2 = 1):
//   type 1 = (white, black), 2 = (black, white), 3 = (black, black), 4 = (white, white).
// a-counts are taken on the face x_r1 = 1, b-counts on x_r1 = 0.
struct PairCounts {
  std::array<std::size_t, 4> a{};  // a[0] = a1 ...
  std::array<std::size_t, 4> b{};

  std::size_t a1() const { return a[0]; }
  std::size_t a2() const { return a[1]; }
  std::size_t a3() const { return a[2]; }
  std::size_t a4() const { return a[3]; }
  std::size_t b1() const { return b[0]; }
  std::size_t b2() const { return b[1]; }
  std::size_t b3() const { return b[2]; }
  std::size_t b4() const { return b[3]; }

  std::size_t x_count() const { return b1() + a2(); }  // b1 + a2
  std::size_t y_count() const { return a1() + b2(); }  // a1 + b2
  std::size_t mono_sum() const { return a3() + a4() + b3() + b4(); }

  bool operator==(const PairCounts& o) const { return a == o.a && b == o.b; }
  std::string str() const;
};

struct Cuboid {
  int n = 0, r1 = 0, r2 = 0;
  std::vector<std::uint8_t> color;  // 1 = black
  PairCounts counts;

  bool all_white() const;
};

Cuboid build_cuboid(const Perm& s, int r1, int r2);
PairCounts pair_counts(const Perm& s, int r1, int r2);
// throws unless the tallies satisfy the face-balance and size identities for width n
void check_counts(const PairCounts& c, int n);

// (mixed-color pairs, black-black pairs) along r1
std::pair<std::size_t, std::size_t> vertical_pair_stats(const Perm& s, int r1);

enum class CaseLabel { Good1, Good2, Good3, Bad1, Bad2 };
const char* to_string(CaseLabel c);
CaseLabel case_classify(const PairCounts& c);
inline bool is_good(CaseLabel c) { return c == CaseLabel::Good1 || c == CaseLabel::Good2 || c == CaseLabel::Good3; }

struct CardTally {
  std::size_t alpha = 0, beta = 0, gamma = 0;
};
// requires a2+a3 <= b2+b3
CardTally card_tally(const PairCounts& c);
// counts A-, B-, C-cards column by column; nullopt if some column is not a card
std::optional<CardTally> recount_cards(const Perm& s, int r1, int r2);

struct Canonicalization {
  Perm pi;     // full concurrent permutation, s*pi is canonical
  Perm step1;  // gathers the faces: a2' = a3' = b3' = 0
  Perm step2;  // arranges columns into cards; pi = step1 * step2
};
Canonicalization canonicalize(const Perm& s, int r1, int r2);
// conjugation by the flip of r1; exchanges the two faces of the cuboid
Perm mirror_faces(const Perm& s, int r1);

// Requested inner parities for the three blocks; nullopt means "don't care".
struct ParityRequest {
  std::optional<Parity> first, middle, last;
  static ParityRequest all_even() { return {Parity::even, Parity::even, Parity::even}; }
};

// Three factors on dimensions (r2, r1, r2) with s*first*middle*last controlled at r1.
struct Whitening {
  Block first, middle, last;
  Perm result;
};

// exact existence test for a whitening triple on (r1, r2)
bool whitenable(const PairCounts& c, int n);
Whitening solve_good(const Perm& s, int r1, int r2, const ParityRequest& req = {});

struct ControlResult {
  std::array<Block, 3> blocks;  // dims (r', r1, r')
  Perm controlled;
  int r1 = 0, r_pair = 0;
  CaseLabel first_label = CaseLabel::Good1;
  CaseLabel used_label = CaseLabel::Good1;
  bool switched = false;
};

ControlResult to_controlled(const Perm& s, int r1, bool even_blocks = false);
inline ControlResult to_controlled_even(const Perm& s, int r1) { return to_controlled(s, r1, true); }

}  // namespace rbd
