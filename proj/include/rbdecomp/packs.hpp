#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rbdecomp/perm.hpp"

namespace rbd {

// {0,1}^2 x base inside n bits; base holds (n-2)-bit strings with r1 and r2 removed
struct Region {
  int n = 0;
  int r1 = 0, r2 = 0;
  std::vector<node_t> base;

  std::size_t node_count() const { return 4 * base.size(); }
  std::vector<node_t> nodes() const;
};

// pi is concurrent on r1, tau on r2; both fix every node outside the region used
struct PackPair {
  Perm pi;
  Perm tau;
};

// One a-cycle and one b-cycle from pi*tau on the region. a+b = 2 mod 4 is accepted
// too: the last base column is half used and its two spare nodes stay fixed.
PackPair rpack(int r1, int r2, std::size_t a, std::size_t b, const Region& s);
// a,b- and c,d-cycles on two trapezoids sharing one half column; a+b = c+d = 2 mod 4
PackPair tpack(int r1, int r2, std::size_t a, std::size_t b, std::size_t c, std::size_t d, const Region& s);

// arities a pack can realize: neither 3 nor 5, a+b even
bool valid_arity(std::size_t a, std::size_t b);

using CyclePair = std::pair<std::size_t, std::size_t>;  // first <= second
// greedy pairing: smallest remaining length with the smallest same-parity partner
std::vector<CyclePair> pair_cycles(const CyclePattern& pattern);

namespace packs {

enum class Family { single, split, bridge, lone };
const char* to_string(Family f);

// A group is one rpack (one pair, no half column) or one tpack (two pairs, one shared half column).
struct Group {
  std::vector<CyclePair> pairs;
  std::size_t columns = 0;
  bool trivial() const;  // only fix-points
};
std::vector<Group> group_pairs(const std::vector<CyclePair>& pairs);

struct SubChoice {
  Family family = Family::single;
  bool toggle = false;  // T-side consecutive-pair swap
};

struct Variant {
  bool swapped = false;  // P acts on r2 and T on r1
  std::array<SubChoice, 2> sub{};
  int pi_parity = 0, tau_parity = 0;
};

// every distinct (pi, tau) parity combination the group can reach, one variant each
std::vector<Variant> group_variants(const Group& g);
Variant default_variant(const Group& g);

// Writes the group's construction into the two inner tables. cols are base
// coordinates; pi_inner has r1 removed, tau_inner has r2 removed.
void emit_group(const Group& g, const Variant& v, const node_t* cols, int n, int r1, int r2,
                std::vector<node_t>& pi_inner, std::vector<node_t>& tau_inner);

struct EngineStats {
  std::size_t groups = 0;
  std::size_t toggles = 0;
  std::size_t swapped = 0;
  bool parity_search = false;
};

// Stage II over a pairing. With want_even the (pi, tau) inner parities are both made
// even by a search over group variants; returns nullopt when no combination exists.
std::optional<PackPair> realize(const std::vector<CyclePair>& pairs, int n, int r1, int r2, bool want_even,
                                EngineStats* stats = nullptr);

}  // namespace packs

}  // namespace rbd
