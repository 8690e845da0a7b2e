#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rbdecomp/perm.hpp"

namespace rbd {

// std::uniform_int_distribution is implementation-defined; this draw is not,
// so seeded outputs are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
  bool coin() { return next() >> 63; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

Perm random_perm(int n, Rng& rng);
// seeded shuffle, then swap two images if the result is odd
Perm random_even_perm(int n, Rng& rng);
// lift of a random (n-1)-bit permutation along d
Perm random_concurrent(int n, int d, Rng& rng);
// random permutation fixing bit d
Perm random_controlled(int n, int d, Rng& rng, bool even = true);

}  // namespace rbd
