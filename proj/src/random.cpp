#include "rbdecomp/random.hpp"

#include <numeric>

namespace rbd {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // rejection on the top of the range keeps the draw unbiased
  std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
  std::uint64_t v;
  do v = next();
  while (v >= limit);
  return v % bound;
}

Perm random_perm(int n, Rng& rng) {
  std::vector<node_t> img(std::size_t(1) << n);
  std::iota(img.begin(), img.end(), node_t(0));
  rng.shuffle(img);
  return Perm::unchecked(n, std::move(img));
}

Perm random_even_perm(int n, Rng& rng) {
  Perm p = random_perm(n, rng);
  if (!is_even(p)) p.swap_images(0, 1);
  return p;
}

Perm random_concurrent(int n, int d, Rng& rng) { return lift(random_perm(n - 1, rng), d); }

Perm random_controlled(int n, int d, Rng& rng, bool even) {
  Perm f = random_perm(n - 1, rng);
  Perm g = random_perm(n - 1, rng);
  Perm p = assemble_controlled(f, g, d);
  if (even && !is_even(p)) p.swap_images(0, dim_mask(n, n == d ? n - 1 : n));
  return p;
}

}  // namespace rbd
