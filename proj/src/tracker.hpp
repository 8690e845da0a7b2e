#pragma once

#include <algorithm>
#include <initializer_list>
#include <set>
#include <utility>
#include <vector>

#include "rbdecomp/perm.hpp"

namespace rbd::detail {

// Tracks s*pi while transposition pairs are appended on the right.
class Tracker {
 public:
  explicit Tracker(const Perm& s) : img_(s.image()), inv_(s.size()) {
    for (node_t x = 0; x < img_.size(); ++x) inv_[img_[x]] = x;
  }

  node_t next(node_t x) const { return img_[x]; }
  node_t prev(node_t x) const { return inv_[x]; }

  // right-multiply by (x y)
  void swap(node_t x, node_t y) {
    std::swap(img_[x], img_[y]);
    inv_[img_[x]] = x;
    inv_[img_[y]] = y;
  }

  // length of the cycle through x if it is at most 5, else 0; leader is its minimum
  std::size_t short_len(node_t x, node_t* leader) const {
    node_t y = x, lo = x;
    for (std::size_t k = 1; k <= 5; ++k) {
      y = img_[y];
      if (y == x) {
        if (leader) *leader = lo;
        return k;
      }
      lo = std::min(lo, y);
    }
    return 0;
  }

  std::vector<node_t> cycle_of(node_t x) const {
    std::vector<node_t> c{x};
    for (node_t y = img_[x]; y != x; y = img_[y]) c.push_back(y);
    return c;
  }

 private:
  std::vector<node_t> img_, inv_;
};

// short cycles (by leader) that pass through any of the given nodes
inline std::set<node_t> short_leaders(const Tracker& t, std::initializer_list<node_t> xs, std::set<node_t>* with35) {
  std::set<node_t> out;
  for (node_t x : xs) {
    node_t lead;
    std::size_t len = t.short_len(x, &lead);
    if (len == 0) continue;
    out.insert(lead);
    if (with35 && (len == 3 || len == 5)) with35->insert(lead);
  }
  return out;
}

}  // namespace rbd::detail
