#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbd {

// Dimensions are 1-based; dimension 1 is the most significant bit of a node index.
using node_t = std::uint32_t;

inline constexpr int kDefaultMaxWidth = 24;

struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline node_t dim_mask(int n, int d) { return node_t(1) << (n - d); }
inline int bit_at(node_t x, int n, int d) { return int((x >> (n - d)) & 1u); }

// drop bit d of an n-bit node, giving an (n-1)-bit node
inline node_t remove_bit(node_t x, int n, int d) {
  int pos = n - d;
  node_t low = x & ((node_t(1) << pos) - 1);
  node_t high = (x >> (pos + 1)) << pos;
  return high | low;
}

// inverse of remove_bit: place bit value b at dimension d of the n-bit result
inline node_t insert_bit(node_t y, int n, int d, int b) {
  int pos = n - d;
  node_t low = y & ((node_t(1) << pos) - 1);
  node_t high = (y >> pos) << (pos + 1);
  return high | (node_t(b) << pos) | low;
}

// index of dimension d inside the (n-1)-bit space left after removing dimension `removed`
inline int sub_dim(int d, int removed) {
  if (d == removed) throw contract_error("sub_dim: dimension was removed");
  return d < removed ? d : d - 1;
}

// inverse of sub_dim
inline int super_dim(int d, int removed) { return d < removed ? d : d + 1; }

class Perm {
 public:
  Perm() = default;
  explicit Perm(int n);  // identity
  Perm(int n, std::vector<node_t> image);  // validated

  static Perm identity(int n) { return Perm(n); }
  static Perm unchecked(int n, std::vector<node_t> image);

  int n() const { return n_; }
  std::size_t size() const { return img_.size(); }
  node_t operator()(node_t x) const { return img_[x]; }
  node_t operator[](node_t x) const { return img_[x]; }
  const std::vector<node_t>& image() const { return img_; }

  bool is_identity() const;
  bool operator==(const Perm& o) const { return n_ == o.n_ && img_ == o.img_; }
  bool operator!=(const Perm& o) const { return !(*this == o); }

  // swap the images of x and y, i.e. right-multiply by the transposition (x,y)
  void swap_images(node_t x, node_t y) { std::swap(img_[x], img_[y]); }
  void set(node_t x, node_t y) { img_[x] = y; }
  std::vector<node_t>& raw() { return img_; }

 private:
  int n_ = 0;
  std::vector<node_t> img_;
};

bool is_bijection(const std::vector<node_t>& image);
void check_width(int n, int max_width = kDefaultMaxWidth);

Perm compose(const Perm& p, const Perm& q);  // (pq)(x) = p(q(x))
Perm compose(std::initializer_list<Perm> ps);  // left to right product
Perm inverse(const Perm& p);
Perm power(const Perm& p, long long k);
Perm from_cycles(int n, const std::vector<std::vector<node_t>>& cycles);
Perm transposition(int n, node_t a, node_t b);

enum class Parity { even, odd };
Parity parity(const Perm& p);
inline bool is_even(const Perm& p) { return parity(p) == Parity::even; }
const char* to_string(Parity p);

using Cycle = std::vector<node_t>;
// each cycle starts at its minimal element, cycles sorted by leader; fix-points omitted unless asked
std::vector<Cycle> cycles(const Perm& p, bool with_fixpoints = false);

struct CyclePattern {
  std::map<std::size_t, std::size_t> counts;  // length -> multiplicity (1 = fix-points)

  std::size_t total() const;
  std::size_t count(std::size_t len) const;
  std::size_t nontrivial() const;  // cycles of length >= 2
  std::size_t longest() const;
  bool free_of(std::initializer_list<std::size_t> lens) const;
  bool free_of_35() const { return free_of({3, 5}); }
  bool is_even() const;  // parity of any permutation with this pattern
  bool has_even_cycle() const;
  std::string str() const;  // "{4:1, 2:1, 1:2}"
  bool operator==(const CyclePattern& o) const { return counts == o.counts; }
  bool operator!=(const CyclePattern& o) const { return counts != o.counts; }
};

CyclePattern cycle_pattern(const Perm& p);
CyclePattern make_pattern(std::initializer_list<std::pair<std::size_t, std::size_t>> entries,
                          std::size_t total = 0);  // fills 1-cycles up to total if given

// membership predicates
bool is_controlled(const Perm& p, int d);  // p(x)_d = x_d for all x
bool is_concurrent(const Perm& p, int d);  // p = lift(q, d) for some q
Parity concurrent_parity(const Perm& p, int d);
bool is_concurrently_even(const Perm& p, int d);

Perm lift(const Perm& q, int d);      // (n-1)-bit q acting on both halves of dimension d
Perm restrict(const Perm& p, int d);  // inverse of lift, requires concurrency

// p controlled at d: p(0y) = 0 f(y), p(1y) = 1 g(y) with 0/1 on dimension d
std::pair<Perm, Perm> controlled_halves(const Perm& p, int d);
Perm assemble_controlled(const Perm& f, const Perm& g, int d);

Perm conjugate(const Perm& h, const Perm& p);  // h p h^-1

inline constexpr std::size_t kInfinity = static_cast<std::size_t>(-1);
std::size_t dist(const Perm& p, node_t x, node_t y);
std::size_t dist_min(const Perm& p, node_t x, node_t y);
std::vector<node_t> support(const Perm& p);

// text formats
std::string bits(node_t x, int n);
node_t parse_bits(const std::string& s);
std::string to_cycle_string(const Perm& p);
Perm parse_cycle_string(const std::string& s, int n);
std::string to_image_text(const Perm& p);
Perm parse_image_text(const std::string& text, int max_width = kDefaultMaxWidth);

std::uint64_t digest(const Perm& p);  // FNV-1a over n and the image table

}  // namespace rbd
