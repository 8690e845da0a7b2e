#include "rbdecomp/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace rbd {

void check_width(int n, int max_width) {
  if (n < 1 || n > max_width)
    throw contract_error("width " + std::to_string(n) + " outside [1, " + std::to_string(max_width) + "]");
}

Perm::Perm(int n) : n_(n), img_(std::size_t(1) << n) {
  check_width(n, 31);
  std::iota(img_.begin(), img_.end(), node_t(0));
}

Perm::Perm(int n, std::vector<node_t> image) : n_(n), img_(std::move(image)) {
  check_width(n, 31);
  if (img_.size() != (std::size_t(1) << n)) throw contract_error("image table has wrong length");
  if (!is_bijection(img_)) throw contract_error("image table is not a bijection");
}

Perm Perm::unchecked(int n, std::vector<node_t> image) {
  Perm p;
  p.n_ = n;
  p.img_ = std::move(image);
  return p;
}

bool Perm::is_identity() const {
  for (node_t x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return false;
  return true;
}

bool is_bijection(const std::vector<node_t>& image) {
  std::vector<bool> seen(image.size(), false);
  for (node_t v : image) {
    if (v >= image.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

static void same_width(const Perm& p, const Perm& q) {
  if (p.n() != q.n()) throw contract_error("width mismatch");
}

Perm compose(const Perm& p, const Perm& q) {
  same_width(p, q);
  std::vector<node_t> out(p.size());
  const auto& pi = p.image();
  const auto& qi = q.image();
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = pi[qi[x]];
  return Perm::unchecked(p.n(), std::move(out));
}

Perm compose(std::initializer_list<Perm> ps) {
  if (ps.size() == 0) throw contract_error("empty product");
  auto it = ps.begin();
  Perm acc = *it;
  for (++it; it != ps.end(); ++it) acc = compose(acc, *it);
  return acc;
}

Perm inverse(const Perm& p) {
  std::vector<node_t> out(p.size());
  for (node_t x = 0; x < p.size(); ++x) out[p[x]] = x;
  return Perm::unchecked(p.n(), std::move(out));
}

Perm power(const Perm& p, long long k) {
  Perm base = k < 0 ? inverse(p) : p;
  unsigned long long e = k < 0 ? -static_cast<unsigned long long>(k) : k;
  Perm acc(p.n());
  while (e) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

Perm from_cycles(int n, const std::vector<std::vector<node_t>>& cs) {
  Perm p(n);
  std::vector<bool> used(p.size(), false);
  for (const auto& c : cs) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      node_t x = c[i];
      if (x >= p.size()) throw contract_error("cycle element out of range");
      if (used[x]) throw contract_error("cycle element repeated: " + bits(x, n));
      used[x] = true;
      p.set(x, c[(i + 1) % c.size()]);
    }
  }
  return p;
}

Perm transposition(int n, node_t a, node_t b) {
  Perm p(n);
  p.swap_images(a, b);
  return p;
}

Parity parity(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t ncyc = 0;
  for (node_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    ++ncyc;
    for (node_t y = x; !seen[y]; y = p[y]) seen[y] = true;
  }
  return ((p.size() - ncyc) & 1) ? Parity::odd : Parity::even;
}

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

std::vector<Cycle> cycles(const Perm& p, bool with_fixpoints) {
  std::vector<Cycle> out;
  std::vector<bool> seen(p.size(), false);
  for (node_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    if (p[x] == x) {
      seen[x] = true;
      if (with_fixpoints) out.push_back({x});
      continue;
    }
    Cycle c;
    for (node_t y = x; !seen[y]; y = p[y]) {
      seen[y] = true;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t CyclePattern::total() const {
  std::size_t t = 0;
  for (auto [k, c] : counts) t += k * c;
  return t;
}

std::size_t CyclePattern::count(std::size_t len) const {
  auto it = counts.find(len);
  return it == counts.end() ? 0 : it->second;
}

std::size_t CyclePattern::nontrivial() const {
  std::size_t t = 0;
  for (auto [k, c] : counts)
    if (k >= 2) t += c;
  return t;
}

std::size_t CyclePattern::longest() const {
  std::size_t m = 0;
  for (auto [k, c] : counts)
    if (c) m = std::max(m, k);
  return m;
}

bool CyclePattern::free_of(std::initializer_list<std::size_t> lens) const {
  for (auto l : lens)
    if (count(l)) return false;
  return true;
}

bool CyclePattern::is_even() const {
  std::size_t evens = 0;
  for (auto [k, c] : counts)
    if (k % 2 == 0) evens += c;
  return evens % 2 == 0;
}

bool CyclePattern::has_even_cycle() const {
  for (auto [k, c] : counts)
    if (k % 2 == 0 && c) return true;
  return false;
}

std::string CyclePattern::str() const {
  std::string s = "{";
  bool first = true;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    if (!it->second) continue;
    if (!first) s += ", ";
    first = false;
    s += std::to_string(it->first) + ":" + std::to_string(it->second);
  }
  return s + "}";
}

CyclePattern cycle_pattern(const Perm& p) {
  CyclePattern cp;
  std::vector<bool> seen(p.size(), false);
  for (node_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (node_t y = x; !seen[y]; y = p[y]) {
      seen[y] = true;
      ++len;
    }
    ++cp.counts[len];
  }
  return cp;
}

CyclePattern make_pattern(std::initializer_list<std::pair<std::size_t, std::size_t>> entries,
                          std::size_t total) {
  CyclePattern cp;
  for (auto [k, c] : entries)
    if (c) cp.counts[k] += c;
  if (total) {
    std::size_t t = cp.total();
    if (t > total) throw contract_error("pattern exceeds total");
    if (t < total) cp.counts[1] += total - t;
  }
  return cp;
}

bool is_controlled(const Perm& p, int d) {
  node_t m = dim_mask(p.n(), d);
  for (node_t x = 0; x < p.size(); ++x)
    if ((p[x] ^ x) & m) return false;
  return true;
}

bool is_concurrent(const Perm& p, int d) {
  node_t m = dim_mask(p.n(), d);
  for (node_t x = 0; x < p.size(); ++x) {
    if (x & m) continue;
    node_t y = p[x];
    if (y & m) return false;
    if (p[x | m] != (y | m)) return false;
  }
  return true;
}

Parity concurrent_parity(const Perm& p, int d) { return parity(restrict(p, d)); }

bool is_concurrently_even(const Perm& p, int d) {
  return is_concurrent(p, d) && concurrent_parity(p, d) == Parity::even;
}

Perm lift(const Perm& q, int d) {
  int n = q.n() + 1;
  if (d < 1 || d > n) throw contract_error("lift: dimension out of range");
  std::vector<node_t> out(std::size_t(1) << n);
  for (node_t y = 0; y < q.size(); ++y) {
    node_t z = q[y];
    out[insert_bit(y, n, d, 0)] = insert_bit(z, n, d, 0);
    out[insert_bit(y, n, d, 1)] = insert_bit(z, n, d, 1);
  }
  return Perm::unchecked(n, std::move(out));
}

Perm restrict(const Perm& p, int d) {
  if (!is_concurrent(p, d)) throw contract_error("restrict: permutation is not concurrent on dimension " + std::to_string(d));
  int n = p.n();
  std::vector<node_t> out(p.size() / 2);
  for (node_t y = 0; y < out.size(); ++y) out[y] = remove_bit(p[insert_bit(y, n, d, 0)], n, d);
  return Perm::unchecked(n - 1, std::move(out));
}

std::pair<Perm, Perm> controlled_halves(const Perm& p, int d) {
  if (!is_controlled(p, d)) throw contract_error("controlled_halves: permutation is not controlled on dimension " + std::to_string(d));
  int n = p.n();
  std::vector<node_t> f(p.size() / 2), g(p.size() / 2);
  for (node_t y = 0; y < f.size(); ++y) {
    f[y] = remove_bit(p[insert_bit(y, n, d, 0)], n, d);
    g[y] = remove_bit(p[insert_bit(y, n, d, 1)], n, d);
  }
  return {Perm::unchecked(n - 1, std::move(f)), Perm::unchecked(n - 1, std::move(g))};
}

Perm assemble_controlled(const Perm& f, const Perm& g, int d) {
  same_width(f, g);
  int n = f.n() + 1;
  std::vector<node_t> out(std::size_t(1) << n);
  for (node_t y = 0; y < f.size(); ++y) {
    out[insert_bit(y, n, d, 0)] = insert_bit(f[y], n, d, 0);
    out[insert_bit(y, n, d, 1)] = insert_bit(g[y], n, d, 1);
  }
  return Perm::unchecked(n, std::move(out));
}

Perm conjugate(const Perm& h, const Perm& p) {
  same_width(h, p);
  // (h p h^-1)(h(x)) = h(p(x))
  std::vector<node_t> out(p.size());
  for (node_t x = 0; x < p.size(); ++x) out[h[x]] = h[p[x]];
  return Perm::unchecked(p.n(), std::move(out));
}

std::size_t dist(const Perm& p, node_t x, node_t y) {
  node_t z = x;
  std::size_t k = 0;
  do {
    if (z == y) return k;
    z = p[z];
    ++k;
  } while (z != x);
  return kInfinity;
}

std::size_t dist_min(const Perm& p, node_t x, node_t y) {
  return std::min(dist(p, x, y), dist(p, y, x));
}

std::vector<node_t> support(const Perm& p) {
  std::vector<node_t> s;
  for (node_t x = 0; x < p.size(); ++x)
    if (p[x] != x) s.push_back(x);
  return s;
}

std::string bits(node_t x, int n) {
  std::string s(n, '0');
  for (int d = 1; d <= n; ++d)
    if (bit_at(x, n, d)) s[d - 1] = '1';
  return s;
}

node_t parse_bits(const std::string& s) {
  if (s.empty() || s.size() > 31) throw parse_error("bad bitstring '" + s + "'");
  node_t x = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw parse_error("bad bitstring '" + s + "'");
    x = (x << 1) | node_t(c - '0');
  }
  return x;
}

std::string to_cycle_string(const Perm& p) {
  std::string s;
  for (const auto& c : cycles(p)) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ',';
      s += bits(c[i], p.n());
    }
    s += ')';
  }
  return s;
}

Perm parse_cycle_string(const std::string& s, int n) {
  check_width(n);
  std::vector<std::vector<node_t>> cs;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  while (i < s.size()) {
    if (s[i] != '(') throw parse_error("expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<node_t> c;
    while (true) {
      skip_ws();
      std::size_t j = i;
      while (j < s.size() && (s[j] == '0' || s[j] == '1')) ++j;
      std::string tok = s.substr(i, j - i);
      if (tok.size() != std::size_t(n))
        throw parse_error("element '" + tok + "' at offset " + std::to_string(i) + " is not " + std::to_string(n) + " bits");
      c.push_back(parse_bits(tok));
      i = j;
      skip_ws();
      if (i >= s.size()) throw parse_error("unterminated cycle");
      if (s[i] == ',') {
        ++i;
        continue;
      }
      if (s[i] == ')') {
        ++i;
        break;
      }
      throw parse_error("unexpected character '" + std::string(1, s[i]) + "' at offset " + std::to_string(i));
    }
    cs.push_back(std::move(c));
    skip_ws();
  }
  try {
    return from_cycles(n, cs);
  } catch (const contract_error& e) {
    throw parse_error(e.what());
  }
}

std::string to_image_text(const Perm& p) {
  std::string s = std::to_string(p.n()) + "\n";
  for (node_t x = 0; x < p.size(); ++x) {
    if (x) s += ' ';
    s += std::to_string(p[x]);
  }
  return s + "\n";
}

Perm parse_image_text(const std::string& text, int max_width) {
  std::istringstream in(text);
  long long n = 0;
  if (!(in >> n)) throw parse_error("missing width on line 1");
  if (n < 1 || n > max_width) throw parse_error("width " + std::to_string(n) + " outside [1, " + std::to_string(max_width) + "]");
  std::size_t N = std::size_t(1) << n;
  std::vector<node_t> img(N);
  std::vector<long long> first_at(N, -1);
  for (std::size_t x = 0; x < N; ++x) {
    long long v;
    if (!(in >> v)) throw parse_error("expected " + std::to_string(N) + " images, got " + std::to_string(x));
    if (v < 0 || std::size_t(v) >= N) throw parse_error("image out of range at position " + std::to_string(x));
    if (first_at[v] >= 0)
      throw parse_error("duplicate image " + std::to_string(v) + " at position " + std::to_string(x) + " (first at " + std::to_string(first_at[v]) + ")");
    first_at[v] = static_cast<long long>(x);
    img[x] = node_t(v);
  }
  std::string extra;
  if (in >> extra) throw parse_error("trailing data after image table");
  return Perm::unchecked(int(n), std::move(img));
}

std::uint64_t digest(const Perm& p) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint32_t v) {
    for (int k = 0; k < 4; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(std::uint32_t(p.n()));
  for (node_t v : p.image()) mix(v);
  return h;
}

}  // namespace rbd
