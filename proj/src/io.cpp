#include "rbdecomp/io.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace rbd {

using ojson = nlohmann::ordered_json;

PermFormat parse_format(const std::string& s) {
  if (s == "images") return PermFormat::images;
  if (s == "cycles") return PermFormat::cycles;
  throw parse_error("unknown format '" + s + "' (images or cycles)");
}

const char* to_string(PermFormat f) { return f == PermFormat::images ? "images" : "cycles"; }

Mode parse_mode(const std::string& s) {
  if (s == "block7") return Mode::block7;
  if (s == "even10") return Mode::even10;
  if (s == "greedy") return Mode::greedy;
  throw parse_error("unknown mode '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Perm parse_cycles_text(const std::string& text, int max_width) {
  std::string body = trim(text);
  int n = -1;
  if (!body.empty() && body[0] != '(') {
    // width line
    std::size_t eol = body.find('\n');
    std::string head = trim(body.substr(0, eol));
    for (char ch : head)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw parse_error("line 1: expected a width or '('");
    if (head.empty() || head.size() > 3) throw parse_error("line 1: bad width");
    n = std::stoi(head);
    body = eol == std::string::npos ? std::string() : trim(body.substr(eol + 1));
  } else {
    std::size_t i = 1;
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    std::size_t j = i;
    while (j < body.size() && (body[j] == '0' || body[j] == '1')) ++j;
    n = int(j - i);
    if (n == 0) throw parse_error("cannot infer the width: give it on line 1");
  }
  if (n < 1 || n > max_width) throw parse_error("width " + std::to_string(n) + " outside [1, " + std::to_string(max_width) + "]");
  return parse_cycle_string(body, n);
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t unhex64(const std::string& s) {
  if (s.empty() || s.size() > 16) throw parse_error("bad digest '" + s + "'");
  std::size_t used = 0;
  auto v = std::stoull(s, &used, 16);
  if (used != s.size()) throw parse_error("bad digest '" + s + "'");
  return v;
}

ojson counts_pair(const std::array<std::size_t, 4>& v) { return ojson::array({v[0], v[1], v[2], v[3]}); }

}  // namespace

Perm parse_perm(const std::string& text, PermFormat f, int max_width) {
  if (f == PermFormat::images) return parse_image_text(text, max_width);
  return parse_cycles_text(text, max_width);
}

std::string emit_perm(const Perm& p, PermFormat f) {
  if (f == PermFormat::images) return to_image_text(p);
  return std::to_string(p.n()) + "\n" + to_cycle_string(p) + "\n";
}

ojson to_json(const Decomposition& d, const JsonOptions& opt) {
  ojson j;
  j["n"] = d.n;
  j["mode"] = to_string(d.mode);
  j["source_digest"] = hex64(d.source_digest);
  ojson blocks = ojson::array();
  for (const auto& b : d.blocks) {
    ojson e;
    e["dim"] = b.dim;
    e["inner_cycles"] = to_cycle_string(b.inner);
    e["concurrent_parity"] = to_string(parity(b.inner));
    if (opt.images) {
      std::vector<node_t> img(b.inner.size());
      for (node_t x = 0; x < img.size(); ++x) img[x] = b.inner[x];
      e["images"] = img;
    }
    blocks.push_back(std::move(e));
  }
  j["blocks"] = std::move(blocks);
  j["verified"] = nullptr;
  j["stats"] = {{"rounds_35", d.rounds_35}, {"case_labels", d.case_labels}};
  return j;
}

Decomposition decomposition_from_json(const nlohmann::json& j) {
  try {
    Decomposition d;
    d.n = j.at("n").get<int>();
    check_width(d.n);
    if (d.n < 2) throw parse_error("width must be at least 2");
    d.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("source_digest")) d.source_digest = unhex64(j.at("source_digest").get<std::string>());
    for (const auto& e : j.at("blocks")) {
      int dim = e.at("dim").get<int>();
      if (dim < 1 || dim > d.n) throw parse_error("block dimension " + std::to_string(dim) + " out of range");
      Perm inner = e.contains("images") ? Perm(d.n - 1, e.at("images").get<std::vector<node_t>>())
                                        : parse_cycle_string(e.at("inner_cycles").get<std::string>(), d.n - 1);
      d.blocks.push_back(Block{dim, std::move(inner)});
    }
    if (j.contains("stats")) {
      const auto& s = j.at("stats");
      d.rounds_35 = s.value("rounds_35", std::size_t(0));
      d.case_labels = s.value("case_labels", std::vector<std::string>{});
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("decomposition report: ") + e.what());
  } catch (const contract_error& e) {
    throw parse_error(std::string("decomposition report: ") + e.what());
  }
}

ojson to_json(const VerifyReport& r) {
  ojson j;
  j["ok"] = r.ok;
  j["product_matches"] = r.product_matches;
  j["count_ok"] = r.count_ok;
  j["memberships_ok"] = r.memberships_ok;
  j["block_count"] = r.block_count;
  if (r.bound == kInfinity) j["bound"] = nullptr;  // unbounded mode
  else j["bound"] = r.bound;
  ojson bs = ojson::array();
  for (const auto& b : r.blocks)
    bs.push_back({{"dim", b.dim}, {"concurrent", b.concurrent}, {"dim_in_range", b.dim_in_range}, {"inner_parity", to_string(b.inner_parity)}});
  j["blocks"] = std::move(bs);
  return j;
}

ojson to_json(const PairCounts& c) {
  return {{"a", counts_pair(c.a)}, {"b", counts_pair(c.b)}, {"text", c.str()}};
}

ojson to_json(const Cuboid& c) {
  ojson j;
  j["n"] = c.n;
  j["r1"] = c.r1;
  j["r2"] = c.r2;
  j["counts"] = to_json(c.counts);
  j["case"] = to_string(case_classify(c.counts));
  std::string colors;
  for (auto v : c.color) colors += v ? 'B' : 'W';
  j["colors"] = colors;
  return j;
}

ojson to_json(const TightReport& r) {
  return {{"lemma", "new1tight"}, {"holds", r.holds}, {"checked", r.checked}, {"witness", r.witness}};
}

ojson to_json(const FreeReport& r) {
  return {{"lemma", "35free"},
          {"holds", r.holds},
          {"three_cycles", r.three_cycles},
          {"five_cycles", r.five_cycles},
          {"control_found", r.control_found},
          {"witness", r.witness}};
}

ojson to_json(const BadcaseReport& r) {
  return {{"lemma", "badcase"}, {"holds", r.holds},         {"trials", r.trials},   {"bad1", r.bad1},
          {"bad2", r.bad2},     {"chain_breaks", r.chain_breaks}, {"failure", r.failure}};
}

ojson to_json(const TaxonomyReport& r) {
  return {{"lemma", "taxonomy"}, {"holds", r.holds}, {"fixture", to_json(r.fixture)}, {"identity4", to_json(r.identity4)}};
}

std::string cuboid_text(const Cuboid& c) {
  std::ostringstream out;
  node_t m1 = dim_mask(c.n, c.r1), m2 = dim_mask(c.n, c.r2);
  out << "cuboid n=" << c.n << " r1=" << c.r1 << " r2=" << c.r2 << " counts " << c.counts.str() << " case "
      << to_string(case_classify(c.counts)) << "\n";
  for (int face = 1; face >= 0; --face) {
    out << "face x" << c.r1 << "=" << face << "\n";
    for (node_t x = 0; x < c.color.size(); ++x) {
      if (bool(x & m1) != bool(face) || (x & m2)) continue;
      char lo = c.color[x] ? 'B' : 'W', hi = c.color[x | m2] ? 'B' : 'W';
      int type = lo == 'W' ? (hi == 'B' ? 1 : 4) : (hi == 'W' ? 2 : 3);
      out << "  " << bits(x, c.n) << " " << bits(x | m2, c.n) << "  " << lo << hi << "  type " << type << "\n";
    }
  }
  return out.str();
}

}  // namespace rbd
