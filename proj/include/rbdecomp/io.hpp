#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rbdecomp/block.hpp"
#include "rbdecomp/cuboid.hpp"
#include "rbdecomp/oracle.hpp"
#include "rbdecomp/perm.hpp"

namespace rbd {

enum class PermFormat { images, cycles };
PermFormat parse_format(const std::string& s);
const char* to_string(PermFormat f);

// images: width on line 1, then 2^n images.
// cycles: optional width line, then cycles of n-bit strings; the width is taken from
// the first element when the line is absent. The identity needs the width line.
Perm parse_perm(const std::string& text, PermFormat f, int max_width = kDefaultMaxWidth);
// canonical text; parse_perm(emit_perm(p, f), f) == p and emit_perm(parse_perm(t)) == t for canonical t
std::string emit_perm(const Perm& p, PermFormat f);

Mode parse_mode(const std::string& s);

struct JsonOptions {
  bool images = false;  // add image tables for each inner permutation
};

nlohmann::ordered_json to_json(const Decomposition& d, const JsonOptions& opt = {});
nlohmann::ordered_json to_json(const VerifyReport& r);
nlohmann::ordered_json to_json(const PairCounts& c);
nlohmann::ordered_json to_json(const Cuboid& c);
nlohmann::ordered_json to_json(const TightReport& r);
nlohmann::ordered_json to_json(const FreeReport& r);
nlohmann::ordered_json to_json(const BadcaseReport& r);
nlohmann::ordered_json to_json(const TaxonomyReport& r);

// reads the block list back; throws parse_error on malformed reports
Decomposition decomposition_from_json(const nlohmann::json& j);

// multi-line picture of the two faces, one row per r2-pair column
std::string cuboid_text(const Cuboid& c);

}  // namespace rbd
