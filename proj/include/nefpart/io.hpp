#pragma once

#include "nefpart/classify.hpp"
#include "nefpart/good_pair.hpp"
#include "nefpart/regularity.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace nefpart::io {

using json = nlohmann::ordered_json;

inline constexpr const char* format_tag = "nefpart/1";

// Malformed input; pointer is a JSON pointer into the offending document.
struct InputError : std::runtime_error {
  std::string pointer;
  InputError(std::string ptr, const std::string& what)
      : std::runtime_error((ptr.empty() ? std::string("/") : ptr) + ": " + what), pointer(std::move(ptr)) {}
};

json parse_text(const std::string& text, const std::string& origin);
// Inline JSON when the argument starts with '{' or '[', else a file path.
json load_argument(const std::string& arg);
// temp file + rename
void write_atomic(const std::string& path, const std::string& contents);

json to_json(const Rational& q);
json to_json(const QVector& v);
json to_json(const Polytope& p);
json to_json(const VertexPartition& p);
json to_json(const GeneralizedNefPartition& g);
json to_json(const GoodPair& p);
json to_json(const ToricAmbient& a);
json to_json(const ClassGroupElement& c);
json to_json(const PairMatrix& m);
json to_json(const PairEquations& e);
json system_json(const ToricAmbient& a, const CoxSystem& s, const std::vector<Monomial>& marked = {});
json verdict_json(const CyReport& rep, const std::optional<S2Verdict>& s2 = std::nullopt);
json to_json(const ClassificationRow& row);
json to_json(const VectorClassification& c);

Rational rational_from_json(const json& j, const std::string& ptr);
Polytope polytope_from_json(const json& j, const std::string& ptr = "");
VertexPartition partition_from_json(const json& j, const std::string& ptr = "");
// {"delta"|"polytope", "partition"} or {"parts"}.
GeneralizedNefPartition gnp_from_json(const json& j, const std::string& ptr = "");
// {"inner", "outer"}, each a GNP; the pair must be good.
GoodPair goodpair_from_json(const json& j, const std::string& ptr = "");
// {"rays"} or {"weights"}.
ToricAmbient ambient_from_json(const json& j, const std::string& ptr = "");

struct SystemInput {
  ToricAmbient ambient;
  CoxSystem system;
  std::vector<Monomial> marked;
};
// {"ambient", "supports", "marked"?}
SystemInput system_from_json(const json& j, const std::string& ptr = "");
std::vector<Monomial> monomials_from_json(const json& j, std::size_t r, const std::string& ptr);

std::string dump(const json& j);  // stable, two-space indent, trailing newline

// One row per pair; vectors is an array of serialized VectorClassification.
std::string classification_csv(const json& vectors);

}  // namespace nefpart::io
