#include "nefpart/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace nefpart::io {

namespace {

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(at(ptr, key), "missing field");
  return *it;
}

const json& array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw InputError(ptr, "expected an array");
  return j;
}

Integer integer_from_json(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const Rational q = rational_from_json(j, ptr);
    if (!is_integral(q)) throw InputError(ptr, "expected an integer");
    return numerator(q);
  }
  throw InputError(ptr, "expected an integer");
}

json int_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return json(x.convert_to<long long>());
  return json(x.str());
}

json ints(const ZVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(int_json(v(i)));
  return a;
}

json ints(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

QVector qvector_from_json(const json& j, const std::string& ptr) {
  array(j, ptr);
  QVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i], at(ptr, i));
  return v;
}

ZVector zvector_from_json(const json& j, const std::string& ptr) {
  array(j, ptr);
  ZVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = integer_from_json(j[i], at(ptr, i));
  return v;
}

std::size_t index_from_json(const json& j, const std::string& ptr) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(ptr, "expected a non-negative index");
  return j.get<std::size_t>();
}

json quotient_json(const std::vector<QuotientGrading>& qs) {
  json a = json::array();
  for (const auto& q : qs) a.push_back({{"order", int_json(q.order)}, {"residues", ints(q.residues)}});
  return a;
}

json monomials_json(const std::vector<Monomial>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(m);
  return a;
}

std::string polynomial(const std::vector<Monomial>& support, const Monomial& marked, const std::string& var) {
  std::vector<Monomial> rest;
  for (const auto& m : support)
    if (m != marked) rest.push_back(m);
  std::sort(rest.begin(), rest.end(), std::greater<>());
  std::string out = marked.empty() ? "" : monomial_string(marked, var);
  for (const auto& m : rest) out += (out.empty() ? "" : " + ") + monomial_string(m, var);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("", origin + ": " + e.what());
  }
}

json load_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_text(arg, "inline JSON");
  std::ifstream in(arg);
  if (!in) throw InputError("", "cannot open " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), arg);
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Rational& q) { return to_string(q); }

json to_json(const QVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
  return a;
}

json to_json(const Polytope& p) {
  json vs = json::array();
  for (const auto& v : p.vertices()) vs.push_back(to_json(v));
  return {{"ambient_dim", p.ambient_dim()}, {"vertices", vs}};
}

json to_json(const VertexPartition& p) { return {{"blocks", p.blocks}}; }

json to_json(const GeneralizedNefPartition& g) {
  json parts = json::array();
  for (const auto& p : g.parts) parts.push_back(to_json(p));
  return {{"delta", to_json(g.delta)}, {"delta_polar", to_json(g.delta_polar)}, {"partition", to_json(g.partition)},
          {"parts", parts}};
}

json to_json(const GoodPair& p) { return {{"inner", to_json(p.inner)}, {"outer", to_json(p.outer)}}; }

json to_json(const ToricAmbient& a) {
  json rays = json::array();
  for (const auto& r : a.rays()) rays.push_back(ints(r));
  json j{{"rays", rays}};
  if (const auto f = fake_wps_data(a)) {
    j["weights"] = ints(f->weights);
    j["quotient_gradings"] = quotient_json(f->quotient_gradings);
  } else {
    j["quotient_gradings"] = quotient_json(a.quotient_gradings());
  }
  return j;
}

json to_json(const ClassGroupElement& c) { return {{"free", ints(c.free)}, {"torsion", ints(c.torsion)}}; }

json to_json(const PairMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) rows.push_back(ints(ZVector(m.entries.row(i).transpose())));
  auto labels = [](const std::vector<MatrixLabel>& ls) {
    json a = json::array();
    for (const auto& l : ls) a.push_back({{"part", l.part}, {"point", l.point ? to_json(*l.point) : json(nullptr)}});
    return a;
  };
  return {{"entries", rows}, {"row_labels", labels(m.row_labels)}, {"col_labels", labels(m.col_labels)}};
}

json system_json(const ToricAmbient& a, const CoxSystem& s, const std::vector<Monomial>& marked) {
  json sup = json::array();
  json polys = json::array();
  for (std::size_t i = 0; i < s.supports.size(); ++i) {
    sup.push_back(monomials_json(s.supports[i]));
    polys.push_back(polynomial(s.supports[i], marked.empty() ? Monomial{} : marked[i], "x"));
  }
  json j{{"ambient", to_json(a)}, {"supports", sup}};
  if (!marked.empty()) j["marked"] = monomials_json(marked);
  j["equations"] = polys;
  return j;
}

json to_json(const PairEquations& e) {
  json j = system_json(e.ambient, e.system, e.marked);
  json degs = json::array();
  for (const auto& d : e.degrees) degs.push_back(to_json(d));
  j["degrees"] = degs;
  return j;
}

json verdict_json(const CyReport& rep, const std::optional<S2Verdict>& s2) {
  const auto& qs = rep.quasismooth;
  json j;
  j["quasismooth"] = qs.status == QsStatus::budget_exceeded ? json(nullptr) : json(qs.status == QsStatus::quasismooth);
  j["well_formed"] = rep.well_formed.well_formed;
  j["cy"] = rep.cy;
  if (qs.witness) {
    j["witness"] = {{"indices", qs.witness->indices}};
  } else if (rep.well_formed.witness) {
    j["witness"] = {{"singular_cone", *rep.well_formed.witness}};
  } else {
    j["witness"] = nullptr;
  }
  json checks = json::object();
  for (const auto& c : rep.checks) checks[c.name] = {{"ok", c.ok}, {"detail", c.detail}};
  checks["strata"] = {{"count", qs.strata}, {"candidates", qs.candidates}};
  if (s2) checks["sufficient_s2"] = {{"status", to_string(s2->status)}, {"fake_wps", s2->fake_wps}};
  j["checks"] = checks;
  j["budget_exceeded"] = qs.status == QsStatus::budget_exceeded;
  return j;
}

json to_json(const ClassificationRow& row) {
  json eqs = json::array(), dual = json::array();
  for (std::size_t i = 0; i < row.system.supports.size(); ++i)
    eqs.push_back(polynomial(row.system.supports[i], row.marked[i], "x"));
  for (std::size_t i = 0; i < row.dual_system.supports.size(); ++i)
    dual.push_back(polynomial(row.dual_system.supports[i], row.dual_marked[i], "y"));
  json amb = nullptr;
  if (row.dual_ambient)
    amb = {{"weights", ints(row.dual_ambient->weights)},
           {"quotient_gradings", quotient_json(row.dual_ambient->quotient_gradings)}};
  json j;
  j["pair_id"] = row.pair_id;
  j["equations"] = eqs;
  j["marked"] = monomials_json(row.marked);
  j["outer_partition"] = to_json(row.pair.outer.partition);
  j["inner_partition"] = to_json(row.pair.inner.partition);
  j["quasismooth"] = row.quasismooth;
  j["irreducible"] = row.irreducible;
  j["dual_ambient"] = amb;
  j["dual_equations"] = dual;
  j["dual_quasismooth"] =
      row.dual_status == QsStatus::budget_exceeded ? json(nullptr) : json(row.dual_status == QsStatus::quasismooth);
  j["dual_irreducible"] = row.dual_irreducible;
  return j;
}

json to_json(const VectorClassification& c) {
  json rows = json::array();
  for (const auto& r : c.rows) rows.push_back(to_json(r));
  return {{"vector", vector_key(c.vector)},
          {"degrees", ints(std::vector<Integer>{c.vector.m, c.vector.n})},
          {"weights", ints(c.vector.weights)},
          {"budget_exceeded", c.budget_exceeded},
          {"stats",
           {{"outer_partitions", c.stats.outer_partitions},
            {"candidates", c.stats.candidates},
            {"simplex_candidates", c.stats.simplex_candidates},
            {"orbits", c.stats.orbits},
            {"good_pairs", c.stats.good_pairs},
            {"quasismooth_pairs", c.stats.quasismooth_pairs}}},
          {"rows", rows}};
}

std::string classification_csv(const json& vectors) {
  std::ostringstream os;
  os << "vector,pair_id,g1,g2,quasismooth,irreducible,dual_weights,dual_quotients,dual_g1,dual_g2,"
        "dual_quasismooth,dual_irreducible,budget_exceeded\n";
  auto join = [](const json& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : " ") + (x.is_string() ? x.get<std::string>() : x.dump());
    return s;
  };
  auto text = [](const json& x) { return x.is_null() ? std::string("null") : x.is_string() ? x.get<std::string>() : x.dump(); };
  auto eq = [](const json& xs, std::size_t i) { return i < xs.size() ? xs[i].get<std::string>() : std::string(); };
  for (const auto& c : vectors) {
    const std::string key = csv_field(c["vector"].get<std::string>());
    const std::string budget = c["budget_exceeded"].get<bool>() ? "true" : "false";
    if (c["rows"].empty()) {
      os << key << ",,,,,,,,,,,," << budget << "\n";
      continue;
    }
    for (const auto& r : c["rows"]) {
      std::string weights, quot;
      if (!r["dual_ambient"].is_null()) {
        weights = join(r["dual_ambient"]["weights"]);
        for (const auto& q : r["dual_ambient"]["quotient_gradings"])
          quot += (quot.empty() ? "" : " ") + ("1/" + text(q["order"]) + "(" + join(q["residues"]) + ")");
      }
      os << key << "," << r["pair_id"].dump() << "," << csv_field(eq(r["equations"], 0)) << ","
         << csv_field(eq(r["equations"], 1)) << "," << text(r["quasismooth"]) << "," << text(r["irreducible"]) << ","
         << weights << "," << csv_field(quot) << "," << csv_field(eq(r["dual_equations"], 0)) << ","
         << csv_field(eq(r["dual_equations"], 1)) << "," << text(r["dual_quasismooth"]) << ","
         << text(r["dual_irreducible"]) << "," << budget << "\n";
    }
  }
  return os.str();
}

Rational rational_from_json(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
  if (!j.is_string()) throw InputError(ptr, "expected a rational as \"p/q\" or an integer");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(ptr, e.what());
  }
}

Polytope polytope_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected a polytope object");
  const auto& dim_j = field(j, "ambient_dim", ptr);
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 0)
    throw InputError(at(ptr, "ambient_dim"), "expected a non-negative integer");
  const int n = dim_j.get<int>();
  try {
    if (j.contains("vertices")) {
      const auto& vs = array(j["vertices"], at(ptr, "vertices"));
      std::vector<QVector> pts;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        pts.push_back(qvector_from_json(vs[i], at(at(ptr, "vertices"), i)));
        if (pts.back().size() != n) throw InputError(at(at(ptr, "vertices"), i), "wrong dimension");
      }
      return Polytope::hull(n, std::move(pts));
    }
    const auto& ns = array(field(j, "normals", ptr), at(ptr, "normals"));
    const auto& os = array(field(j, "offsets", ptr), at(ptr, "offsets"));
    if (ns.size() != os.size()) throw InputError(at(ptr, "offsets"), "one offset per normal is needed");
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      hs.push_back({qvector_from_json(ns[i], at(at(ptr, "normals"), i)),
                    rational_from_json(os[i], at(at(ptr, "offsets"), i))});
      if (hs.back().normal.size() != n) throw InputError(at(at(ptr, "normals"), i), "wrong dimension");
    }
    return Polytope::from_inequalities(n, hs);
  } catch (const GeometryError& e) {
    throw InputError(ptr, e.what());
  }
}

VertexPartition partition_from_json(const json& j, const std::string& ptr) {
  const auto& bs = array(field(j, "blocks", ptr), at(ptr, "blocks"));
  VertexPartition p;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const auto& b = array(bs[i], at(at(ptr, "blocks"), i));
    Block block;
    for (std::size_t k = 0; k < b.size(); ++k) block.push_back(index_from_json(b[k], at(at(at(ptr, "blocks"), i), k)));
    p.blocks.push_back(std::move(block));
  }
  return p;
}

GeneralizedNefPartition gnp_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected a GNP object");
  try {
    if (j.contains("partition")) {
      const std::string key = j.contains("delta") ? "delta" : "polytope";
      const Polytope delta = polytope_from_json(field(j, key, ptr), at(ptr, key));
      const VertexPartition p = partition_from_json(j["partition"], at(ptr, "partition"));
      const auto check = is_gnp(delta, p);
      if (!check.is_gnp) throw InputError(at(ptr, "partition"), "partition does not define a GNP");
      return make_gnp(delta, p);
    }
    const auto& ps = array(field(j, "parts", ptr), at(ptr, "parts"));
    std::vector<Polytope> parts;
    for (std::size_t i = 0; i < ps.size(); ++i) parts.push_back(polytope_from_json(ps[i], at(at(ptr, "parts"), i)));
    return gnp_from_parts(parts);
  } catch (const GeometryError& e) {
    throw InputError(ptr, e.what());
  }
}

GoodPair goodpair_from_json(const json& j, const std::string& ptr) {
  auto inner = gnp_from_json(field(j, "inner", ptr), at(ptr, "inner"));
  auto outer = gnp_from_json(field(j, "outer", ptr), at(ptr, "outer"));
  if (inner.s() != outer.s()) throw InputError(ptr, "inner and outer have different numbers of parts");
  const auto c = is_good_pair(inner, outer);
  if (!c.ok) throw InputError(ptr, "not a good pair: " + c.diagnosis);
  return {std::move(inner), std::move(outer)};
}

ToricAmbient ambient_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw InputError(ptr, "expected an ambient object");
  try {
    if (j.contains("rays")) {
      const auto& rs = array(j["rays"], at(ptr, "rays"));
      std::vector<ZVector> rays;
      for (std::size_t i = 0; i < rs.size(); ++i) rays.push_back(zvector_from_json(rs[i], at(at(ptr, "rays"), i)));
      return ToricAmbient::from_rays(rays);
    }
    if (j.contains("quotient_gradings") && !j["quotient_gradings"].empty())
      throw InputError(at(ptr, "quotient_gradings"), "a fake weighted projective space needs its rays");
    const auto& ws = array(field(j, "weights", ptr), at(ptr, "weights"));
    std::vector<Integer> w;
    for (std::size_t i = 0; i < ws.size(); ++i) w.push_back(integer_from_json(ws[i], at(at(ptr, "weights"), i)));
    return weighted_projective_space(w);
  } catch (const GeometryError& e) {
    throw InputError(ptr, e.what());
  } catch (const ToricError& e) {
    throw InputError(ptr, e.what());
  }
}

std::vector<Monomial> monomials_from_json(const json& j, std::size_t r, const std::string& ptr) {
  array(j, ptr);
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& m = array(j[i], at(ptr, i));
    if (m.size() != r) throw InputError(at(ptr, i), "expected " + std::to_string(r) + " exponents");
    Monomial e;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (!m[k].is_number_integer() || m[k].get<long long>() < 0) throw InputError(at(at(ptr, i), k), "expected a non-negative exponent");
      e.push_back(m[k].get<int>());
    }
    out.push_back(std::move(e));
  }
  return out;
}

SystemInput system_from_json(const json& j, const std::string& ptr) {
  SystemInput in;
  in.ambient = ambient_from_json(field(j, "ambient", ptr), at(ptr, "ambient"));
  const std::size_t r = in.ambient.num_rays();
  const auto& sup = array(field(j, "supports", ptr), at(ptr, "supports"));
  for (std::size_t i = 0; i < sup.size(); ++i) {
    auto ms = monomials_from_json(sup[i], r, at(at(ptr, "supports"), i));
    if (ms.empty()) throw InputError(at(at(ptr, "supports"), i), "empty support");
    in.system.supports.push_back(std::move(ms));
  }
  if (j.contains("marked") && !j["marked"].is_null()) {
    in.marked = monomials_from_json(j["marked"], r, at(ptr, "marked"));
    if (in.marked.size() != in.system.supports.size())
      throw InputError(at(ptr, "marked"), "one marked monomial per equation is needed");
  }
  return in;
}

}  // namespace nefpart::io
