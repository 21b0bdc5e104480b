#include "nefpart/classify.hpp"
#include "nefpart/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace nefpart;
using io::json;

namespace {

// 0 ok, 1 bad input, 2 mathematically false, 3 undecided within the budget.
enum Exit { ok = 0, input_error = 1, is_false = 2, undecided = 3 };

struct Options {
  std::string polytope, partition, goodpair, system, marked, checkpoint, output, vectors;
  bool stdin_input = false;
  std::optional<std::size_t> budget, parts;
  unsigned jobs = 1;
  std::string format = "json";
};

json read_stdin() {
  std::stringstream ss;
  ss << std::cin.rdbuf();
  return io::parse_text(ss.str(), "stdin");
}

std::size_t budget_of(const Options& o) { return o.budget.value_or(default_stratum_budget()); }

json header(const std::string& command) { return {{"format", io::format_tag}, {"command", command}}; }

void emit(const Options& o, const std::string& text) {
  if (o.output.empty())
    std::cout << text;
  else
    io::write_atomic(o.output, text);
}

void emit(const Options& o, json j) { emit(o, io::dump(j)); }

json merge(json head, const json& body) {
  for (const auto& [k, v] : body.items()) head[k] = v;
  return head;
}

// GNP from --polytope/--partition, or from a JSON document with delta and partition (or parts).
GeneralizedNefPartition gnp_input(const Options& o) {
  if (o.stdin_input) return io::gnp_from_json(read_stdin());
  if (o.polytope.empty()) throw io::InputError("", "--polytope (or --stdin) is required");
  const json p = io::load_argument(o.polytope);
  if (o.partition.empty()) return io::gnp_from_json(p);
  return io::gnp_from_json(json{{"delta", p}, {"partition", io::load_argument(o.partition)}});
}

json document_input(const Options& o, const std::string& path, const char* flag) {
  if (o.stdin_input) return read_stdin();
  if (path.empty()) throw io::InputError("", std::string(flag) + " (or --stdin) is required");
  return io::load_argument(path);
}

GoodPair pair_input(const Options& o) { return io::goodpair_from_json(document_input(o, o.goodpair, "--goodpair")); }

// A system document, or a good pair turned into its equations.
io::SystemInput system_input(const Options& o) {
  json j;
  if (o.stdin_input)
    j = read_stdin();
  else if (!o.system.empty())
    j = io::load_argument(o.system);
  else if (!o.goodpair.empty())
    j = io::load_argument(o.goodpair);
  else
    throw io::InputError("", "--system, --goodpair or --stdin is required");
  if (j.is_object() && j.contains("inner") && j.contains("outer")) {
    const auto e = equations_from_pair(io::goodpair_from_json(j));
    return {e.ambient, e.system, e.marked};
  }
  auto in = io::system_from_json(j);
  if (!o.marked.empty())
    in.marked = io::monomials_from_json(io::load_argument(o.marked), in.ambient.num_rays(), "");
  return in;
}

int cmd_gnp(const Options& o) {
  const json p = io::load_argument(o.polytope);
  const Polytope delta = io::polytope_from_json(p, "");
  const VertexPartition part = io::partition_from_json(io::load_argument(o.partition));
  GnpCheck c;
  try {
    c = is_gnp(delta, part);
  } catch (const std::invalid_argument& e) {
    throw io::InputError("/blocks", e.what());
  }
  json j = header("gnp");
  j["is_gnp"] = c.is_gnp;
  if (c.witness) j["witness"] = {{"part", c.witness->part}, {"facet", c.witness->facet}};
  if (c.is_gnp) {
    json cert = json::array();
    for (const auto& row : c.certificate) {
      json r = json::array();
      for (const auto& m : row) r.push_back(io::to_json(m));
      cert.push_back(r);
    }
    j["certificate"] = {{"facets", c.facets}, {"vertices", cert}};
    j["gnp"] = io::to_json(make_gnp(delta, part));
  }
  emit(o, j);
  return c.is_gnp ? ok : is_false;
}

int cmd_all_gnps(const Options& o) {
  const Polytope delta = io::polytope_from_json(document_input(o, o.polytope, "--polytope"), "");
  json list = json::array();
  for (const auto& g : all_gnps(delta, o.parts)) list.push_back(io::to_json(g));
  json j = header("all-gnps");
  j["count"] = list.size();
  j["gnps"] = list;
  emit(o, j);
  return ok;
}

int cmd_dual(const Options& o) {
  json in;
  if (!o.goodpair.empty())
    in = io::load_argument(o.goodpair);
  else if (o.stdin_input)
    in = read_stdin();
  if (in.is_object() && in.contains("inner")) {
    emit(o, merge(header("dual"), io::to_json(dual_good_pair(io::goodpair_from_json(in)))));
    return ok;
  }
  const auto g = in.is_null() ? gnp_input(o) : io::gnp_from_json(in);
  emit(o, merge(header("dual"), io::to_json(dual_gnp(g))));
  return ok;
}

int cmd_irreducible(const Options& o) {
  const auto g = gnp_input(o);
  const auto irr = is_irreducible(g);
  json j = header("irreducible");
  j["irreducible"] = irr.irreducible;
  j["witness"] = irr.irreducible ? json(nullptr) : json(irr.witness);
  if (!irr.irreducible && is_lattice_polytope(g.delta)) {
    json sums = json::array();
    for (const auto& d : decompose_direct_sum(g)) sums.push_back({{"parts", d.parts}});
    j["summands"] = sums;
  }
  emit(o, j);
  return irr.irreducible ? ok : is_false;
}

int cmd_goodpair(const Options& o) {
  const json in = document_input(o, o.goodpair, "--goodpair");
  const auto inner = io::gnp_from_json(in.contains("inner") ? in["inner"] : json(), "/inner");
  const auto outer = io::gnp_from_json(in.contains("outer") ? in["outer"] : json(), "/outer");
  if (inner.s() != outer.s()) throw io::InputError("", "inner and outer have different numbers of parts");
  const auto c = is_good_pair(inner, outer);
  json j = header("goodpair");
  j["good"] = c.ok;
  j["diagnosis"] = c.diagnosis;
  if (c.ok) j["delsarte"] = is_delsarte(GoodPair{inner, outer});
  emit(o, j);
  return c.ok ? ok : is_false;
}

int cmd_matrix(const Options& o) {
  const auto m = pair_matrix(pair_input(o));
  if (o.format == "csv") {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
      for (Eigen::Index k = 0; k < m.entries.cols(); ++k) os << (k ? "," : "") << m.entries(i, k);
      os << "\n";
    }
    emit(o, os.str());
  } else {
    emit(o, merge(header("matrix"), io::to_json(m)));
  }
  return ok;
}

int cmd_eqs(const Options& o) {
  emit(o, merge(header("eqs"), io::to_json(equations_from_pair(pair_input(o)))));
  return ok;
}

int cmd_eqs_to_pol(const Options& o) {
  auto in = system_input(o);
  if (in.marked.empty()) {
    const auto choices = enumerate_marked_choices(in.system);
    if (choices.size() != 1)
      throw io::InputError("/marked", std::to_string(choices.size()) + " marked-monomial choices; pass --marked");
    in.marked = choices[0];
  }
  try {
    emit(o, merge(header("eqs-to-pol"), io::to_json(pair_from_equations(in.ambient, in.system, in.marked))));
  } catch (const PairError& e) {
    if (e.kind == PairError::Kind::marked_monomials) throw io::InputError("/marked", e.what());
    json j = header("eqs-to-pol");
    j["good"] = false;
    j["diagnosis"] = e.what();
    emit(o, j);
    return is_false;
  }
  return ok;
}

int verdict_command(const Options& o, const std::string& name, bool cy) {
  const auto in = system_input(o);
  const auto rep = is_cy_family(in.ambient, in.system, QsOptions{budget_of(o), o.jobs, false});
  std::optional<S2Verdict> s2;
  if (in.system.supports.size() == 2 && fake_wps_data(in.ambient)) s2 = qs_sufficient_s2(in.ambient, in.system, budget_of(o));
  emit(o, merge(header(name), io::verdict_json(rep, s2)));
  if (rep.quasismooth.status == QsStatus::budget_exceeded) return undecided;
  if (cy) return rep.cy ? ok : is_false;
  return rep.quasismooth.status == QsStatus::quasismooth ? ok : is_false;
}

std::vector<K3Vector> read_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::InputError("", "cannot open " + path);
  std::vector<K3Vector> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r(),") == std::string::npos) continue;
    try {
      out.push_back(parse_vector(line));
    } catch (const std::invalid_argument& e) {
      throw io::InputError("", path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
  return out;
}

std::map<std::string, json> read_checkpoint(const std::string& path) {
  std::map<std::string, json> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      done[j.at("key").get<std::string>()] = j.at("record");
    } catch (const json::exception&) {
      // a torn last line from an interrupted run
    }
  }
  return done;
}

void write_checkpoint(const std::string& path, const std::map<std::string, json>& done) {
  std::string text;
  for (const auto& [k, v] : done) text += json{{"key", k}, {"record", v}}.dump() + "\n";
  io::write_atomic(path, text);
}

int cmd_classify_k3(const Options& o) {
  const auto vectors = read_vectors(o.vectors);
  std::map<std::string, json> done;
  if (!o.checkpoint.empty()) done = read_checkpoint(o.checkpoint);
  json records = json::array();
  std::set<std::string> seen;
  for (const auto& v : vectors) {
    const auto key = vector_key(v);
    if (!seen.insert(key).second) continue;
    if (!done.count(key)) {
      VectorClassification c;
      try {
        c = classify_vector(v, ClassifyOptions{budget_of(o), o.jobs});
      } catch (const ToricError& e) {
        throw io::InputError("", key + ": " + e.what());
      }
      done[key] = io::to_json(c);
      if (!o.checkpoint.empty()) write_checkpoint(o.checkpoint, done);
    }
    records.push_back(done[key]);
  }
  if (o.format == "csv") {
    emit(o, io::classification_csv(records));
  } else {
    json j = header("classify-k3");
    j["vectors"] = records;
    emit(o, j);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized nef partitions, good pairs and quasismooth complete intersections"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("-o,--output", o.output, "write the result atomically to this file");
    c->add_flag("--stdin", o.stdin_input, "read the main input document from standard input");
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto gnp_flags = [&](CLI::App* c) {
    c->add_option("--polytope", o.polytope, "polytope JSON (file or inline)");
    c->add_option("--partition", o.partition, "partition JSON (file or inline)");
  };
  auto pair_flags = [&](CLI::App* c) { c->add_option("--goodpair", o.goodpair, "good pair JSON (file or inline)"); };
  auto system_flags = [&](CLI::App* c) {
    c->add_option("--system", o.system, "system JSON with ambient and supports");
    c->add_option("--marked", o.marked, "marked monomials as a JSON list of exponent vectors");
  };
  auto run_flags = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "stratum budget (default NEFPART_BUDGET or 1000000)");
    c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  std::map<CLI::App*, std::function<int()>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<int()> f) {
    auto* c = app.add_subcommand(name, help);
    common(c);
    handlers[c] = std::move(f);
    return c;
  };

  auto* gnp = sub("gnp", "check that a partition defines a generalized nef partition", [&] { return cmd_gnp(o); });
  gnp_flags(gnp);
  gnp->get_option("--polytope")->required();
  gnp->get_option("--partition")->required();

  auto* all = sub("all-gnps", "list all generalized nef partitions of a polytope", [&] { return cmd_all_gnps(o); });
  gnp_flags(all);
  all->add_option("--parts", o.parts, "number of parts");

  auto* dual = sub("dual", "dual GNP or dual good pair", [&] { return cmd_dual(o); });
  gnp_flags(dual);
  pair_flags(dual);

  auto* irr = sub("irreducible", "irreducibility of a GNP", [&] { return cmd_irreducible(o); });
  gnp_flags(irr);

  pair_flags(sub("goodpair", "check a good pair", [&] { return cmd_goodpair(o); }));
  pair_flags(sub("matrix", "matrix of a good pair", [&] { return cmd_matrix(o); }));
  pair_flags(sub("eqs", "equations of the family of a good pair", [&] { return cmd_eqs(o); }));
  system_flags(sub("eqs-to-pol", "good pair from equations and marked monomials", [&] { return cmd_eqs_to_pol(o); }));

  for (auto [name, help, cy] : {std::tuple{"qsci", "quasismoothness of a complete intersection family", false},
                                std::tuple{"iscy", "Calabi-Yau hypotheses for a family", true}}) {
    const bool is_cy = cy;
    const std::string nm = name;
    auto* c = sub(name, help, [&o, nm, is_cy] { return verdict_command(o, nm, is_cy); });
    system_flags(c);
    pair_flags(c);
    run_flags(c);
  }

  auto* k3 = sub("classify-k3", "Delsarte quasismooth good pairs of codimension two in P(w)",
                 [&] { return cmd_classify_k3(o); });
  k3->add_option("vectors", o.vectors, "file with one vector m,n,w1,...,w5 per line")->required();
  k3->add_option("--checkpoint", o.checkpoint, "JSON-lines file of finished vectors; resumes from it");
  run_flags(k3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : input_error;
  }
  for (auto& [c, f] : handlers) {
    if (!c->parsed()) continue;
    try {
      return f();
    } catch (const io::InputError& e) {
      std::cerr << "nefpart: " << e.what() << "\n";
      return input_error;
    } catch (const std::invalid_argument& e) {
      std::cerr << "nefpart: " << e.what() << "\n";
      return input_error;
    } catch (const std::exception& e) {
      std::cerr << "nefpart: internal error: " << e.what() << "\n";
      return input_error;
    }
  }
  return input_error;
}
