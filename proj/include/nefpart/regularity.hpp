#pragma once

#include "nefpart/toric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nefpart {

struct RegularityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Degree of a Cox variable of Z(E): a class of Z plus the bundle coordinate.
struct CayleyGrading {
  ClassGroupElement cl;
  int t_degree = 0;
};

// F = t_1 g_1 + ... + t_s g_s; variables x_1..x_r come first, then t_1..t_s.
struct CayleySystem {
  CoxSystem base;
  std::size_t r = 0, s = 0;
  std::vector<std::string> labels;
  std::vector<Monomial> support;
  std::vector<std::size_t> equation;  // the t carried by each monomial
  std::vector<CayleyGrading> gradings;

  std::size_t num_vars() const { return r + s; }
};

CayleySystem cayley_system(const ToricAmbient& a, const CoxSystem& system);

struct Stratum {
  std::vector<std::size_t> indices;  // sorted
  bool relevant = true;
  bool operator==(const Stratum&) const = default;
};

struct StrataEnumeration {
  std::vector<Stratum> strata;  // lexicographic order
  std::size_t candidates = 0;
  bool budget_exceeded = false;
};

// NEFPART_BUDGET when set, else 10^6.
std::size_t default_stratum_budget();

// Strata of the base ambient inside the base locus of a support over its Cox variables.
StrataEnumeration base_locus_strata(const ToricAmbient& a, const std::vector<Monomial>& support,
                                    std::size_t budget = default_stratum_budget());
// Strata of Z(E) inside the base locus of F.
StrataEnumeration base_locus_strata(const ToricAmbient& a, const CayleySystem& f,
                                    std::size_t budget = default_stratum_budget());

// Exponents over the variables outside the stratum; no points means the empty polytope.
struct RestrictedPolytope {
  std::size_t variable = 0;
  std::vector<ZVector> points;
  bool empty() const { return points.empty(); }
};

std::vector<RestrictedPolytope> restricted_polytopes(const std::vector<Monomial>& support,
                                                     const std::vector<std::size_t>& indices);
std::vector<RestrictedPolytope> restricted_polytopes(const CayleySystem& f, const Stratum& stratum);

struct Dependence {
  bool dependent = false;
  std::vector<std::size_t> witness;  // indices into the input list
};

// Empty entries are skipped.
Dependence is_dependent(const std::vector<std::vector<ZVector>>& point_sets);
Dependence is_dependent(const std::vector<RestrictedPolytope>& polytopes);
Dependence is_dependent(const std::vector<Polytope>& polytopes);

struct StratumCheck {
  Stratum stratum;
  std::vector<RestrictedPolytope> polytopes;
  Dependence dependence;
};

enum class QsStatus { quasismooth, not_quasismooth, budget_exceeded };

struct QsOptions {
  std::size_t budget = default_stratum_budget();
  unsigned jobs = 1;
  bool keep_checks = false;
};

struct QsVerdict {
  QsStatus status = QsStatus::quasismooth;
  std::optional<Stratum> witness;  // least failing stratum
  std::vector<StratumCheck> checks;
  std::size_t strata = 0, candidates = 0;
};

QsVerdict is_quasismooth_ci(const ToricAmbient& a, const CoxSystem& system, const QsOptions& opts = {});

enum class S2Status { sufficient_pass, inconclusive, necessary_fail };

struct S2Stratum {
  Stratum stratum;  // over x-variables only
  bool in_b1 = false, in_b2 = false;
  std::size_t k1 = 0, k2 = 0, k12 = 0;
  long d = 0;
  bool ok = false;
};

struct S2Verdict {
  S2Status status = S2Status::sufficient_pass;
  bool fake_wps = false;
  bool linear_cone = false;  // some equation has a monomial of degree one
  bool budget_exceeded = false;
  std::optional<Stratum> witness;
  std::vector<S2Stratum> strata;
};

S2Verdict qs_sufficient_s2(const ToricAmbient& a, const CoxSystem& system,
                           std::size_t budget = default_stratum_budget());

struct WellFormedness {
  bool well_formed = true;
  std::optional<std::vector<std::size_t>> witness;  // rays of a singular cone whose stratum lies in X
};

WellFormedness is_well_formed(const ToricAmbient& a, const CoxSystem& system);

struct CyCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CyReport {
  bool cy = false;
  std::vector<CyCheck> checks;
  QsVerdict quasismooth;
  WellFormedness well_formed;
};

CyReport is_cy_family(const ToricAmbient& a, const CoxSystem& system, const QsOptions& opts = {});

std::string to_string(QsStatus s);
std::string to_string(S2Status s);

}  // namespace nefpart
