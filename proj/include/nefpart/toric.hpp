#pragma once

#include "nefpart/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nefpart {

struct ToricError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Monomial = std::vector<int>;  // exponent vector over the Cox variables

struct ClassGroupElement {
  std::vector<Integer> free;
  std::vector<Integer> torsion;  // residues mod the matching invariant factor
  bool operator==(const ClassGroupElement&) const = default;
};

struct QuotientGrading {
  Integer order;
  std::vector<Integer> residues;
  bool operator==(const QuotientGrading&) const = default;
};

struct TorusDivisor {
  std::vector<Rational> coefficients;
  bool is_integral() const;
};

class ToricAmbient {
 public:
  ToricAmbient() = default;

  // Normal fan of delta; rays are the lexicographically sorted vertices of its polar.
  static ToricAmbient from_polytope(const Polytope& delta);
  // Fan over the faces of conv(rays); ray order is preserved.
  static ToricAmbient from_rays(const std::vector<ZVector>& rays);

  int dim() const { return dim_; }
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<ZVector>& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& max_cones() const { return max_cones_; }
  const Polytope& anticanonical_polytope() const { return delta_; }
  const Polytope& fan_polytope() const { return delta_polar_; }
  ZMatrix ray_matrix() const;  // r x n, one ray per row
  std::size_t ray_index(const ZVector& ray) const;

  // Rows acting on the variables: free part, then one row per torsion factor.
  ZMatrix free_gradings() const;
  std::vector<QuotientGrading> quotient_gradings() const;
  std::vector<Integer> torsion_orders() const;

  ClassGroupElement class_of(const std::vector<Integer>& coefficients) const;
  ClassGroupElement class_of(const Monomial& m) const;
  ClassGroupElement class_of(const TorusDivisor& d) const;
  ClassGroupElement anticanonical_class() const;

  // Some u with <u, n_i> = rhs_i for all i, if it exists.
  std::optional<QVector> solve_pairing(const QVector& rhs) const;

  bool cone_contains(const std::vector<std::size_t>& indices) const;

 private:
  void finish();

  int dim_ = 0;
  std::vector<ZVector> rays_;
  std::vector<std::vector<std::size_t>> max_cones_;
  Polytope delta_, delta_polar_;
  ZMatrix class_map_;
  std::vector<Integer> factors_;  // invariant factors of the ray matrix
  std::vector<std::size_t> basis_rows_;
  QMatrix basis_inverse_;
};

ToricAmbient ambient_from_polytope(const Polytope& delta);
ToricAmbient weighted_projective_space(const std::vector<Integer>& weights);

struct FakeWpsData {
  std::vector<Integer> weights;
  std::vector<QuotientGrading> quotient_gradings;
};

std::optional<FakeWpsData> fake_wps_data(const ToricAmbient& a);

// True iff the ambient equals the fake weighted projective space with the given
// gradings, after renaming variable i of the ambient to variable perm[i].
bool grading_matches(const ToricAmbient& a, const std::vector<Integer>& weights,
                     const std::vector<QuotientGrading>& quotients, const std::vector<std::size_t>& perm);
std::optional<std::vector<std::size_t>> find_grading_match(const ToricAmbient& a, const std::vector<Integer>& weights,
                                                           const std::vector<QuotientGrading>& quotients);

Polytope divisor_polytope(const ToricAmbient& a, const TorusDivisor& d);

struct Homogenized {
  std::vector<Monomial> monomials;
  TorusDivisor divisor;
};

Homogenized homogenize(const ToricAmbient& a, const std::vector<QVector>& laurent_support);
std::vector<QVector> dehomogenize(const ToricAmbient& a, const std::vector<Monomial>& monomials,
                                  const TorusDivisor& d);
// Exponents <u, n_i> + a_i for lattice points u of the divisor polytope.
std::vector<Monomial> monomials_for_divisor(const ToricAmbient& a, const std::vector<QVector>& points,
                                            const TorusDivisor& d);

bool classes_equal(const ClassGroupElement& a, const ClassGroupElement& b);
ClassGroupElement add_classes(const ToricAmbient& a, const ClassGroupElement& x, const ClassGroupElement& y);

struct CoxSystem {
  std::vector<std::vector<Monomial>> supports;
  std::size_t num_vars() const { return supports.empty() || supports[0].empty() ? 0 : supports[0][0].size(); }
};

// One class per support; throws when a support is not homogeneous.
std::vector<ClassGroupElement> support_degrees(const ToricAmbient& a, const CoxSystem& system);
bool is_coprime(const std::vector<Monomial>& support);

TorusDivisor divisor_of(const Monomial& m);
std::string monomial_string(const Monomial& m, const std::string& var = "x", int base = 1);

}  // namespace nefpart
