#pragma once

#include "nefpart/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace nefpart {

struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnboundedError : GeometryError {
  using GeometryError::GeometryError;
};

// <m, normal> >= -offset; on an equation the relation is equality.
struct Halfspace {
  QVector normal;
  Rational offset;

  Rational evaluate(const QVector& m) const { return m.dot(normal) + offset; }
  bool operator==(const Halfspace& o) const { return offset == o.offset && same_vector(normal, o.normal); }
};

bool halfspace_less(const Halfspace& a, const Halfspace& b);

struct VForm {
  int ambient_dim = 0;
  std::vector<QVector> vertices;
};

// Equations appear as pairs of opposite inequalities.
struct HForm {
  int ambient_dim = 0;
  std::vector<Halfspace> inequalities;
};

class Polytope {
 public:
  Polytope() = default;

  static Polytope hull(int ambient_dim, std::vector<QVector> points);
  static Polytope from_inequalities(int ambient_dim, const std::vector<Halfspace>& inequalities);
  static Polytope empty(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }
  bool is_empty() const { return vertices_.empty(); }
  bool is_full_dimensional() const { return dim_ == ambient_dim_; }

  // Lexicographically sorted.
  const std::vector<QVector>& vertices() const { return vertices_; }
  // Irredundant facet inequalities, normals primitive and orthogonal to the affine hull.
  const std::vector<Halfspace>& facets() const { return facets_; }
  // Affine hull, one row per codimension.
  const std::vector<Halfspace>& equations() const { return equations_; }

  VForm v_form() const { return {ambient_dim_, vertices_}; }
  HForm h_form() const;

  bool contains(const QVector& x) const;
  bool contains(const Polytope& other) const;
  std::size_t vertex_index(const QVector& v) const;  // npos when absent

  bool operator==(const Polytope& o) const {
    return ambient_dim_ == o.ambient_dim_ && vertices_.size() == o.vertices_.size() &&
           std::equal(vertices_.begin(), vertices_.end(), o.vertices_.begin(),
                      [](const QVector& a, const QVector& b) { return same_vector(a, b); });
  }
  bool operator!=(const Polytope& o) const { return !(*this == o); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  int ambient_dim_ = 0;
  int dim_ = -1;
  std::vector<QVector> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equations_;
};

Polytope convex_hull(const std::vector<QVector>& points);
HForm v_to_h(const VForm& v);
VForm h_to_v(const HForm& h);

Polytope polar(const Polytope& p);
Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope minkowski_sum(std::span<const Polytope> ps);
Polytope translate(const Polytope& p, const QVector& t);

std::vector<QVector> lattice_points(const Polytope& p);
std::vector<QVector> interior_lattice_points(const Polytope& p);
std::size_t interior_lattice_count(const Polytope& p);

bool relative_interior_contains(const Polytope& p, const QVector& x);

struct PolytopePredicates {
  bool is_lattice = false;
  bool is_canonical = false;
  bool is_reflexive = false;
  bool is_qfano = false;
};

PolytopePredicates polytope_predicates(const Polytope& p);
bool is_lattice_polytope(const Polytope& p);
bool contains_origin_in_interior(const Polytope& p);
bool is_simplex(const Polytope& p);

struct FaceDescriptor {
  std::vector<std::size_t> vertex_indices;
  int dim = 0;
  bool operator==(const FaceDescriptor&) const = default;
};

std::vector<FaceDescriptor> faces(const Polytope& p, int k);
std::vector<FaceDescriptor> all_faces(const Polytope& p);

}  // namespace nefpart
