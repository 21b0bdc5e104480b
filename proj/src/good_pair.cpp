#include "nefpart/good_pair.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace nefpart {

namespace {

std::vector<QVector> nonzero_vertices(const Polytope& p) {
  std::vector<QVector> out;
  for (const auto& v : p.vertices())
    if (!v.isZero()) out.push_back(v);
  return out;
}

std::vector<QVector> all_vertices(const std::vector<Polytope>& ps) {
  std::vector<QVector> out;
  for (const auto& p : ps) out.insert(out.end(), p.vertices().begin(), p.vertices().end());
  return out;
}

}  // namespace

GoodPairCheck is_good_pair(const GeneralizedNefPartition& inner, const GeneralizedNefPartition& outer) {
  if (inner.s() != outer.s()) throw GeometryError("good pair parts mismatch: s differs");
  if (inner.delta.ambient_dim() != outer.delta.ambient_dim()) throw GeometryError("good pair dimension mismatch");
  for (std::size_t i = 0; i < inner.s(); ++i)
    if (!is_lattice_polytope(inner.parts[i])) return {false, "inner part not lattice"};
  for (std::size_t i = 0; i < inner.s(); ++i)
    if (!outer.parts[i].contains(inner.parts[i])) return {false, "inner part not contained in outer part"};
  if (!is_lattice_polytope(inner.delta)) return {false, "inner polytope not lattice"};
  if (!contains_origin_in_interior(inner.delta)) return {false, "origin not interior to inner polytope"};
  if (!is_lattice_polytope(outer.delta_polar)) return {false, "outer polar not lattice"};
  return {true, {}};
}

GoodPair make_good_pair(GeneralizedNefPartition inner, GeneralizedNefPartition outer) {
  const auto c = is_good_pair(inner, outer);
  if (!c.ok) throw GeometryError(c.diagnosis);
  return {std::move(inner), std::move(outer)};
}

GoodPair dual_good_pair(const GoodPair& p) {
  GoodPair d{dual_gnp(p.outer), dual_gnp(p.inner)};
  if (!is_good_pair(d.inner, d.outer).ok) throw std::logic_error("dual of a good pair is not good");
  return d;
}

GoodPair saturated_pair(const GeneralizedNefPartition& outer) {
  std::vector<Polytope> parts;
  for (const auto& p : outer.parts) parts.push_back(convex_hull(lattice_points(p)));
  return make_good_pair(gnp_from_parts(parts), outer);
}

PairMatrix pair_matrix(const GoodPair& p) {
  const std::size_t s = p.s();
  PairMatrix m;
  for (std::size_t i = 0; i < s; ++i) {
    m.row_labels.push_back({i, std::nullopt});
    for (auto& v : nonzero_vertices(p.inner.parts[i])) m.row_labels.push_back({i, std::move(v)});
  }
  const auto& rays = p.outer.delta_polar.vertices();
  for (std::size_t j = 0; j < s; ++j) {
    m.col_labels.push_back({j, std::nullopt});
    auto block = p.outer.partition.blocks[j];
    std::sort(block.begin(), block.end());
    for (auto r : block) m.col_labels.push_back({j, rays[r]});
  }
  m.entries.resize(static_cast<Eigen::Index>(m.row_labels.size()), static_cast<Eigen::Index>(m.col_labels.size()));
  for (std::size_t a = 0; a < m.row_labels.size(); ++a)
    for (std::size_t b = 0; b < m.col_labels.size(); ++b) {
      const auto& r = m.row_labels[a];
      const auto& c = m.col_labels[b];
      Rational v = r.part == c.part ? 1 : 0;
      if (r.point && c.point) v += r.point->dot(*c.point);
      if (!is_integral(v)) throw std::logic_error("pair matrix entry is not an integer");
      m.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = numerator(v);
    }
  return m;
}

PairMatrix transpose(const PairMatrix& m) { return {m.entries.transpose(), m.col_labels, m.row_labels}; }

bool is_delsarte(const GoodPair& p) {
  const bool d = is_simplex(p.outer.delta) && is_simplex(convex_hull(all_vertices(p.inner.parts)));
  if (d) {
    // Matrix rows: the zero label plus the nonzero vertices of each part.
    std::size_t total = 0;
    for (const auto& part : p.inner.parts) total += nonzero_vertices(part).size() + 1;
    if (total != static_cast<std::size_t>(p.inner.delta.ambient_dim()) + p.s() + 1)
      throw std::logic_error("Delsarte pair with the wrong number of vertices");
  }
  return d;
}

PairEquations equations_from_pair(const GoodPair& p) {
  PairEquations e;
  e.ambient = ambient_from_polytope(p.outer.delta);
  const auto& rays = p.outer.delta_polar.vertices();
  for (std::size_t i = 0; i < p.s(); ++i) {
    TorusDivisor d{std::vector<Rational>(e.ambient.num_rays(), Rational(0))};
    Monomial marked(e.ambient.num_rays(), 0);
    for (auto r : p.outer.partition.blocks[i]) {
      const auto k = e.ambient.ray_index(to_integer(rays[r]));
      d.coefficients[k] = 1;
      marked[k] = 1;
    }
    auto support = monomials_for_divisor(e.ambient, lattice_points(p.inner.parts[i]), d);
    std::sort(support.begin(), support.end());
    e.system.supports.push_back(std::move(support));
    e.marked.push_back(std::move(marked));
    e.degrees.push_back(e.ambient.class_of(d));
    e.divisors.push_back(std::move(d));
  }
  return e;
}

GoodPair pair_from_equations(const ToricAmbient& a, const CoxSystem& system, const std::vector<Monomial>& marked) {
  using K = PairError::Kind;
  const std::size_t s = system.supports.size();
  if (marked.size() != s) throw PairError(K::marked_monomials, "no marked monomials: one per equation is needed");
  std::vector<int> total(a.num_rays(), 0);
  for (std::size_t i = 0; i < s; ++i) {
    const auto& sup = system.supports[i];
    if (std::find(sup.begin(), sup.end(), marked[i]) == sup.end())
      throw PairError(K::marked_monomials, "marked monomial " + monomial_string(marked[i]) + " is not in its support");
    if (marked[i].size() != a.num_rays()) throw PairError(K::marked_monomials, "marked monomial has wrong length");
    for (std::size_t k = 0; k < a.num_rays(); ++k) total[k] += marked[i][k];
  }
  if (std::any_of(total.begin(), total.end(), [](int t) { return t != 1; }))
    throw PairError(K::marked_monomials, "marked monomials do not multiply to the product of all variables");
  support_degrees(a, system);

  const Polytope& delta2 = a.anticanonical_polytope();
  const Polytope dp = polar(delta2);
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < s; ++i) {
    Block b;
    for (std::size_t k = 0; k < a.num_rays(); ++k)
      if (marked[i][k] == 1) b.push_back(dp.vertex_index(to_rational(a.rays()[k])));
    std::sort(b.begin(), b.end());
    blocks.push_back(std::move(b));
  }
  const VertexPartition outer_p{blocks};
  if (!is_gnp(delta2, outer_p).is_gnp) throw PairError(K::not_nef, "degrees of the equations are not nef");
  GeneralizedNefPartition outer{delta2, dp, outer_p, parts_from_partition(delta2, outer_p)};

  std::vector<Polytope> inner_parts;
  for (std::size_t i = 0; i < s; ++i)
    inner_parts.push_back(convex_hull(dehomogenize(a, system.supports[i], divisor_of(marked[i]))));
  GeneralizedNefPartition inner;
  try {
    inner = gnp_from_parts(inner_parts);
  } catch (const GeometryError& e) {
    throw PairError(K::assumption, std::string("inner polytopes: ") + e.what());
  }
  const auto c = is_good_pair(inner, outer);
  if (!c.ok) throw PairError(K::not_good, c.diagnosis);
  return {std::move(inner), std::move(outer)};
}

std::vector<std::vector<Monomial>> enumerate_marked_choices(const CoxSystem& system) {
  std::vector<std::vector<Monomial>> out;
  const std::size_t r = system.num_vars();
  if (system.supports.empty()) return out;
  std::vector<int> used(r, 0);
  std::vector<Monomial> current;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == system.supports.size()) {
      if (std::all_of(used.begin(), used.end(), [](int u) { return u == 1; })) out.push_back(current);
      return;
    }
    for (const auto& m : system.supports[i]) {
      bool ok = m.size() == r;
      for (std::size_t k = 0; k < r && ok; ++k) ok = m[k] == 0 || (m[k] == 1 && used[k] == 0);
      if (!ok) continue;
      for (std::size_t k = 0; k < r; ++k) used[k] += m[k];
      current.push_back(m);
      rec(i + 1);
      current.pop_back();
      for (std::size_t k = 0; k < r; ++k) used[k] -= m[k];
    }
  };
  rec(0);
  return out;
}

}  // namespace nefpart
