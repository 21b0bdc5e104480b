#include "nefpart/toric.hpp"

#include "nefpart/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nefpart {

namespace {

Integer mod_positive(const Integer& a, const Integer& k) {
  Integer r = a % k;
  if (r < 0) r += k;
  return r;
}

Integer pairing(const ZVector& u, const ZVector& n) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) s += u(i) * n(i);
  return s;
}

// Order of the subgroup of (Z/k_1 x ... x Z/k_t) generated by the image of ker(w).
Integer image_order(const std::vector<Integer>& weights, const std::vector<QuotientGrading>& qs) {
  const auto r = static_cast<Eigen::Index>(weights.size());
  ZMatrix w(1, r);
  for (Eigen::Index i = 0; i < r; ++i) w(0, i) = weights[static_cast<std::size_t>(i)];
  const ZMatrix basis = integer_kernel(w);
  const auto t = static_cast<Eigen::Index>(qs.size());
  if (t == 0) return 1;
  ZMatrix q(t, r);
  for (Eigen::Index j = 0; j < t; ++j)
    for (Eigen::Index i = 0; i < r; ++i) q(j, i) = qs[static_cast<std::size_t>(j)].residues[static_cast<std::size_t>(i)];
  ZMatrix m(t, basis.cols() + t);
  m.leftCols(basis.cols()) = q * basis;
  m.rightCols(t).setZero();
  Integer group = 1;
  for (Eigen::Index j = 0; j < t; ++j) {
    m(j, basis.cols() + j) = qs[static_cast<std::size_t>(j)].order;
    group *= qs[static_cast<std::size_t>(j)].order;
  }
  Integer quotient = 1;
  for (const auto& d : smith_normal_form(m).invariant_factors()) quotient *= d;
  return group / quotient;
}

QuotientGrading canonical_grading(const std::vector<Integer>& weights, QuotientGrading g) {
  const Integer k = g.order;
  for (auto& x : g.residues) x = mod_positive(x, k);
  if (!g.residues.empty() && g.residues[0] != 0) {
    // Shift by c * weights so that the first residue vanishes, when possible.
    for (Integer c = 1; c < k; ++c)
      if (mod_positive(g.residues[0] + c * weights[0], k) == 0) {
        for (std::size_t i = 0; i < g.residues.size(); ++i) g.residues[i] = mod_positive(g.residues[i] + c * weights[i], k);
        break;
      }
  }
  QuotientGrading best = g;
  for (Integer u = 2; u < k; ++u) {
    if (gcd(u, k) != 1) continue;
    QuotientGrading h = g;
    for (auto& x : h.residues) x = mod_positive(x * u, k);
    if (h.residues < best.residues) best = h;
  }
  return best;
}

}  // namespace

bool TorusDivisor::is_integral() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& q) { return nefpart::is_integral(q); });
}

ToricAmbient ToricAmbient::from_polytope(const Polytope& delta) {
  if (!contains_origin_in_interior(delta)) throw ToricError("polytope must be full-dimensional with the origin inside");
  ToricAmbient a;
  a.dim_ = delta.ambient_dim();
  a.delta_ = delta;
  a.delta_polar_ = polar(delta);
  for (const auto& v : a.delta_polar_.vertices()) {
    if (!is_integral(v) || !is_primitive(to_integer(v))) throw ToricError("polar polytope is not Q-Fano");
    a.rays_.push_back(to_integer(v));
  }
  a.finish();
  return a;
}

ToricAmbient ToricAmbient::from_rays(const std::vector<ZVector>& rays) {
  if (rays.empty()) throw ToricError("no rays");
  std::vector<QVector> pts;
  for (const auto& r : rays) {
    if (!is_primitive(r)) throw ToricError("ray is not primitive");
    pts.push_back(to_rational(r));
  }
  ToricAmbient a;
  a.dim_ = static_cast<int>(rays.front().size());
  a.delta_polar_ = convex_hull(pts);
  if (!contains_origin_in_interior(a.delta_polar_)) throw ToricError("rays do not span a complete polytope fan");
  if (a.delta_polar_.vertices().size() != rays.size()) throw ToricError("every ray must be a vertex of conv(rays)");
  a.delta_ = polar(a.delta_polar_);
  a.rays_ = rays;
  a.finish();
  return a;
}

void ToricAmbient::finish() {
  for (const auto& m : delta_.vertices()) {
    std::vector<std::size_t> cone;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (m.dot(to_rational(rays_[i])) == -1) cone.push_back(i);
    max_cones_.push_back(std::move(cone));
  }
  const ZMatrix r = ray_matrix();
  const auto s = smith_normal_form(r);
  class_map_ = s.u;
  factors_ = s.invariant_factors();

  std::vector<QVector> chosen;
  for (std::size_t i = 0; i < rays_.size() && static_cast<int>(chosen.size()) < dim_; ++i) {
    chosen.push_back(to_rational(rays_[i]));
    if (rank<Rational>(rows_to_matrix(chosen, dim_)) < static_cast<Eigen::Index>(chosen.size()))
      chosen.pop_back();
    else
      basis_rows_.push_back(i);
  }
  const QMatrix b = rows_to_matrix(chosen, dim_);
  QMatrix aug(dim_, 2 * dim_);
  aug << b, QMatrix::Identity(dim_, dim_);
  basis_inverse_ = reduced_row_echelon(aug).reduced.rightCols(dim_);
}

ZMatrix ToricAmbient::ray_matrix() const {
  ZMatrix m(static_cast<Eigen::Index>(rays_.size()), dim_);
  for (std::size_t i = 0; i < rays_.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rays_[i].transpose();
  return m;
}

std::size_t ToricAmbient::ray_index(const ZVector& ray) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (same_vector(rays_[i], ray)) return i;
  return Polytope::npos;
}

ZMatrix ToricAmbient::free_gradings() const {
  const auto r = static_cast<Eigen::Index>(rays_.size());
  return class_map_.bottomRows(r - dim_);
}

std::vector<QuotientGrading> ToricAmbient::quotient_gradings() const {
  std::vector<QuotientGrading> out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] == 1) continue;
    QuotientGrading g{factors_[i], {}};
    for (Eigen::Index j = 0; j < class_map_.cols(); ++j)
      g.residues.push_back(mod_positive(class_map_(static_cast<Eigen::Index>(i), j), factors_[i]));
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Integer> ToricAmbient::torsion_orders() const {
  std::vector<Integer> out;
  for (const auto& d : factors_)
    if (d != 1) out.push_back(d);
  return out;
}

ClassGroupElement ToricAmbient::class_of(const std::vector<Integer>& coefficients) const {
  if (coefficients.size() != rays_.size()) throw ToricError("coefficient vector has wrong length");
  ZVector a(static_cast<Eigen::Index>(coefficients.size()));
  for (std::size_t i = 0; i < coefficients.size(); ++i) a(static_cast<Eigen::Index>(i)) = coefficients[i];
  const ZVector ua = class_map_ * a;
  ClassGroupElement c;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i] != 1) c.torsion.push_back(mod_positive(ua(static_cast<Eigen::Index>(i)), factors_[i]));
  for (Eigen::Index i = dim_; i < ua.size(); ++i) c.free.push_back(ua(i));
  return c;
}

ClassGroupElement ToricAmbient::class_of(const Monomial& m) const {
  return class_of(std::vector<Integer>(m.begin(), m.end()));
}

ClassGroupElement ToricAmbient::class_of(const TorusDivisor& d) const {
  if (!d.is_integral()) throw ToricError("class of a non-integral divisor");
  std::vector<Integer> c;
  for (const auto& q : d.coefficients) c.push_back(numerator(q));
  return class_of(c);
}

ClassGroupElement ToricAmbient::anticanonical_class() const {
  return class_of(std::vector<Integer>(rays_.size(), Integer(1)));
}

std::optional<QVector> ToricAmbient::solve_pairing(const QVector& rhs) const {
  QVector sub(dim_);
  for (int i = 0; i < dim_; ++i) sub(i) = rhs(static_cast<Eigen::Index>(basis_rows_[static_cast<std::size_t>(i)]));
  QVector u = basis_inverse_ * sub;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (u.dot(to_rational(rays_[i])) != rhs(static_cast<Eigen::Index>(i))) return std::nullopt;
  return u;
}

bool ToricAmbient::cone_contains(const std::vector<std::size_t>& indices) const {
  return std::any_of(max_cones_.begin(), max_cones_.end(), [&](const std::vector<std::size_t>& cone) {
    return std::includes(cone.begin(), cone.end(), indices.begin(), indices.end());
  });
}

ToricAmbient ambient_from_polytope(const Polytope& delta) { return ToricAmbient::from_polytope(delta); }

ToricAmbient weighted_projective_space(const std::vector<Integer>& weights) {
  ZVector w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) throw ToricError("weights must be positive");
    w(static_cast<Eigen::Index>(i)) = weights[i];
  }
  if (!is_primitive(w)) throw ToricError("weights must be coprime");
  const ZMatrix u = unimodular_completion(w);
  std::vector<ZVector> rays;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const ZVector col = u.col(i);
    ZVector n = col.tail(w.size() - 1);
    if (!is_primitive(n)) throw ToricError("weights are not well-formed");
    rays.push_back(n);
  }
  return ToricAmbient::from_rays(rays);
}

std::optional<FakeWpsData> fake_wps_data(const ToricAmbient& a) {
  if (a.num_rays() != static_cast<std::size_t>(a.dim()) + 1) return std::nullopt;
  const ZMatrix k = integer_kernel(ZMatrix(a.ray_matrix().transpose()));
  ZVector w = primitive_integer(ZVector(k.col(0)));
  if (w(0) < 0) w = -w;
  FakeWpsData d;
  for (Eigen::Index i = 0; i < w.size(); ++i) d.weights.push_back(w(i));
  for (auto& g : a.quotient_gradings()) d.quotient_gradings.push_back(canonical_grading(d.weights, g));
  return d;
}

bool grading_matches(const ToricAmbient& a, const std::vector<Integer>& weights,
                     const std::vector<QuotientGrading>& quotients, const std::vector<std::size_t>& perm) {
  const std::size_t r = a.num_rays();
  if (weights.size() != r || perm.size() != r || r != static_cast<std::size_t>(a.dim()) + 1) return false;
  for (const auto& q : quotients)
    if (q.residues.size() != r) return false;
  ZVector w(static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < r; ++i) w(static_cast<Eigen::Index>(i)) = weights[i];
  if (!is_primitive(w)) return false;
  for (int j = 0; j < a.dim(); ++j) {
    Integer total = 0;
    std::vector<Integer> res(quotients.size(), Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
      const Integer c = a.rays()[i](j);
      total += weights[perm[i]] * c;
      for (std::size_t t = 0; t < quotients.size(); ++t) res[t] += quotients[t].residues[perm[i]] * c;
    }
    if (total != 0) return false;
    for (std::size_t t = 0; t < quotients.size(); ++t)
      if (res[t] % quotients[t].order != 0) return false;
  }
  Integer ours = 1;
  for (const auto& d : a.torsion_orders()) ours *= d;
  return ours == image_order(weights, quotients);
}

std::optional<std::vector<std::size_t>> find_grading_match(const ToricAmbient& a, const std::vector<Integer>& weights,
                                                           const std::vector<QuotientGrading>& quotients) {
  const auto data = fake_wps_data(a);
  if (!data || weights.size() != a.num_rays()) return std::nullopt;
  std::vector<std::size_t> perm(a.num_rays());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i) ok = data->weights[i] == weights[perm[i]];
    if (ok && grading_matches(a, weights, quotients, perm)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

Polytope divisor_polytope(const ToricAmbient& a, const TorusDivisor& d) {
  if (d.coefficients.size() != a.num_rays()) throw ToricError("divisor has wrong length");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < a.num_rays(); ++i) hs.push_back({to_rational(a.rays()[i]), d.coefficients[i]});
  return Polytope::from_inequalities(a.dim(), hs);
}

Homogenized homogenize(const ToricAmbient& a, const std::vector<QVector>& laurent_support) {
  if (laurent_support.empty()) throw ToricError("empty support");
  Homogenized h;
  h.divisor.coefficients.assign(a.num_rays(), Rational(0));
  std::vector<Integer> mins(a.num_rays());
  std::vector<ZVector> pts;
  for (const auto& u : laurent_support) pts.push_back(to_integer(u));
  for (std::size_t i = 0; i < a.num_rays(); ++i) {
    mins[i] = pairing(pts[0], a.rays()[i]);
    for (const auto& u : pts) mins[i] = std::min(mins[i], pairing(u, a.rays()[i]));
    h.divisor.coefficients[i] = Rational(-mins[i]);
  }
  for (const auto& u : pts) {
    Monomial m;
    for (std::size_t i = 0; i < a.num_rays(); ++i) m.push_back((pairing(u, a.rays()[i]) - mins[i]).convert_to<int>());
    h.monomials.push_back(std::move(m));
  }
  return h;
}

std::vector<QVector> dehomogenize(const ToricAmbient& a, const std::vector<Monomial>& monomials, const TorusDivisor& d) {
  std::vector<QVector> out;
  for (const auto& m : monomials) {
    if (m.size() != a.num_rays()) throw ToricError("monomial has wrong length");
    QVector rhs(static_cast<Eigen::Index>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = Rational(m[i]) - d.coefficients[i];
    auto u = a.solve_pairing(rhs);
    if (!u || !is_integral(*u)) throw ToricError("degree mismatch: monomial " + monomial_string(m) + " is not of degree [D]");
    out.push_back(std::move(*u));
  }
  return out;
}

std::vector<Monomial> monomials_for_divisor(const ToricAmbient& a, const std::vector<QVector>& points,
                                            const TorusDivisor& d) {
  std::vector<Monomial> out;
  for (const auto& u : points) {
    Monomial m;
    for (std::size_t i = 0; i < a.num_rays(); ++i) {
      const Rational e = u.dot(to_rational(a.rays()[i])) + d.coefficients[i];
      if (!is_integral(e) || e < 0) throw ToricError("point outside the divisor polytope");
      m.push_back(numerator(e).convert_to<int>());
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool classes_equal(const ClassGroupElement& a, const ClassGroupElement& b) { return a == b; }

ClassGroupElement add_classes(const ToricAmbient& a, const ClassGroupElement& x, const ClassGroupElement& y) {
  ClassGroupElement z = x;
  for (std::size_t i = 0; i < z.free.size(); ++i) z.free[i] += y.free[i];
  const auto orders = a.torsion_orders();
  for (std::size_t i = 0; i < z.torsion.size(); ++i) z.torsion[i] = mod_positive(z.torsion[i] + y.torsion[i], orders[i]);
  return z;
}

std::vector<ClassGroupElement> support_degrees(const ToricAmbient& a, const CoxSystem& system) {
  std::vector<ClassGroupElement> out;
  for (std::size_t i = 0; i < system.supports.size(); ++i) {
    const auto& s = system.supports[i];
    if (s.empty()) throw ToricError("support " + std::to_string(i) + " is empty");
    const auto c = a.class_of(s[0]);
    for (const auto& m : s)
      if (!(a.class_of(m) == c)) throw ToricError("support " + std::to_string(i) + " is not homogeneous");
    out.push_back(c);
  }
  return out;
}

bool is_coprime(const std::vector<Monomial>& support) {
  if (support.empty()) return true;
  for (std::size_t v = 0; v < support[0].size(); ++v)
    if (std::all_of(support.begin(), support.end(), [&](const Monomial& m) { return m[v] > 0; })) return false;
  return true;
}

TorusDivisor divisor_of(const Monomial& m) {
  TorusDivisor d;
  for (int e : m) d.coefficients.push_back(Rational(e));
  return d;
}

std::string monomial_string(const Monomial& m, const std::string& var, int base) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << var << (static_cast<int>(i) + base);
    if (m[i] > 1) os << '^' << m[i];
  }
  if (first) os << '1';
  return os.str();
}

}  // namespace nefpart
