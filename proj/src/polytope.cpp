#include "nefpart/polytope.hpp"

#include "nefpart/double_description.hpp"
#include "nefpart/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <set>

namespace nefpart {

namespace {

ZVector integer_row(const Rational& head, const QVector& tail) {
  QVector row(tail.size() + 1);
  row(0) = head;
  row.tail(tail.size()) = tail;
  return primitive_integer(row);
}

void sort_unique(std::vector<QVector>& pts) {
  std::sort(pts.begin(), pts.end(), LexLess{});
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const QVector& a, const QVector& b) { return same_vector(a, b); }),
            pts.end());
}

// Canonical rows for the affine hull spanned by lineality vectors (b, a).
std::vector<Halfspace> canonical_equations(const std::vector<ZVector>& lin, Eigen::Index n) {
  std::vector<Halfspace> eqs;
  if (lin.empty()) return eqs;
  QMatrix m(static_cast<Eigen::Index>(lin.size()), n + 1);
  for (std::size_t i = 0; i < lin.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < n; ++j) m(r, j) = Rational(lin[i](j + 1));
    m(r, n) = Rational(lin[i](0));
  }
  const auto e = reduced_row_echelon(m);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    const ZVector z = primitive_integer(QVector(e.reduced.row(static_cast<Eigen::Index>(i)).transpose()));
    eqs.push_back({to_rational(ZVector(z.head(n))), Rational(z(n))});
  }
  return eqs;
}

QVector project_off(const QVector& a, const std::vector<Halfspace>& eqs) {
  if (eqs.empty()) return a;
  const Eigen::Index n = a.size();
  QMatrix nm(static_cast<Eigen::Index>(eqs.size()), n);
  for (std::size_t i = 0; i < eqs.size(); ++i) nm.row(static_cast<Eigen::Index>(i)) = eqs[i].normal.transpose();
  const QMatrix gram = nm * nm.transpose();
  const QVector rhs = nm * a;
  const auto coeff = solve<Rational>(gram, rhs);
  return a - nm.transpose() * (*coeff);
}

template <typename Int>
struct LatticeEnumerator {
  using value_type = Int;
  std::vector<std::vector<Int>> a;  // constraint rows
  std::vector<Int> c;               // a x >= c, or a x == c for equations
  std::vector<bool> is_eq;
  std::vector<Int> lo, hi;
  std::vector<std::vector<Int>> max_rest, min_rest;  // [j][k]: range of sum over coordinates >= k
  std::vector<Int> x, partial;
  std::vector<QVector>* out = nullptr;

  void prepare() {
    const std::size_t n = lo.size();
    max_rest.assign(a.size(), std::vector<Int>(n + 1, Int(0)));
    min_rest.assign(a.size(), std::vector<Int>(n + 1, Int(0)));
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t k = n; k-- > 0;) {
        const Int p = a[j][k] * lo[k], q = a[j][k] * hi[k];
        max_rest[j][k] = max_rest[j][k + 1] + (p > q ? p : q);
        min_rest[j][k] = min_rest[j][k + 1] + (p < q ? p : q);
      }
    x.assign(n, Int(0));
    partial.assign(a.size(), Int(0));
  }

  void run(std::size_t k) {
    const std::size_t n = lo.size();
    if (k == n) {
      QVector v(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = Rational(Integer(x[i]));
      out->push_back(std::move(v));
      return;
    }
    for (Int t = lo[k]; t <= hi[k]; ++t) {
      bool ok = true;
      for (std::size_t j = 0; j < a.size() && ok; ++j) {
        const Int s = partial[j] + a[j][k] * t;
        if (s + max_rest[j][k + 1] < c[j]) ok = false;
        if (is_eq[j] && s + min_rest[j][k + 1] > c[j]) ok = false;
      }
      if (!ok) continue;
      x[k] = t;
      for (std::size_t j = 0; j < a.size(); ++j) partial[j] += a[j][k] * t;
      run(k + 1);
      for (std::size_t j = 0; j < a.size(); ++j) partial[j] -= a[j][k] * t;
    }
  }
};

template <typename Int>
Int convert(const Integer& z) {
  if constexpr (std::is_same_v<Int, Integer>) return z;
  else return static_cast<Int>(z.convert_to<long long>());
}

std::vector<QVector> enumerate_lattice(const Polytope& p, bool strict) {
  std::vector<QVector> out;
  if (p.is_empty()) return out;
  const auto n = static_cast<std::size_t>(p.ambient_dim());
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices()[0](static_cast<Eigen::Index>(i)), mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v(static_cast<Eigen::Index>(i)));
      mx = std::max(mx, v(static_cast<Eigen::Index>(i)));
    }
    lo[i] = ceil_of(mn);
    hi[i] = floor_of(mx);
    if (lo[i] > hi[i]) return out;
  }
  std::vector<std::vector<Integer>> rows;
  std::vector<Integer> rhs;
  std::vector<bool> eq;
  Integer biggest = 0;
  auto add_row = [&](const Halfspace& h, bool equation) {
    std::vector<Integer> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = numerator(h.normal(static_cast<Eigen::Index>(i)));
      biggest = std::max(biggest, Integer(abs(r[i])));
    }
    rows.push_back(std::move(r));
    eq.push_back(equation);
    const Rational bound = -h.offset;
    rhs.push_back(equation ? numerator(bound) : (strict ? floor_of(bound) + 1 : ceil_of(bound)));
    biggest = std::max(biggest, Integer(abs(rhs.back())));
  };
  for (const auto& e : p.equations()) {
    if (!is_integral(e.offset)) return out;
    add_row(e, true);
  }
  for (const auto& f : p.facets()) add_row(f, false);
  for (std::size_t i = 0; i < n; ++i) biggest = std::max({biggest, Integer(abs(lo[i])), Integer(abs(hi[i]))});

  auto fill = [&](auto& en) {
    using Int = typename std::decay_t<decltype(en)>::value_type;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      std::vector<Int> r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = convert<Int>(rows[j][i]);
      en.a.push_back(std::move(r));
    }
    for (const auto& v : rhs) en.c.push_back(convert<Int>(v));
    en.is_eq = eq;
    en.lo.clear();
    en.hi.clear();
    for (std::size_t i = 0; i < n; ++i) {
      en.lo.push_back(convert<Int>(lo[i]));
      en.hi.push_back(convert<Int>(hi[i]));
    }
    en.out = &out;
    en.prepare();
    en.run(0);
  };
  if (biggest < Integer(1) << 24 && n < 64) {
    LatticeEnumerator<std::int64_t> en;
    fill(en);
  } else {
    LatticeEnumerator<Integer> en;
    fill(en);
  }
  return out;
}

}  // namespace

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
  if (lex_less(a.normal, b.normal)) return true;
  if (lex_less(b.normal, a.normal)) return false;
  return a.offset < b.offset;
}

Polytope Polytope::empty(int ambient_dim) {
  Polytope p;
  p.ambient_dim_ = ambient_dim;
  p.dim_ = -1;
  return p;
}

Polytope Polytope::hull(int ambient_dim, std::vector<QVector> points) {
  for (const auto& pt : points)
    if (pt.size() != ambient_dim) throw GeometryError("point dimension mismatch");
  if (points.empty()) return empty(ambient_dim);
  sort_unique(points);
  const Eigen::Index n = ambient_dim;

  ZMatrix c(static_cast<Eigen::Index>(points.size()), n + 1);
  for (std::size_t i = 0; i < points.size(); ++i)
    c.row(static_cast<Eigen::Index>(i)) = integer_row(Rational(1), points[i]).transpose();
  const ConeGenerators g = cone_from_constraints(c);

  Polytope p;
  p.ambient_dim_ = ambient_dim;
  p.equations_ = canonical_equations(g.lineality, n);
  p.dim_ = ambient_dim - static_cast<int>(p.equations_.size());

  for (const auto& ray : g.rays) {
    QVector a(n);
    for (Eigen::Index j = 0; j < n; ++j) a(j) = Rational(ray(j + 1));
    const ZVector z = primitive_integer(project_off(a, p.equations_));
    if (z.isZero()) continue;
    Halfspace h{to_rational(z), Rational(0)};
    Rational mn = points[0].dot(h.normal);
    for (const auto& pt : points) mn = std::min(mn, Rational(pt.dot(h.normal)));
    h.offset = -mn;
    p.facets_.push_back(std::move(h));
  }
  std::sort(p.facets_.begin(), p.facets_.end(), halfspace_less);
  p.facets_.erase(std::unique(p.facets_.begin(), p.facets_.end()), p.facets_.end());

  for (const auto& pt : points) {
    std::vector<QVector> rows;
    for (const auto& e : p.equations_) rows.push_back(e.normal);
    for (const auto& f : p.facets_)
      if (f.evaluate(pt) == 0) rows.push_back(f.normal);
    if (rank<Rational>(rows_to_matrix(rows, n)) == n) p.vertices_.push_back(pt);
  }
  return p;
}

Polytope Polytope::from_inequalities(int ambient_dim, const std::vector<Halfspace>& inequalities) {
  return hull(ambient_dim, h_to_v(HForm{ambient_dim, inequalities}).vertices);
}

HForm Polytope::h_form() const {
  HForm h{ambient_dim_, {}};
  if (is_empty()) {
    h.inequalities.push_back({QVector::Zero(ambient_dim_), Rational(-1)});
    return h;
  }
  h.inequalities = facets_;
  for (const auto& e : equations_) {
    h.inequalities.push_back(e);
    h.inequalities.push_back({QVector(-e.normal), Rational(-e.offset)});
  }
  std::sort(h.inequalities.begin(), h.inequalities.end(), halfspace_less);
  return h;
}

bool Polytope::contains(const QVector& x) const {
  if (is_empty()) return false;
  for (const auto& e : equations_)
    if (e.evaluate(x) != 0) return false;
  for (const auto& f : facets_)
    if (f.evaluate(x) < 0) return false;
  return true;
}

bool Polytope::contains(const Polytope& other) const {
  for (const auto& v : other.vertices())
    if (!contains(v)) return false;
  return true;
}

std::size_t Polytope::vertex_index(const QVector& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v, LexLess{});
  if (it == vertices_.end() || !same_vector(*it, v)) return npos;
  return static_cast<std::size_t>(it - vertices_.begin());
}

Polytope convex_hull(const std::vector<QVector>& points) {
  if (points.empty()) throw GeometryError("convex hull of an empty point set");
  return Polytope::hull(static_cast<int>(points.front().size()), points);
}

HForm v_to_h(const VForm& v) { return Polytope::hull(v.ambient_dim, v.vertices).h_form(); }

VForm h_to_v(const HForm& h) {
  const Eigen::Index n = h.ambient_dim;
  ZMatrix c(static_cast<Eigen::Index>(h.inequalities.size()) + 1, n + 1);
  for (std::size_t i = 0; i < h.inequalities.size(); ++i) {
    if (h.inequalities[i].normal.size() != n) throw GeometryError("inequality dimension mismatch");
    c.row(static_cast<Eigen::Index>(i)) = integer_row(h.inequalities[i].offset, h.inequalities[i].normal).transpose();
  }
  c.row(c.rows() - 1) = ZVector::Unit(n + 1, 0).transpose();
  const ConeGenerators g = cone_from_constraints(c);
  VForm out{h.ambient_dim, {}};
  bool recession = !g.lineality.empty();
  for (const auto& ray : g.rays) {
    if (ray(0) == 0) {
      recession = true;
      continue;
    }
    QVector x(n);
    for (Eigen::Index j = 0; j < n; ++j) x(j) = Rational(ray(j + 1), ray(0));
    out.vertices.push_back(std::move(x));
  }
  if (out.vertices.empty()) return out;
  if (recession) throw UnboundedError("inequality system is unbounded");
  sort_unique(out.vertices);
  return out;
}

Polytope polar(const Polytope& p) {
  if (p.is_empty() || !p.is_full_dimensional()) throw GeometryError("not polarizable: not full-dimensional");
  std::vector<QVector> pts;
  for (const auto& f : p.facets()) {
    if (f.offset <= 0) throw GeometryError("not polarizable: origin not interior");
    pts.push_back(QVector(f.normal / f.offset));
  }
  return Polytope::hull(p.ambient_dim(), std::move(pts));
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw GeometryError("Minkowski sum dimension mismatch");
  if (p.is_empty() || q.is_empty()) return Polytope::empty(p.ambient_dim());
  std::vector<QVector> pts;
  pts.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) pts.push_back(a + b);
  return Polytope::hull(p.ambient_dim(), std::move(pts));
}

Polytope minkowski_sum(std::span<const Polytope> ps) {
  if (ps.empty()) throw GeometryError("Minkowski sum of no polytopes");
  Polytope acc = ps[0];
  for (std::size_t i = 1; i < ps.size(); ++i) acc = minkowski_sum(acc, ps[i]);
  return acc;
}

Polytope translate(const Polytope& p, const QVector& t) {
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(v + t);
  return Polytope::hull(p.ambient_dim(), std::move(pts));
}

std::vector<QVector> lattice_points(const Polytope& p) { return enumerate_lattice(p, false); }

std::vector<QVector> interior_lattice_points(const Polytope& p) { return enumerate_lattice(p, true); }

std::size_t interior_lattice_count(const Polytope& p) { return interior_lattice_points(p).size(); }

bool relative_interior_contains(const Polytope& p, const QVector& x) {
  if (p.is_empty()) return false;
  for (const auto& e : p.equations())
    if (e.evaluate(x) != 0) return false;
  for (const auto& f : p.facets())
    if (f.evaluate(x) <= 0) return false;
  return true;
}

bool is_lattice_polytope(const Polytope& p) {
  if (p.is_empty()) return false;
  for (const auto& v : p.vertices())
    if (!is_integral(v)) return false;
  return true;
}

bool contains_origin_in_interior(const Polytope& p) {
  return !p.is_empty() && p.is_full_dimensional() &&
         relative_interior_contains(p, QVector::Zero(p.ambient_dim()));
}

bool is_simplex(const Polytope& p) {
  return !p.is_empty() && static_cast<int>(p.vertices().size()) == p.dim() + 1;
}

PolytopePredicates polytope_predicates(const Polytope& p) {
  PolytopePredicates r;
  r.is_lattice = is_lattice_polytope(p);
  if (!r.is_lattice || !contains_origin_in_interior(p)) return r;
  r.is_canonical = interior_lattice_count(p) == 1;
  r.is_reflexive = is_lattice_polytope(polar(p));
  r.is_qfano = std::all_of(p.vertices().begin(), p.vertices().end(),
                           [](const QVector& v) { return is_primitive(to_integer(v)); });
  return r;
}

std::vector<FaceDescriptor> all_faces(const Polytope& p) {
  std::vector<FaceDescriptor> out;
  if (p.is_empty()) return out;
  const std::size_t nv = p.vertices().size();
  std::set<boost::dynamic_bitset<>> seen;
  std::vector<boost::dynamic_bitset<>> facets, frontier;
  for (const auto& f : p.facets()) {
    boost::dynamic_bitset<> b(nv);
    for (std::size_t i = 0; i < nv; ++i)
      if (f.evaluate(p.vertices()[i]) == 0) b.set(i);
    facets.push_back(b);
    if (seen.insert(b).second) frontier.push_back(b);
  }
  boost::dynamic_bitset<> whole(nv);
  whole.set();
  seen.insert(whole);
  while (!frontier.empty()) {
    std::vector<boost::dynamic_bitset<>> next;
    for (const auto& face : frontier)
      for (const auto& f : facets) {
        auto b = face & f;
        if (b.none()) continue;
        if (seen.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  for (const auto& b : seen) {
    FaceDescriptor fd;
    std::vector<QVector> pts;
    for (std::size_t i = 0; i < nv; ++i)
      if (b.test(i)) {
        fd.vertex_indices.push_back(i);
        pts.push_back(p.vertices()[i]);
      }
    fd.dim = static_cast<int>(affine_rank(pts));
    out.push_back(std::move(fd));
  }
  std::sort(out.begin(), out.end(), [](const FaceDescriptor& a, const FaceDescriptor& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertex_indices < b.vertex_indices;
  });
  return out;
}

std::vector<FaceDescriptor> faces(const Polytope& p, int k) {
  if (k < 0 || k > p.dim()) throw GeometryError("face dimension out of range");
  std::vector<FaceDescriptor> out;
  for (auto& f : all_faces(p))
    if (f.dim == k) out.push_back(std::move(f));
  return out;
}

}  // namespace nefpart
