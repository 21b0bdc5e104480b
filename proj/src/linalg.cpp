#include "nefpart/linalg.hpp"

#include <stdexcept>

namespace nefpart {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

}  // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (Eigen::Index i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) != 0) out.push_back(d(i, i));
  return out;
}

Eigen::Index SmithForm::rank() const { return static_cast<Eigen::Index>(invariant_factors().size()); }

SmithForm smith_normal_form(const ZMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  SmithForm s{ZMatrix::Identity(m, m), a, ZMatrix::Identity(n, n)};
  ZMatrix& d = s.d;
  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      Eigen::Index bp = -1, bq = -1;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j)
          if (d(i, j) != 0 && (bp < 0 || abs_value(d(i, j)) < abs_value(d(bp, bq)))) {
            bp = i;
            bq = j;
          }
      if (bp < 0) return s;
      if (bp != t) {
        d.row(bp).swap(d.row(t));
        s.u.row(bp).swap(s.u.row(t));
      }
      if (bq != t) {
        d.col(bq).swap(d.col(t));
        s.v.col(bq).swap(s.v.col(t));
      }
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = d(i, t) / d(t, t);
        d.row(i) -= q * d.row(t);
        s.u.row(i) -= q * s.u.row(t);
        if (d(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = d(t, j) / d(t, t);
        d.col(j) -= q * d.col(t);
        s.v.col(j) -= q * s.v.col(t);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      d.row(t) += d.row(bad);
      s.u.row(t) += s.u.row(bad);
    }
    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      s.u.row(t) = -s.u.row(t);
    }
  }
  return s;
}

ZMatrix unimodular_inverse(const ZMatrix& u) {
  const Eigen::Index n = u.rows();
  QMatrix aug(n, 2 * n);
  aug << to_rational(u), QMatrix::Identity(n, n);
  auto e = reduced_row_echelon(aug);
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] >= n)
    throw std::invalid_argument("matrix is singular");
  ZMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Rational& x = e.reduced(i, n + j);
      if (!is_integral(x)) throw std::invalid_argument("matrix is not unimodular");
      inv(i, j) = numerator(x);
    }
  return inv;
}

ZMatrix integer_kernel(const ZMatrix& a) {
  const auto s = smith_normal_form(a);
  const Eigen::Index r = s.rank();
  return s.v.rightCols(a.cols() - r);
}

ZMatrix saturation_basis(const ZMatrix& generators) {
  const auto s = smith_normal_form(generators);
  return unimodular_inverse(s.u).leftCols(s.rank());
}

std::optional<ZVector> lattice_coordinates(const ZMatrix& basis, const ZVector& x) {
  const auto s = smith_normal_form(basis);
  const Eigen::Index r = s.rank();
  const ZVector ux = s.u * x;
  ZVector y = ZVector::Zero(basis.cols());
  for (Eigen::Index i = 0; i < ux.size(); ++i) {
    if (i < r) {
      if (ux(i) % s.d(i, i) != 0) return std::nullopt;
      y(i) = ux(i) / s.d(i, i);
    } else if (ux(i) != 0) {
      return std::nullopt;
    }
  }
  return ZVector(s.v * y);
}

ZMatrix unimodular_completion(const ZVector& w) {
  ZMatrix col(w.size(), 1);
  col.col(0) = w;
  auto s = smith_normal_form(col);
  if (s.v(0, 0) < 0) s.u.row(0) = -s.u.row(0);
  return s.u;
}

}  // namespace nefpart
