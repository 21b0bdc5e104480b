#pragma once

#include "nefpart/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nefpart {

template <typename Scalar>
struct Echelon {
  Mat<Scalar> reduced;
  std::vector<Eigen::Index> pivots;
};

// Reduced row echelon form over a field.
template <typename Scalar>
Echelon<Scalar> reduced_row_echelon(Mat<Scalar> a) {
  Echelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row) a.row(p).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Scalar f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

// Fraction-free (Bareiss) elimination; exact for integers and rationals alike.
template <typename Scalar>
Eigen::Index rank(Mat<Scalar> a) {
  Eigen::Index r = 0;
  Scalar prev(1);
  for (Eigen::Index col = 0; col < a.cols() && r < a.rows(); ++col) {
    Eigen::Index p = r;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) a.row(p).swap(a.row(r));
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      for (Eigen::Index j = col + 1; j < a.cols(); ++j)
        a(i, j) = (a(r, col) * a(i, j) - a(i, col) * a(r, j)) / prev;
      a(i, col) = 0;
    }
    prev = a(r, col);
    ++r;
  }
  return r;
}

template <typename Scalar>
Scalar determinant(Mat<Scalar> a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  Scalar prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return Scalar(0);
    if (p != k) {
      a.row(p).swap(a.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return n == 0 ? Scalar(1) : Scalar(sign) * a(n - 1, n - 1);
}

// Basis of the right kernel, one column per free variable, over a field.
template <typename Scalar>
Mat<Scalar> nullspace(const Mat<Scalar>& a) {
  const auto e = reduced_row_echelon(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Mat<Scalar> basis(a.cols(), a.cols() - static_cast<Eigen::Index>(e.pivots.size()));
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < a.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = Scalar(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      basis(e.pivots[i], k) = -e.reduced(static_cast<Eigen::Index>(i), f);
    ++k;
  }
  return basis;
}

// Some solution of a x = b, or nullopt when inconsistent.
template <typename Scalar>
std::optional<Vec<Scalar>> solve(const Mat<Scalar>& a, const Vec<Scalar>& b) {
  Mat<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const auto e = reduced_row_echelon(aug);
  Vec<Scalar> x = Vec<Scalar>::Zero(a.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    x(e.pivots[i]) = e.reduced(static_cast<Eigen::Index>(i), a.cols());
  }
  return x;
}

template <typename Scalar>
Mat<Scalar> rows_to_matrix(const std::vector<Vec<Scalar>>& rows, Eigen::Index cols) {
  Mat<Scalar> m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return m;
}

// Dimension of the affine hull of a point set (-1 when empty).
template <typename Scalar>
Eigen::Index affine_rank(const std::vector<Vec<Scalar>>& points) {
  if (points.empty()) return -1;
  const Eigen::Index n = points.front().size();
  Mat<Scalar> d(static_cast<Eigen::Index>(points.size()) - 1, n);
  for (std::size_t i = 1; i < points.size(); ++i)
    d.row(static_cast<Eigen::Index>(i) - 1) = (points[i] - points[0]).transpose();
  return rank<Scalar>(d);
}

struct SmithForm {
  ZMatrix u, d, v;  // u * a * v == d
  std::vector<Integer> invariant_factors() const;  // nonzero diagonal entries
  Eigen::Index rank() const;
};

SmithForm smith_normal_form(const ZMatrix& a);

ZMatrix unimodular_inverse(const ZMatrix& u);

// Basis (columns) of {x in Z^n : a x = 0}.
ZMatrix integer_kernel(const ZMatrix& a);

// Basis (columns) of span_Q(generators) intersected with Z^n.
ZMatrix saturation_basis(const ZMatrix& generators);

// Integer coordinates of x in the lattice spanned by the basis columns.
std::optional<ZVector> lattice_coordinates(const ZMatrix& basis, const ZVector& x);

// Unimodular u with u * w = gcd(w) e_1.
ZMatrix unimodular_completion(const ZVector& w);

}  // namespace nefpart
