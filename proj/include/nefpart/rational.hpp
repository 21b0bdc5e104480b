#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace nefpart {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using QVector = Vec<Rational>;
using QMatrix = Mat<Rational>;
using ZVector = Vec<Integer>;
using ZMatrix = Mat<Integer>;

// Lexicographic order on coordinates; shorter vectors first on a common prefix.
template <typename Derived1, typename Derived2>
bool lex_less(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

struct LexLess {
  template <typename V>
  bool operator()(const V& a, const V& b) const { return lex_less(a, b); }
};

template <typename Derived1, typename Derived2>
bool same_vector(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  return a.size() == b.size() && a == b;
}

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }
bool is_integral(const QVector& v);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

// Positive multiple of v with coprime integer entries; zero stays zero.
ZVector primitive_integer(const QVector& v);
ZVector primitive_integer(const ZVector& v);
Integer gcd_of(const ZVector& v);
bool is_primitive(const ZVector& v);

QVector to_rational(const ZVector& v);
QMatrix to_rational(const ZMatrix& m);
// Throws std::invalid_argument on a non-integral entry.
ZVector to_integer(const QVector& v);

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const QVector& v);

QVector qvector(std::initializer_list<Rational> xs);
QVector qvector(const std::vector<long>& xs);
ZVector zvector(const std::vector<long>& xs);

}  // namespace nefpart
