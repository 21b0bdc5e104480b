#include "nefpart/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace nefpart {

bool is_integral(const QVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_integral(v(i))) return false;
  return true;
}

Integer floor_of(const Rational& q) {
  Integer num = numerator(q), den = denominator(q);
  Integer f = num / den;
  if (num < 0 && f * den != num) f -= 1;
  return f;
}

Integer ceil_of(const Rational& q) { return -floor_of(-q); }

Integer gcd_of(const ZVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return abs(g);
}

bool is_primitive(const ZVector& v) { return gcd_of(v) == 1; }

ZVector primitive_integer(const ZVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) return v;
  ZVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) / g;
  return out;
}

ZVector primitive_integer(const QVector& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, Integer(denominator(v(i))));
  ZVector z(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    z(i) = numerator(v(i)) * (l / denominator(v(i)));
  return primitive_integer(z);
}

QVector to_rational(const ZVector& v) {
  QVector q(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) q(i) = Rational(v(i));
  return q;
}

QMatrix to_rational(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  return q;
}

ZVector to_integer(const QVector& v) {
  ZVector z(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_integral(v(i))) throw std::invalid_argument("non-integral entry " + to_string(v(i)));
    z(i) = numerator(v(i));
  }
  return z;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const QVector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i).str();
  os << ')';
  return os.str();
}

QVector qvector(std::initializer_list<Rational> xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

QVector qvector(const std::vector<long>& xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = Rational(xs[i]);
  return v;
}

ZVector zvector(const std::vector<long>& xs) {
  ZVector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = Integer(xs[i]);
  return v;
}

}  // namespace nefpart
