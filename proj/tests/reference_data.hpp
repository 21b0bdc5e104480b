#pragma once

#include "nefpart/good_pair.hpp"
#include "nefpart/toric.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nefpart::testing {

inline QVector q(std::initializer_list<Rational> xs) { return qvector(xs); }

inline std::vector<ZVector> zrays(std::initializer_list<std::vector<long>> rows) {
  std::vector<ZVector> out;
  for (const auto& r : rows) out.push_back(zvector(r));
  return out;
}

// P(1,1,3): Delta and the fan generators n1, n2, n3 in the expected's labelling.
inline Polytope p113_delta() {
  return convex_hull({q({-1, -3}), q({-1, 2}), q({Rational(2, 3), Rational(1, 3)})});
}
inline std::vector<ZVector> p113_rays() { return zrays({{1, 0}, {-1, -1}, {-2, 1}}); }

// Bl_p P^2 with n1..n4 as labelled in the expected.
inline Polytope blp2_delta() { return convex_hull({q({2, 1}), q({-1, 1}), q({-1, -1}), q({0, -1})}); }
inline std::vector<ZVector> blp2_rays() { return zrays({{0, -1}, {-1, 1}, {1, 0}, {0, 1}}); }

// P(1,1,1,2,3) from the K3 example; rays n1..n5.
inline std::vector<ZVector> k3_rays() {
  return zrays({{0, 1, -1, -1}, {-1, 0, 0, 1}, {-1, 0, 1, 0}, {1, 1, 0, 0}, {0, -1, 0, 0}});
}
inline Polytope k3_delta2() {
  return convex_hull({q({-2, 1, -3, -3}), q({-2, 1, -3, 5}), q({-2, 1, 5, -3}), q({2, 1, 1, 1}),
                      q({Rational(2, 3), Rational(-5, 3), Rational(-1, 3), Rational(-1, 3)})});
}

inline Monomial mono(std::initializer_list<int> e) { return Monomial(e); }

// Monomial from 1-based variable indices with multiplicity, e.g. {1,1,4} = x1^2 x4.
inline Monomial vars(std::size_t r, std::initializer_list<int> idx) {
  Monomial m(r, 0);
  for (int i : idx) ++m[static_cast<std::size_t>(i - 1)];
  return m;
}

inline std::vector<Monomial> sorted_support(std::vector<Monomial> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline Monomial permute(const Monomial& m, const std::vector<std::size_t>& perm) {
  Monomial out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) out[perm[i]] = m[i];
  return out;
}

// Systems equal after renaming variable i to perm[i] and reordering equations.
inline bool systems_equal_under(const std::vector<std::vector<Monomial>>& a,
                                const std::vector<std::vector<Monomial>>& b, const std::vector<std::size_t>& perm) {
  if (a.size() != b.size()) return false;
  std::vector<std::vector<Monomial>> pa, sb;
  for (const auto& s : a) {
    std::vector<Monomial> t;
    for (const auto& m : s) t.push_back(permute(m, perm));
    pa.push_back(sorted_support(t));
  }
  for (const auto& s : b) sb.push_back(sorted_support(s));
  std::sort(pa.begin(), pa.end());
  std::sort(sb.begin(), sb.end());
  return pa == sb;
}

inline std::optional<std::vector<std::size_t>> systems_equal_up_to_permutation(
    const std::vector<std::vector<Monomial>>& a, const std::vector<std::vector<Monomial>>& b) {
  if (a.empty() || a[0].empty()) return std::nullopt;
  std::vector<std::size_t> perm(a[0][0].size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (systems_equal_under(a, b, perm)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Support of a polynomial written as "x1*x2^2 + x3", over the named variables.
inline std::vector<Monomial> support(const std::string& text, const std::vector<std::string>& names) {
  std::vector<Monomial> out;
  std::stringstream terms(text);
  std::string term;
  while (std::getline(terms, term, '+')) {
    Monomial m(names.size(), 0);
    std::stringstream factors(term);
    std::string f;
    while (std::getline(factors, f, '*')) {
      f.erase(std::remove(f.begin(), f.end(), ' '), f.end());
      if (f.empty() || f == "1") continue;
      int e = 1;
      if (auto c = f.find('^'); c != std::string::npos) {
        e = std::stoi(f.substr(c + 1));
        f = f.substr(0, c);
      }
      auto it = std::find(names.begin(), names.end(), f);
      if (it == names.end()) throw std::invalid_argument("unknown variable " + f);
      m[static_cast<std::size_t>(it - names.begin())] += e;
    }
    out.push_back(m);
  }
  return out;
}

inline std::vector<std::string> var_names(const std::string& base, int from, int to) {
  std::vector<std::string> out;
  for (int i = from; i <= to; ++i) out.push_back(base + std::to_string(i));
  return out;
}

// A renaming that matches the systems and, when weights are given, the grading.
inline std::optional<std::vector<std::size_t>> consistent_match(const ToricAmbient& a,
                                                                const std::vector<std::vector<Monomial>>& ours,
                                                                const std::vector<std::vector<Monomial>>& expected,
                                                                const std::vector<Integer>& weights,
                                                                const std::vector<QuotientGrading>& quotients) {
  std::vector<std::size_t> perm(a.num_rays());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (systems_equal_under(ours, expected, perm) && grading_matches(a, weights, quotients, perm)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

inline Polytope hull_with_zero(std::vector<QVector> pts) {
  pts.push_back(QVector::Zero(pts.front().size()));
  return convex_hull(pts);
}

inline Block blocks_for(const Polytope& delta, const std::vector<ZVector>& rays, std::initializer_list<int> labels) {
  const Polytope dp = polar(delta);
  Block b;
  for (int l : labels) b.push_back(dp.vertex_index(to_rational(rays[static_cast<std::size_t>(l - 1)])));
  std::sort(b.begin(), b.end());
  return b;
}

// Bl_p P^2 with the nested inner partition.
inline GoodPair nested_pair() {
  const auto delta = blp2_delta();
  const auto rays = blp2_rays();
  auto outer = make_gnp(delta, VertexPartition{{blocks_for(delta, rays, {2, 4}), blocks_for(delta, rays, {1, 3})}});
  auto inner = gnp_from_parts({hull_with_zero({q({0, -1}), q({1, 0})}), hull_with_zero({q({-1, 0}), q({0, 1})})});
  return make_good_pair(std::move(inner), std::move(outer));
}

// The printed vertex tables use the blocks {n1,n2,n4} and {n3,n5}.
inline GeneralizedNefPartition k3_outer() {
  const auto delta = k3_delta2();
  const auto rays = k3_rays();
  return make_gnp(delta, VertexPartition{{blocks_for(delta, rays, {1, 2, 4}), blocks_for(delta, rays, {3, 5})}});
}

inline GoodPair k3_pair() {
  auto inner = gnp_from_parts({hull_with_zero({q({0, -1, 0, -1}), q({-1, 0, 3, -2}), q({1, 0, 1, 0})}),
                               hull_with_zero({q({-1, 1, -2, 3}), q({0, 1, -1, 0})})});
  return make_good_pair(std::move(inner), k3_outer());
}

struct WorkedSystem {
  ToricAmbient ambient;
  std::vector<std::string> names;
  std::vector<std::vector<Monomial>> supports;
  std::vector<Monomial> marked;

  CoxSystem system() const { return {supports}; }
};

inline WorkedSystem make_system(ToricAmbient a, std::vector<std::string> names,
                                std::initializer_list<std::string> polys, std::initializer_list<std::string> marked) {
  WorkedSystem w{std::move(a), std::move(names), {}, {}};
  for (const auto& p : polys) w.supports.push_back(support(p, w.names));
  for (const auto& m : marked) w.marked.push_back(support(m, w.names).front());
  return w;
}

inline std::vector<Integer> ones(std::size_t r) { return std::vector<Integer>(r, Integer(1)); }

inline WorkedSystem lt_system() {
  return make_system(weighted_projective_space(ones(6)), var_names("x", 1, 6),
                     {"x1*x2*x3 + x4^3 + x5^3 + x6^3", "x4*x5*x6 + x1^3 + x2^3 + x3^3"}, {"x1*x2*x3", "x4*x5*x6"});
}

// P^2 x P^2 x P^1 with variables x0 x1 x2 y0 y1 y2 z0 z1.
inline WorkedSystem schoen_system(bool second_choice = false) {
  auto a = ToricAmbient::from_rays(zrays({{-1, -1, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0},
                                          {0, 0, -1, -1, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0},
                                          {0, 0, 0, 0, -1}, {0, 0, 0, 0, 1}}));
  const std::vector<std::string> names{"x0", "x1", "x2", "y0", "y1", "y2", "z0", "z1"};
  const std::string g1 = "z0*x0^3 + z0*x1^3 + z0*x2^3 + z0*x0*x1*x2 + z1*x0*x1*x2";
  const std::string g2 = "z0*y0*y1*y2 + z1*y0^3 + z1*y1^3 + z1*y2^3 + z1*y0*y1*y2";
  if (second_choice) return make_system(std::move(a), names, {g1, g2}, {"z1*x0*x1*x2", "z0*y0*y1*y2"});
  return make_system(std::move(a), names, {g1, g2}, {"z0*x0*x1*x2", "z1*y0*y1*y2"});
}

inline WorkedSystem p11112_system() {
  return make_system(weighted_projective_space({1, 1, 1, 1, 2}), var_names("x", 1, 5),
                     {"x1*x2*x3 + x2^3 + x4^3 + x3*x5", "x4*x5 + x1^3 + x2*x3^2 + x1*x2*x4"}, {"x1*x2*x3", "x4*x5"});
}

// The worked quasismooth intersection in P(1,1,1,2).
inline WorkedSystem p1112_system() {
  return make_system(weighted_projective_space({1, 1, 1, 2}), var_names("x", 1, 4),
                     {"x1*x2 + x3^2 + x4", "x1^3 + x3^3 + x2*x4 + x2^2*x3 + x3*x4"}, {});
}

struct TableRow {
  std::string g1, g2;
  std::vector<Integer> dual_weights;
  std::vector<QuotientGrading> dual_quotients;
  std::string dual_g1, dual_g2;
};

// Delsarte quasismooth pairs of bidegree (2,3) in P^4.
inline std::vector<TableRow> p4_table() {
  return {
      {"x1*x2 + x4^2 + x5^2", "x1^3 + x2^3 + x3^3 + x3*x4*x5", {2, 2, 2, 3, 3}, {{6, {0, 1, 5, 3, 0}}},
       "y4*y5 + y1^3 + y2^3", "y1*y2*y3 + y3^3 + y4^2 + y5^2"},
      {"x1*x2 + x4^2 + x5^2", "x2^3 + x3^3 + x1^2*x5 + x3*x4*x5", {15, 9, 8, 10, 12}, {},
       "y1*y2 + y5^2 + y3^3", "y3*y4*y5 + y4^3 + y1^2 + y2^2*y5"},
      {"x1*x2 + x4^2 + x5^2", "x3^3 + x1^2*x4 + x2^2*x5 + x3*x4*x5", {1, 1, 1, 1, 1}, {{8, {0, 2, 6, 3, 1}}},
       "y1*y2 + y4^2 + y5^2", "y3^3 + y1^2*y4 + y2^2*y5 + y3*y4*y5"},
      {"x1*x2 + x3^2 + x4^2 + x5^2", "x1^3 + x2^3 + x3*x4*x5", {1, 1, 1, 1, 1},
       {{2, {0, 0, 1, 1, 0}}, {6, {0, 4, 2, 5, 5}}}, "y1*y2 + y3^2 + y4^2 + y5^2", "y1^3 + y2^3 + y3*y4*y5"},
  };
}

}  // namespace nefpart::testing
