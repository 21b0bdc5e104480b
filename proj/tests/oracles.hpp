#pragma once

// Independent reference implementations shared by the unit tests and the acceptance run.

#include "nefpart/good_pair.hpp"
#include "nefpart/polytope.hpp"
#include "nefpart/toric.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace nefpart::testing {

inline std::vector<QVector> sorted(std::vector<QVector> v) {
  std::sort(v.begin(), v.end(), LexLess{});
  v.erase(std::unique(v.begin(), v.end(), [](auto& a, auto& b) { return same_vector(a, b); }), v.end());
  return v;
}

inline bool same_points(const std::vector<QVector>& a, const std::vector<QVector>& b) {
  auto x = sorted(a), y = sorted(b);
  return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](auto& u, auto& v) { return same_vector(u, v); });
}

inline std::vector<QVector> box_lattice_points(const Polytope& p, bool strict) {
  const int n = p.ambient_dim();
  std::vector<Integer> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rational mn = p.vertices()[0](i), mx = mn;
    for (auto& v : p.vertices()) {
      mn = std::min(mn, v(i));
      mx = std::max(mx, v(i));
    }
    lo[i] = floor_of(mn);
    hi[i] = ceil_of(mx);
  }
  std::vector<QVector> out;
  QVector x(n);
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      if (strict ? relative_interior_contains(p, x) : p.contains(x)) out.push_back(x);
      return;
    }
    for (Integer t = lo[k]; t <= hi[k]; ++t) {
      x(k) = Rational(t);
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// Rank by plain rational elimination, independent of the library's fraction-free routine.
inline long oracle_rank(const std::vector<ZVector>& rows, long cols) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (long j = 0; j < cols; ++j) v.emplace_back(r(j));
    m.push_back(std::move(v));
  }
  long rank = 0;
  for (long c = 0; c < cols && rank < static_cast<long>(m.size()); ++c) {
    std::size_t p = static_cast<std::size_t>(rank);
    while (p < m.size() && m[p][static_cast<std::size_t>(c)] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[static_cast<std::size_t>(rank)]);
    const auto& piv = m[static_cast<std::size_t>(rank)];
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == static_cast<std::size_t>(rank) || m[i][static_cast<std::size_t>(c)] == 0) continue;
      const Rational f = m[i][static_cast<std::size_t>(c)] / piv[static_cast<std::size_t>(c)];
      for (long j = 0; j < cols; ++j) m[i][static_cast<std::size_t>(j)] -= f * piv[static_cast<std::size_t>(j)];
    }
    ++rank;
  }
  return rank;
}

inline bool oracle_subset_dependent(const std::vector<std::vector<ZVector>>& sets, unsigned mask, long dim) {
  std::vector<ZVector> rows;
  long l = 0;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if ((mask >> i) & 1u) {
      if (sets[i].empty()) return false;
      ++l;
      for (std::size_t k = 1; k < sets[i].size(); ++k) rows.push_back(sets[i][k] - sets[i][0]);
    }
  return l > 0 && oracle_rank(rows, dim) <= l - 1;
}

inline bool oracle_dependent(const std::vector<std::vector<ZVector>>& sets, long dim) {
  for (unsigned mask = 1; mask < (1u << sets.size()); ++mask)
    if (oracle_subset_dependent(sets, mask, dim)) return true;
  return false;
}

inline std::vector<std::vector<ZVector>> random_collection(std::mt19937& rng, long dim) {
  std::vector<std::vector<ZVector>> sets(1 + rng() % 6);
  for (auto& s : sets) {
    const std::size_t k = rng() % 4;  // 0 means empty
    for (std::size_t i = 0; i < k; ++i) {
      ZVector p(dim);
      for (long j = 0; j < dim; ++j) p(j) = static_cast<long>(rng() % 3) - 1;
      s.push_back(p);
    }
  }
  return sets;
}

// All monomials of weighted degree d.
inline std::vector<Monomial> monomials_of_degree(const std::vector<Integer>& w, long d) {
  std::vector<Monomial> out;
  Monomial m(w.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i == w.size()) {
      if (left == 0) out.push_back(m);
      return;
    }
    const long wi = w[i].convert_to<long>();
    for (long e = 0; e * wi <= left; ++e) {
      m[i] = static_cast<int>(e);
      rec(i + 1, left - e * wi);
    }
    m[i] = 0;
  };
  rec(0, d);
  return out;
}

inline std::vector<Monomial> random_subset(std::mt19937& rng, const std::vector<Monomial>& all, unsigned keep_of_8) {
  std::vector<Monomial> out;
  for (const auto& m : all)
    if (rng() % 8 < keep_of_8) out.push_back(m);
  if (out.empty()) out.push_back(all[rng() % all.size()]);
  return out;
}

inline std::vector<Monomial> random_support(std::mt19937& rng, std::size_t nvars, std::size_t count, int max_exp) {
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < count; ++i) {
    Monomial m(nvars);
    for (auto& e : m) e = static_cast<int>(rng() % static_cast<unsigned>(max_exp + 1));
    out.push_back(m);
  }
  return out;
}

inline bool meet_is_origin(const Polytope& a, const Polytope& b) {
  auto ha = a.h_form().inequalities;
  const auto hb = b.h_form().inequalities;
  ha.insert(ha.end(), hb.begin(), hb.end());
  return Polytope::from_inequalities(a.ambient_dim(), ha) == convex_hull({QVector::Zero(a.ambient_dim())});
}

inline bool same_pair(const GoodPair& a, const GoodPair& b) {
  if (a.s() != b.s() || a.inner.delta != b.inner.delta || a.outer.delta != b.outer.delta) return false;
  for (std::size_t i = 0; i < a.s(); ++i)
    if (a.inner.parts[i] != b.inner.parts[i] || a.outer.parts[i] != b.outer.parts[i]) return false;
  return true;
}

// Representative of e modulo Z^r and the weight circle Q w, with the pivot coordinate set to zero.
inline std::vector<Rational> canonical_element(const std::vector<Rational>& e, const std::vector<Integer>& w) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] < w[pivot]) pivot = i;
  auto frac = [](const Rational& x) { return x - Rational(floor_of(x)); };
  std::optional<std::vector<Rational>> best;
  for (Integer j = 0; j < w[pivot]; ++j) {
    const Rational c = (Rational(j) - e[pivot]) / Rational(w[pivot]);
    std::vector<Rational> f(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) f[i] = frac(e[i] + c * Rational(w[i]));
    if (!best || f < *best) best = f;
  }
  return *best;
}

// The group generated by the gradings inside (Q/Z)^r, modulo the weight circle.
inline std::set<std::vector<Rational>> quotient_group(const std::vector<Integer>& w, const std::vector<QuotientGrading>& qs) {
  const std::size_t r = w.size();
  std::set<std::vector<Rational>> out;
  std::vector<Integer> k(qs.size(), 0);
  while (true) {
    std::vector<Rational> e(r, Rational(0));
    for (std::size_t t = 0; t < qs.size(); ++t)
      for (std::size_t i = 0; i < r; ++i) e[i] += Rational(k[t] * qs[t].residues[i], qs[t].order);
    out.insert(canonical_element(e, w));
    std::size_t t = 0;
    while (t < qs.size() && ++k[t] == qs[t].order) k[t++] = 0;
    if (t == qs.size()) break;
  }
  return out;
}

// Variable i becomes variable perm[i]; target_weights are the weights after renaming.
inline std::set<std::vector<Rational>> permuted(const std::set<std::vector<Rational>>& g, const std::vector<std::size_t>& perm,
                                         const std::vector<Integer>& target_weights) {
  std::set<std::vector<Rational>> out;
  for (const auto& e : g) {
    std::vector<Rational> f(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) f[perm[i]] = e[i];
    out.insert(canonical_element(f, target_weights));
  }
  return out;
}

// The group acting on the fake weighted projective space with these rays, read off the fan:
// classes of c in (Q/Z)^r with sum c_i v_i integral, modulo the weight circle.
inline std::set<std::vector<Rational>> fan_group(const std::vector<ZVector>& rays, const std::vector<Integer>& w,
                                                 long denominator) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] < w[pivot]) pivot = i;
  const std::size_t r = rays.size();
  const Eigen::Index n = rays[0].size();
  std::set<std::vector<Rational>> out;
  std::vector<long> c(r, 0);
  while (true) {
    bool integral = true;
    for (Eigen::Index k = 0; k < n && integral; ++k) {
      Integer s = 0;
      for (std::size_t i = 0; i < r; ++i) s += c[i] * rays[i](k);
      integral = s % denominator == 0;
    }
    if (integral) {
      std::vector<Rational> e(r);
      for (std::size_t i = 0; i < r; ++i) e[i] = Rational(c[i], denominator);
      out.insert(canonical_element(e, w));
    }
    std::size_t i = 0;
    while (i < r && (i == pivot || ++c[i] == denominator)) {
      if (i != pivot) c[i] = 0;
      ++i;
    }
    if (i == r) break;
  }
  return out;
}

}  // namespace nefpart::testing
