#include "nefpart/regularity.hpp"

#include "nefpart/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>

namespace nefpart {

namespace {

void check_supports(const CoxSystem& system) {
  if (system.supports.empty()) throw RegularityError("empty system");
  for (std::size_t i = 0; i < system.supports.size(); ++i)
    if (system.supports[i].empty()) throw RegularityError("equation " + std::to_string(i + 1) + " has no monomials");
}

// Lexicographic DFS over sets closed under the relevance test; a set is kept when it
// meets every monomial.
StrataEnumeration enumerate_strata(std::size_t nvars, const std::vector<Monomial>& support,
                                   const std::function<bool(const std::vector<std::size_t>&)>& relevant,
                                   std::size_t budget) {
  StrataEnumeration out;
  const std::size_t nm = support.size();
  std::vector<std::vector<std::size_t>> by_var(nvars);
  std::vector<std::size_t> last_var(nm, 0);
  std::vector<bool> has_var(nm, false);
  for (std::size_t m = 0; m < nm; ++m)
    for (std::size_t v = 0; v < nvars; ++v)
      if (support[m][v] > 0) {
        by_var[v].push_back(m);
        last_var[m] = v;
        has_var[m] = true;
      }
  // a constant monomial keeps the base locus empty
  for (std::size_t m = 0; m < nm; ++m)
    if (!has_var[m]) return out;

  std::vector<int> hits(nm, 0);
  std::size_t uncovered = nm;
  std::vector<std::size_t> current;

  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    for (std::size_t v = next; v < nvars && !out.budget_exceeded; ++v) {
      current.push_back(v);
      if (relevant(current)) {
        if (++out.candidates > budget) {
          out.budget_exceeded = true;
          current.pop_back();
          return;
        }
        for (auto m : by_var[v])
          if (hits[m]++ == 0) --uncovered;
        if (uncovered == 0) out.strata.push_back({current, true});
        // no later variable can reach a monomial whose last variable is behind us
        bool reachable = true;
        if (uncovered > 0)
          for (std::size_t m = 0; m < nm && reachable; ++m)
            if (hits[m] == 0 && last_var[m] <= v) reachable = false;
        if (reachable) rec(v + 1);
        for (auto m : by_var[v])
          if (--hits[m] == 0) ++uncovered;
      }
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::size_t> x_part(const std::vector<std::size_t>& indices, std::size_t r) {
  std::vector<std::size_t> out;
  for (auto i : indices)
    if (i < r) out.push_back(i);
  return out;
}

long rank_of(const std::vector<ZVector>& rows, Eigen::Index cols) {
  if (rows.empty() || cols == 0) return 0;
  return static_cast<long>(rank(rows_to_matrix(rows, cols)));
}

std::vector<ZVector> differences(const std::vector<ZVector>& pts) {
  std::vector<ZVector> out;
  for (std::size_t i = 1; i < pts.size(); ++i) out.push_back(pts[i] - pts[0]);
  return out;
}

bool divides_some(const Monomial& m, const std::vector<std::size_t>& vars) {
  return std::any_of(vars.begin(), vars.end(), [&](std::size_t v) { return m[v] > 0; });
}

bool hits_all(const std::vector<Monomial>& support, const std::vector<std::size_t>& vars) {
  return std::all_of(support.begin(), support.end(), [&](const Monomial& m) { return divides_some(m, vars); });
}

StratumCheck check_stratum(const CayleySystem& f, const Stratum& st) {
  StratumCheck c{st, restricted_polytopes(f, st), {}};
  c.dependence = is_dependent(c.polytopes);
  return c;
}

}  // namespace

CayleySystem cayley_system(const ToricAmbient& a, const CoxSystem& system) {
  check_supports(system);
  CayleySystem f;
  f.base = system;
  f.r = a.num_rays();
  f.s = system.supports.size();
  for (std::size_t i = 0; i < f.r; ++i) f.labels.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < f.s; ++i) f.labels.push_back("t" + std::to_string(i + 1));

  const auto degrees = support_degrees(a, system);
  for (std::size_t i = 0; i < f.r; ++i) {
    Monomial e(f.r, 0);
    e[i] = 1;
    f.gradings.push_back({a.class_of(e), 0});
  }
  for (std::size_t i = 0; i < f.s; ++i) {
    ClassGroupElement c = a.class_of(Monomial(f.r, 0));
    for (std::size_t j = 0; j < f.s; ++j)
      if (j != i) c = add_classes(a, c, degrees[j]);
    f.gradings.push_back({std::move(c), 1});
  }

  for (std::size_t i = 0; i < f.s; ++i)
    for (const auto& m : system.supports[i]) {
      if (m.size() != f.r) throw RegularityError("monomial length does not match the number of rays");
      Monomial e = m;
      e.resize(f.r + f.s, 0);
      e[f.r + i] = 1;
      f.support.push_back(std::move(e));
      f.equation.push_back(i);
    }
  return f;
}

std::size_t default_stratum_budget() {
  if (const char* env = std::getenv("NEFPART_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

StrataEnumeration base_locus_strata(const ToricAmbient& a, const std::vector<Monomial>& support, std::size_t budget) {
  if (support.empty()) throw RegularityError("empty support");
  return enumerate_strata(a.num_rays(), support,
                          [&](const std::vector<std::size_t>& idx) { return a.cone_contains(idx); }, budget);
}

StrataEnumeration base_locus_strata(const ToricAmbient& a, const CayleySystem& f, std::size_t budget) {
  return enumerate_strata(
      f.num_vars(), f.support,
      [&](const std::vector<std::size_t>& idx) {
        const auto x = x_part(idx, f.r);
        return idx.size() - x.size() < f.s && a.cone_contains(x);
      },
      budget);
}

std::vector<RestrictedPolytope> restricted_polytopes(const std::vector<Monomial>& support,
                                                     const std::vector<std::size_t>& indices) {
  std::vector<RestrictedPolytope> out;
  if (support.empty()) return out;
  const std::size_t nv = support[0].size();
  std::vector<bool> in_i(nv, false);
  for (auto i : indices) in_i[i] = true;
  std::vector<std::size_t> outside;
  for (std::size_t v = 0; v < nv; ++v)
    if (!in_i[v]) outside.push_back(v);

  for (auto rho : indices) {
    RestrictedPolytope rp{rho, {}};
    for (const auto& m : support) {
      if (m[rho] != 1) continue;
      bool clean = true;
      for (auto t : indices)
        if (t != rho && m[t] != 0) clean = false;
      if (!clean) continue;
      ZVector p(static_cast<Eigen::Index>(outside.size()));
      for (std::size_t k = 0; k < outside.size(); ++k) p(static_cast<Eigen::Index>(k)) = m[outside[k]];
      rp.points.push_back(std::move(p));
    }
    std::sort(rp.points.begin(), rp.points.end(), [](const ZVector& x, const ZVector& y) { return lex_less(x, y); });
    rp.points.erase(std::unique(rp.points.begin(), rp.points.end(),
                                [](const ZVector& x, const ZVector& y) { return same_vector(x, y); }),
                    rp.points.end());
    out.push_back(std::move(rp));
  }
  return out;
}

std::vector<RestrictedPolytope> restricted_polytopes(const CayleySystem& f, const Stratum& stratum) {
  return restricted_polytopes(f.support, stratum.indices);
}

Dependence is_dependent(const std::vector<std::vector<ZVector>>& point_sets) {
  std::vector<std::size_t> live;
  Eigen::Index dim = 0;
  for (std::size_t i = 0; i < point_sets.size(); ++i)
    if (!point_sets[i].empty()) {
      live.push_back(i);
      dim = point_sets[i][0].size();
    }
  std::vector<std::vector<ZVector>> diffs;
  for (auto i : live) diffs.push_back(differences(point_sets[i]));

  Dependence out;
  std::vector<std::size_t> chosen;
  std::vector<ZVector> rows;
  // subsets of size l in lexicographic order, pruned once the span is already too big
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t next, std::size_t l) {
    if (chosen.size() == l) {
      out = {true, {}};
      for (auto c : chosen) out.witness.push_back(live[c]);
      return true;
    }
    for (std::size_t i = next; i + (l - chosen.size()) <= live.size(); ++i) {
      const std::size_t before = rows.size();
      rows.insert(rows.end(), diffs[i].begin(), diffs[i].end());
      chosen.push_back(i);
      if (rank_of(rows, dim) <= static_cast<long>(l) - 1 && rec(i + 1, l)) return true;
      chosen.pop_back();
      rows.resize(before);
    }
    return false;
  };
  for (std::size_t l = 1; l <= live.size(); ++l)
    if (rec(0, l)) return out;
  return {};
}

Dependence is_dependent(const std::vector<RestrictedPolytope>& polytopes) {
  std::vector<std::vector<ZVector>> sets;
  for (const auto& p : polytopes) sets.push_back(p.points);
  return is_dependent(sets);
}

Dependence is_dependent(const std::vector<Polytope>& polytopes) {
  // rank is scale invariant, so each difference may be cleared of denominators
  std::vector<std::vector<ZVector>> sets;
  for (const auto& p : polytopes) {
    std::vector<ZVector> pts;
    if (!p.is_empty()) {
      const auto& v = p.vertices();
      pts.push_back(ZVector::Zero(p.ambient_dim()));
      for (std::size_t i = 1; i < v.size(); ++i) pts.push_back(primitive_integer(QVector(v[i] - v[0])));
    }
    sets.push_back(std::move(pts));
  }
  return is_dependent(sets);
}

QsVerdict is_quasismooth_ci(const ToricAmbient& a, const CoxSystem& system, const QsOptions& opts) {
  const CayleySystem f = cayley_system(a, system);
  const auto en = base_locus_strata(a, f, opts.budget);
  QsVerdict v;
  v.strata = en.strata.size();
  v.candidates = en.candidates;

  std::vector<StratumCheck> checks(en.strata.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(en.strata.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < en.strata.size(); ++i) checks[i] = check_stratum(f, en.strata[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < en.strata.size();) checks[i] = check_stratum(f, en.strata[i]);
      });
    for (auto& t : pool) t.join();
  }

  for (const auto& c : checks)
    if (!c.dependence.dependent) {
      v.status = QsStatus::not_quasismooth;
      v.witness = c.stratum;
      break;
    }
  if (!v.witness && en.budget_exceeded) v.status = QsStatus::budget_exceeded;
  if (opts.keep_checks) v.checks = std::move(checks);
  return v;
}

S2Verdict qs_sufficient_s2(const ToricAmbient& a, const CoxSystem& system, std::size_t budget) {
  check_supports(system);
  if (system.supports.size() != 2) throw RegularityError("the counting criterion needs exactly two equations");
  const auto& g1 = system.supports[0];
  const auto& g2 = system.supports[1];
  S2Verdict v;
  v.fake_wps = fake_wps_data(a).has_value();
  for (const auto& g : system.supports)
    for (const auto& m : g)
      if (std::accumulate(m.begin(), m.end(), 0) == 1) v.linear_cone = true;

  // D_J lies in B_1 or B_2; enumerate both and merge
  auto e1 = base_locus_strata(a, g1, budget);
  auto e2 = base_locus_strata(a, g2, budget);
  v.budget_exceeded = e1.budget_exceeded || e2.budget_exceeded;
  std::vector<std::vector<std::size_t>> js;
  for (auto& s : e1.strata) js.push_back(s.indices);
  for (auto& s : e2.strata) js.push_back(s.indices);
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());

  const long n = a.dim();
  for (const auto& j : js) {
    S2Stratum st;
    st.stratum = {j, true};
    st.in_b1 = hits_all(g1, j);
    st.in_b2 = hits_all(g2, j);
    const auto r1 = restricted_polytopes(g1, j);
    const auto r2 = restricted_polytopes(g2, j);
    for (std::size_t k = 0; k < j.size(); ++k) {
      st.k1 += !r1[k].empty();
      st.k2 += !r2[k].empty();
      st.k12 += !r1[k].empty() || !r2[k].empty();
    }
    std::vector<ZVector> rays;
    for (auto i : j) rays.push_back(a.rays()[i]);
    st.d = n - rank_of(rays, n);
    const auto k1 = static_cast<long>(st.k1), k2 = static_cast<long>(st.k2), k12 = static_cast<long>(st.k12);
    if (st.in_b1 && st.in_b2)
      st.ok = k1 >= st.d + 1 && k2 >= st.d + 1 && k12 >= st.d + 2;
    else if (st.in_b1)
      st.ok = k1 >= st.d;
    else
      st.ok = k2 >= st.d;
    if (!st.ok && !v.witness) v.witness = st.stratum;
    v.strata.push_back(std::move(st));
  }
  if (v.witness)
    // a linear term restricts to a nonzero constant, which the necessity argument does not cover
    v.status = v.fake_wps && !v.linear_cone ? S2Status::necessary_fail : S2Status::inconclusive;
  else if (v.budget_exceeded)
    v.status = S2Status::inconclusive;
  return v;
}

WellFormedness is_well_formed(const ToricAmbient& a, const CoxSystem& system) {
  check_supports(system);
  const long n = a.dim();
  const long k = n - static_cast<long>(system.supports.size()) - 1;
  WellFormedness out;
  const Polytope& delta = a.anticanonical_polytope();
  if (k < 0 || k > delta.dim()) return out;
  const auto& rays = a.rays();
  for (const auto& face : faces(delta, static_cast<int>(k))) {
    std::vector<std::size_t> cone;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      const QVector nr = to_rational(rays[r]);
      bool tight = true;
      for (auto vi : face.vertex_indices)
        if (delta.vertices()[vi].dot(nr) != -1) tight = false;
      if (tight) cone.push_back(r);
    }
    std::vector<ZVector> gens;
    for (auto r : cone) gens.push_back(rays[r]);
    const ZMatrix m = rows_to_matrix(gens, n);
    const auto snf = smith_normal_form(m);
    const auto factors = snf.invariant_factors();
    const bool smooth = static_cast<std::size_t>(snf.rank()) == cone.size() &&
                        std::all_of(factors.begin(), factors.end(), [](const Integer& f) { return f == 1; });
    if (smooth) continue;
    bool contained = true;
    for (const auto& s : system.supports)
      if (!hits_all(s, cone)) contained = false;
    if (contained) {
      out.well_formed = false;
      out.witness = cone;
      return out;
    }
  }
  return out;
}

CyReport is_cy_family(const ToricAmbient& a, const CoxSystem& system, const QsOptions& opts) {
  check_supports(system);
  CyReport rep;
  const long n = a.dim();
  const std::size_t s = system.supports.size();
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  add("codimension", n >= static_cast<long>(s) + 1, "n=" + std::to_string(n) + " s=" + std::to_string(s));

  const auto degrees = support_degrees(a, system);
  ClassGroupElement total = degrees[0];
  for (std::size_t i = 1; i < s; ++i) total = add_classes(a, total, degrees[i]);
  add("anticanonical", total == a.anticanonical_class());

  std::vector<Polytope> parts;
  for (const auto& sup : system.supports)
    parts.push_back(convex_hull(dehomogenize(a, sup, divisor_of(sup[0]))));
  bool positive = true;
  for (const auto& p : parts) positive = positive && p.dim() > 0;
  add("parts_positive_dimensional", positive);

  const Polytope sum = minkowski_sum(parts);
  add("sum_full_dimensional", sum.dim() == n, "dim=" + std::to_string(sum.dim()));
  const std::size_t interior = interior_lattice_count(sum);
  add("sum_one_interior_point", interior == 1, "l*=" + std::to_string(interior));

  bool partial = true;
  std::string detail;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << s) && partial; ++mask) {
    std::vector<Polytope> sub;
    for (std::size_t i = 0; i < s; ++i)
      if ((mask >> i) & 1u) sub.push_back(parts[i]);
    if (interior_lattice_count(minkowski_sum(sub)) != 0) {
      partial = false;
      detail = "subset mask " + std::to_string(mask);
    }
  }
  add("partial_sums_no_interior_points", partial, detail);

  rep.quasismooth = is_quasismooth_ci(a, system, opts);
  add("quasismooth", rep.quasismooth.status == QsStatus::quasismooth, to_string(rep.quasismooth.status));
  rep.well_formed = is_well_formed(a, system);
  add("well_formed", rep.well_formed.well_formed);

  rep.cy = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CyCheck& c) { return c.ok; });
  return rep;
}

std::string to_string(QsStatus s) {
  switch (s) {
    case QsStatus::quasismooth: return "quasismooth";
    case QsStatus::not_quasismooth: return "not_quasismooth";
    case QsStatus::budget_exceeded: return "budget_exceeded";
  }
  return {};
}

std::string to_string(S2Status s) {
  switch (s) {
    case S2Status::sufficient_pass: return "sufficient_pass";
    case S2Status::inconclusive: return "inconclusive";
    case S2Status::necessary_fail: return "necessary_fail";
  }
  return {};
}

}  // namespace nefpart
