#include "nefpart/classify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace nefpart {

namespace {

using Perm = std::vector<std::size_t>;

std::vector<Perm> weight_symmetries(const std::vector<Integer>& w) {
  std::vector<Perm> out;
  Perm p(w.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < w.size() && ok; ++i) ok = w[p[i]] == w[i];
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Monomial apply(const Perm& p, const Monomial& m) {
  Monomial out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[p[i]] = m[i];
  return out;
}

std::vector<Monomial> monomials_of_degree(const std::vector<Integer>& w, const Integer& d) {
  std::vector<Monomial> out;
  Monomial cur(w.size(), 0);
  std::function<void(std::size_t, Integer)> rec = [&](std::size_t i, Integer left) {
    if (i + 1 == w.size()) {
      if (left % w[i] == 0) {
        cur[i] = static_cast<int>(left / w[i]);
        out.push_back(cur);
        cur[i] = 0;
      }
      return;
    }
    for (int e = 0; Integer(e) * w[i] <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - Integer(e) * w[i]);
    }
    cur[i] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

// Fraction-free elimination; entries stay bounded by minors.
long long small_det(std::vector<std::vector<long long>> a) {
  const std::size_t n = a.size();
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// The r shifted exponent vectors lie in a hyperplane of rank r-1; they span it and
// have a strictly positive relation exactly when their hull is a simplex with 0 inside.
bool positive_circuit(const std::vector<std::vector<long long>>& cols) {
  const std::size_t r = cols.size();
  int sign = 0;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::vector<long long>> m(r - 1, std::vector<long long>(r - 1));
    for (std::size_t i = 0; i + 1 < r; ++i) {
      std::size_t c = 0;
      for (std::size_t k = 0; k < r; ++k)
        if (k != j) m[i][c++] = cols[k][i];
    }
    long long d = small_det(std::move(m));
    if (j % 2 == 1) d = -d;
    if (d == 0) return false;
    const int sg = d > 0 ? 1 : -1;
    if (sign == 0) sign = sg;
    if (sg != sign) return false;
  }
  return true;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::string system_string(const std::vector<std::vector<Monomial>>& supports, const std::vector<Monomial>& marked) {
  std::ostringstream os;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    os << (i ? "|" : "") << monomial_string(marked[i]) << ":";
    for (std::size_t j = 0; j < supports[i].size(); ++j) os << (j ? "+" : "") << monomial_string(supports[i][j]);
  }
  return os.str();
}

using Orbit = std::vector<std::vector<Monomial>>;  // per equation: marked, then sorted support

Orbit orbit_form(const std::vector<Perm>& syms, const std::vector<std::vector<Monomial>>& supports,
                 const std::vector<Monomial>& marked, bool swap_equations) {
  Orbit best;
  for (const auto& p : syms) {
    Orbit o;
    for (std::size_t i = 0; i < supports.size(); ++i) {
      std::vector<Monomial> e{apply(p, marked[i])};
      for (const auto& m : supports[i]) e.push_back(apply(p, m));
      std::sort(e.begin() + 1, e.end());
      o.push_back(std::move(e));
    }
    if (best.empty() || o < best) best = o;
    if (swap_equations) {
      std::reverse(o.begin(), o.end());
      if (o < best) best = std::move(o);
    }
  }
  return best;
}

struct Candidate {
  std::vector<std::vector<Monomial>> supports;  // marked first
  std::vector<Monomial> marked;
};

}  // namespace

std::string vector_key(const K3Vector& v) {
  std::ostringstream os;
  os << v.m << "," << v.n;
  for (const auto& w : v.weights) os << "," << w;
  return os.str();
}

K3Vector parse_vector(const std::string& line) {
  std::vector<Integer> xs;
  std::string tok;
  for (char c : line) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      tok += c;
    } else if (!tok.empty()) {
      xs.emplace_back(tok);
      tok.clear();
    }
  }
  if (!tok.empty()) xs.emplace_back(tok);
  if (xs.size() < 4) throw std::invalid_argument("vector needs m, n and at least two weights: " + line);
  for (const auto& x : xs)
    if (x <= 0) throw std::invalid_argument("entries must be positive: " + line);
  return {xs[0], xs[1], std::vector<Integer>(xs.begin() + 2, xs.end())};
}

std::string canonical_key(const std::vector<Integer>& weights, const CoxSystem& system,
                          const std::vector<Monomial>& marked, bool swap_equations) {
  std::string best;
  bool first = true;
  for (const auto& p : weight_symmetries(weights)) {
    std::vector<std::pair<Monomial, std::vector<Monomial>>> eqs;
    for (std::size_t i = 0; i < system.supports.size(); ++i) {
      std::vector<Monomial> s;
      for (const auto& m : system.supports[i]) s.push_back(apply(p, m));
      std::sort(s.begin(), s.end());
      eqs.push_back({apply(p, marked[i]), std::move(s)});
    }
    std::vector<std::vector<decltype(eqs)::value_type>> orders{eqs};
    if (swap_equations) orders.push_back(std::vector(eqs.rbegin(), eqs.rend()));
    for (const auto& o : orders) {
      std::vector<std::vector<Monomial>> sup;
      std::vector<Monomial> mk;
      for (const auto& [m, s] : o) {
        mk.push_back(m);
        sup.push_back(s);
      }
      auto k = system_string(sup, mk);
      if (first || k < best) best = std::move(k);
      first = false;
    }
  }
  return best;
}

std::vector<std::vector<Monomial>> vertex_supports(const PairEquations& e, const GoodPair& p) {
  std::vector<std::vector<Monomial>> out;
  for (std::size_t i = 0; i < e.system.supports.size(); ++i) {
    std::vector<Monomial> keep;
    for (const auto& m : e.system.supports[i]) {
      const auto u = dehomogenize(e.ambient, {m}, e.divisors[i]);
      if (p.inner.parts[i].vertex_index(u[0]) != Polytope::npos) keep.push_back(m);
    }
    out.push_back(std::move(keep));
  }
  return out;
}

std::vector<std::vector<Block>> compatible_outer_blocks(const K3Vector& v) {
  const std::size_t r = v.weights.size();
  const auto syms = weight_symmetries(v.weights);
  std::vector<std::vector<Block>> out;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << r); ++mask) {
    Block b1, b2;
    Integer d1 = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (mask >> i & 1) {
        b1.push_back(i);
        d1 += v.weights[i];
      } else {
        b2.push_back(i);
      }
    }
    if (d1 != v.m) continue;
    bool least = true;
    for (const auto& p : syms) {
      Block img;
      for (auto i : b1) img.push_back(p[i]);
      std::sort(img.begin(), img.end());
      if (img < b1) {
        least = false;
        break;
      }
    }
    if (least) out.push_back({b1, b2});
  }
  return out;
}

VectorClassification classify_vector(const K3Vector& v, const ClassifyOptions& opts) {
  VectorClassification res;
  res.vector = v;
  const std::size_t r = v.weights.size();
  Integer total = 0;
  for (const auto& w : v.weights) total += w;
  if (v.m + v.n != total) return res;  // not anticanonical: no pairs
  const ToricAmbient a = weighted_projective_space(v.weights);
  const Integer degrees[2] = {v.m, v.n};

  std::vector<Candidate> candidates;
  const auto syms = weight_symmetries(v.weights);
  std::set<Orbit> seen;
  for (const auto& blocks : compatible_outer_blocks(v)) {
    ++res.stats.outer_partitions;
    std::vector<Monomial> marked;
    std::vector<std::vector<Monomial>> pool;
    for (std::size_t i = 0; i < 2; ++i) {
      Monomial mk(r, 0);
      for (auto k : blocks[i]) mk[k] = 1;
      auto all = monomials_of_degree(v.weights, degrees[i]);
      std::erase(all, mk);
      marked.push_back(mk);
      pool.push_back(std::move(all));
    }
    std::vector<std::vector<long long>> shifted[2];
    for (std::size_t i = 0; i < 2; ++i)
      for (const auto& m : pool[i]) {
        std::vector<long long> c(r);
        for (std::size_t k = 0; k < r; ++k) c[k] = m[k] - marked[i][k];
        shifted[i].push_back(std::move(c));
      }
    // r non-marked vertices in total, at least one per equation.
    for (std::size_t k1 = 1; k1 < r; ++k1) {
      for_each_subset(pool[0].size(), k1, [&](const std::vector<std::size_t>& s1) {
        for_each_subset(pool[1].size(), r - k1, [&](const std::vector<std::size_t>& s2) {
          ++res.stats.candidates;
          std::vector<std::vector<long long>> cols;
          for (auto j : s1) cols.push_back(shifted[0][j]);
          for (auto j : s2) cols.push_back(shifted[1][j]);
          if (!positive_circuit(cols)) return;
          Candidate c;
          c.marked = marked;
          c.supports.resize(2);
          c.supports[0].push_back(marked[0]);
          for (auto j : s1) c.supports[0].push_back(pool[0][j]);
          c.supports[1].push_back(marked[1]);
          for (auto j : s2) c.supports[1].push_back(pool[1][j]);
          ++res.stats.simplex_candidates;
          if (seen.insert(orbit_form(syms, c.supports, c.marked, v.m == v.n)).second) candidates.push_back(std::move(c));
        });
      });
    }
  }
  res.stats.orbits = candidates.size();

  struct Found {
    std::optional<ClassificationRow> row;
    bool good = false, budget = false;
  };
  std::vector<Found> found(candidates.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < candidates.size(); t = next++) {
      const auto& c = candidates[t];
      GoodPair p;
      try {
        p = pair_from_equations(a, CoxSystem{c.supports}, c.marked);
      } catch (const PairError&) {
        continue;
      }
      if (!is_delsarte(p)) continue;
      found[t].good = true;
      CoxSystem full;
      for (std::size_t i = 0; i < 2; ++i) {
        auto sup = monomials_for_divisor(a, lattice_points(p.inner.parts[i]), divisor_of(c.marked[i]));
        std::sort(sup.begin(), sup.end());
        full.supports.push_back(std::move(sup));
      }
      const auto qs = is_quasismooth_ci(a, full, QsOptions{opts.budget, 1, false});
      if (qs.status == QsStatus::budget_exceeded) found[t].budget = true;
      if (qs.status != QsStatus::quasismooth) continue;
      ClassificationRow row;
      row.system.supports = c.supports;
      for (auto& s : row.system.supports) std::sort(s.begin(), s.end());
      row.marked = c.marked;
      row.quasismooth = true;
      row.irreducible = is_irreducible(p.outer).irreducible;
      const GoodPair d = dual_good_pair(p);
      const auto de = equations_from_pair(d);
      row.dual_ambient = fake_wps_data(de.ambient);
      row.dual_system.supports = vertex_supports(de, d);
      row.dual_marked = de.marked;
      row.dual_status = is_quasismooth_ci(de.ambient, de.system, QsOptions{opts.budget, 1, false}).status;
      row.dual_irreducible = is_irreducible(d.outer).irreducible;
      row.key = canonical_key(v.weights, row.system, row.marked, v.m == v.n);
      row.pair = std::move(p);
      found[t].row = std::move(row);
    }
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (auto& f : found) {
    res.stats.good_pairs += f.good;
    res.budget_exceeded = res.budget_exceeded || f.budget;
    if (!f.row) continue;
    ++res.stats.quasismooth_pairs;
    const bool seen = std::any_of(res.rows.begin(), res.rows.end(), [&](const auto& x) { return x.key == f.row->key; });
    if (!seen) res.rows.push_back(std::move(*f.row));
  }
  std::sort(res.rows.begin(), res.rows.end(), [](const auto& x, const auto& y) { return x.key < y.key; });
  for (std::size_t i = 0; i < res.rows.size(); ++i) res.rows[i].pair_id = i;
  return res;
}

}  // namespace nefpart
