#pragma once

#include "nefpart/good_pair.hpp"
#include "nefpart/regularity.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nefpart {

// (m, n, w_1..w_r): two equations of degrees m and n in P(w).
struct K3Vector {
  Integer m, n;
  std::vector<Integer> weights;
  bool operator==(const K3Vector&) const = default;
};

std::string vector_key(const K3Vector& v);
K3Vector parse_vector(const std::string& line);

struct ClassificationRow {
  std::size_t pair_id = 0;
  CoxSystem system;  // vertex monomials only, in the variables of P(w)
  std::vector<Monomial> marked;
  GoodPair pair;
  bool quasismooth = false;
  bool irreducible = false;
  std::optional<FakeWpsData> dual_ambient;
  CoxSystem dual_system;  // vertex monomials, in the variables of the dual ambient
  std::vector<Monomial> dual_marked;
  QsStatus dual_status = QsStatus::quasismooth;
  bool dual_irreducible = false;
  std::string key;  // canonical form under the weight symmetry
};

struct ClassifyStats {
  std::size_t outer_partitions = 0;
  std::size_t candidates = 0;
  std::size_t simplex_candidates = 0;
  std::size_t orbits = 0;  // simplex candidates up to symmetry
  std::size_t good_pairs = 0;
  std::size_t quasismooth_pairs = 0;
};

struct VectorClassification {
  K3Vector vector;
  std::vector<ClassificationRow> rows;  // sorted by key, pair_id = position
  ClassifyStats stats;
  bool budget_exceeded = false;
};

struct ClassifyOptions {
  std::size_t budget = default_stratum_budget();
  unsigned jobs = 1;
};

// Outer blocks of variables with weight sums m and n, one per orbit of the weight symmetry.
std::vector<std::vector<Block>> compatible_outer_blocks(const K3Vector& v);

VectorClassification classify_vector(const K3Vector& v, const ClassifyOptions& opts = {});

// Canonical string of (supports, marked) under permutations of equal weights; also swaps equations when m = n.
std::string canonical_key(const std::vector<Integer>& weights, const CoxSystem& system,
                          const std::vector<Monomial>& marked, bool swap_equations);

// Monomials of the family of a pair that are vertices of the inner parts, in the variables of e.ambient.
std::vector<std::vector<Monomial>> vertex_supports(const PairEquations& e, const GoodPair& p);

}  // namespace nefpart
