#pragma once

#include "nefpart/nef_partition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nefpart {

// Inner part i is aligned with outer part i.
struct GoodPair {
  GeneralizedNefPartition inner;
  GeneralizedNefPartition outer;

  std::size_t s() const { return inner.s(); }
};

struct GoodPairCheck {
  bool ok = false;
  std::string diagnosis;  // empty when ok
};

// Throws GeometryError when the numbers of parts differ.
GoodPairCheck is_good_pair(const GeneralizedNefPartition& inner, const GeneralizedNefPartition& outer);
// Throws GeometryError with the diagnosis when the pair is not good.
GoodPair make_good_pair(GeneralizedNefPartition inner, GeneralizedNefPartition outer);

GoodPair dual_good_pair(const GoodPair& p);

// Inner parts are the hulls of the lattice points of the outer parts.
GoodPair saturated_pair(const GeneralizedNefPartition& outer);

struct MatrixLabel {
  std::size_t part = 0;
  std::optional<QVector> point;  // empty for the zero label
};

struct PairMatrix {
  ZMatrix entries;
  std::vector<MatrixLabel> row_labels;
  std::vector<MatrixLabel> col_labels;
};

PairMatrix pair_matrix(const GoodPair& p);
PairMatrix transpose(const PairMatrix& m);

bool is_delsarte(const GoodPair& p);

struct PairEquations {
  ToricAmbient ambient;
  CoxSystem system;
  std::vector<Monomial> marked;
  std::vector<TorusDivisor> divisors;
  std::vector<ClassGroupElement> degrees;
};

PairEquations equations_from_pair(const GoodPair& p);

struct PairError : std::invalid_argument {
  enum class Kind { marked_monomials, assumption, not_nef, not_good };
  Kind kind;
  PairError(Kind k, const std::string& what) : std::invalid_argument(what), kind(k) {}
};

GoodPair pair_from_equations(const ToricAmbient& a, const CoxSystem& system, const std::vector<Monomial>& marked);

// Tuples with one monomial per support multiplying to the product of all variables.
std::vector<std::vector<Monomial>> enumerate_marked_choices(const CoxSystem& system);

}  // namespace nefpart
