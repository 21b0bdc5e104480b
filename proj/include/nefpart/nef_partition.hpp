#pragma once

#include "nefpart/toric.hpp"

#include <optional>
#include <vector>

namespace nefpart {

using Block = std::vector<std::size_t>;

// Blocks index the lexicographically sorted vertices of the polar polytope.
struct VertexPartition {
  std::vector<Block> blocks;

  std::size_t s() const { return blocks.size(); }
  bool operator==(const VertexPartition&) const = default;
};

// Sorted blocks, ordered by their smallest index.
VertexPartition canonical_partition(std::vector<Block> blocks);
// Same blocks regardless of order.
bool same_blocks(const VertexPartition& a, const VertexPartition& b);

struct GeneralizedNefPartition {
  Polytope delta;
  Polytope delta_polar;
  VertexPartition partition;
  std::vector<Polytope> parts;

  std::size_t s() const { return parts.size(); }
};

std::vector<Polytope> parts_from_partition(const Polytope& delta, const VertexPartition& partition);

struct FacetWitness {
  std::size_t part = 0;
  Block facet;  // vertices of the polar facet
};

struct GnpCheck {
  bool is_gnp = false;
  // certificate[i][f]: the vertex m_{i,sigma} for facet f of the polar, in facets order.
  std::vector<std::vector<QVector>> certificate;
  std::vector<Block> facets;
  std::optional<FacetWitness> witness;
};

GnpCheck is_gnp(const Polytope& delta, const VertexPartition& partition);

// Throws GeometryError when the partition does not define a GNP.
GeneralizedNefPartition make_gnp(const Polytope& delta, const VertexPartition& partition);
// Recovers the GNP whose parts are the given polytopes, keeping their order.
GeneralizedNefPartition gnp_from_parts(const std::vector<Polytope>& parts);

std::vector<GeneralizedNefPartition> all_gnps(const Polytope& delta, std::optional<std::size_t> s = std::nullopt,
                                              std::size_t cap = 12);

// Blocks of the result follow the part order of g.
GeneralizedNefPartition dual_gnp(const GeneralizedNefPartition& g);

struct Irreducibility {
  bool irreducible = true;
  std::vector<std::size_t> witness;  // parts whose sum has 0 in its relative interior
};

Irreducibility is_irreducible(const GeneralizedNefPartition& g);

struct DirectSummand {
  GeneralizedNefPartition gnp;    // in coordinates of the sublattice
  ZMatrix basis;                  // columns span the sublattice
  std::vector<std::size_t> parts; // indices into the input's parts
};

// Non-lattice input is rejected unless allow_rational is set; uniqueness is only known for lattice polytopes.
std::vector<DirectSummand> decompose_direct_sum(const GeneralizedNefPartition& g, bool allow_rational = false);

struct NefDivisor {
  TorusDivisor divisor;
  ClassGroupElement degree;
};

std::vector<NefDivisor> nef_divisors(const ToricAmbient& a, const GeneralizedNefPartition& g);

}  // namespace nefpart
