#include "nefpart/nef_partition.hpp"

#include "nefpart/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace nefpart {

namespace {

using Mask = std::uint32_t;

void check_cover(const VertexPartition& p, std::size_t nv) {
  std::vector<int> seen(nv, 0);
  for (const auto& b : p.blocks) {
    if (b.empty()) throw GeometryError("empty block in partition");
    for (auto i : b) {
      if (i >= nv) throw GeometryError("partition index out of range");
      ++seen[i];
    }
  }
  for (int c : seen)
    if (c != 1) throw GeometryError("partition does not cover the polar vertices exactly once");
}

Polytope part_for(const Polytope& delta, const std::vector<QVector>& rays, const std::vector<bool>& in_block) {
  std::vector<Halfspace> hs;
  for (std::size_t r = 0; r < rays.size(); ++r) hs.push_back({rays[r], Rational(in_block[r] ? 1 : 0)});
  return Polytope::from_inequalities(delta.ambient_dim(), hs);
}

struct FacetData {
  std::vector<Block> facets;
  std::vector<QMatrix> normals;
};

// Facets of the polar correspond to vertices of delta.
FacetData polar_facets(const Polytope& delta, const std::vector<QVector>& rays) {
  FacetData fd;
  const int n = delta.ambient_dim();
  for (const auto& m : delta.vertices()) {
    Block b;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (m.dot(rays[r]) == -1) b.push_back(r);
    QMatrix a(static_cast<Eigen::Index>(b.size()), n);
    for (std::size_t k = 0; k < b.size(); ++k) a.row(static_cast<Eigen::Index>(k)) = rays[b[k]].transpose();
    fd.facets.push_back(std::move(b));
    fd.normals.push_back(std::move(a));
  }
  return fd;
}

// The vertex m_{i,sigma}, if any.
std::optional<QVector> facet_vertex(const FacetData& fd, std::size_t f, const std::vector<QVector>& rays,
                                    const std::vector<bool>& in_block) {
  const auto& b = fd.facets[f];
  QVector rhs(static_cast<Eigen::Index>(b.size()));
  for (std::size_t k = 0; k < b.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = in_block[b[k]] ? -1 : 0;
  auto x = solve(fd.normals[f], rhs);
  if (!x) return std::nullopt;
  for (std::size_t r = 0; r < rays.size(); ++r)
    if (x->dot(rays[r]) < (in_block[r] ? -1 : 0)) return std::nullopt;
  return x;
}

std::vector<bool> block_flags(const Block& b, std::size_t nv) {
  std::vector<bool> f(nv, false);
  for (auto i : b) f[i] = true;
  return f;
}

Polytope hull_with_origin(int dim, std::vector<QVector> pts) {
  pts.push_back(QVector::Zero(dim));
  return Polytope::hull(dim, std::move(pts));
}

bool is_origin(const QVector& v) { return v.isZero(); }

}  // namespace

VertexPartition canonical_partition(std::vector<Block> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.empty() || b.empty()) return a.size() < b.size();
    return a.front() < b.front();
  });
  return {std::move(blocks)};
}

bool same_blocks(const VertexPartition& a, const VertexPartition& b) {
  return canonical_partition(a.blocks) == canonical_partition(b.blocks);
}

std::vector<Polytope> parts_from_partition(const Polytope& delta, const VertexPartition& partition) {
  const Polytope dp = polar(delta);
  check_cover(partition, dp.vertices().size());
  std::vector<Polytope> parts;
  for (const auto& b : partition.blocks)
    parts.push_back(part_for(delta, dp.vertices(), block_flags(b, dp.vertices().size())));
  return parts;
}

GnpCheck is_gnp(const Polytope& delta, const VertexPartition& partition) {
  const Polytope dp = polar(delta);
  const auto& rays = dp.vertices();
  check_cover(partition, rays.size());
  const FacetData fd = polar_facets(delta, rays);

  GnpCheck out;
  out.facets = fd.facets;
  out.is_gnp = true;
  for (std::size_t i = 0; i < partition.s() && out.is_gnp; ++i) {
    const auto flags = block_flags(partition.blocks[i], rays.size());
    std::vector<QVector> cert;
    for (std::size_t f = 0; f < fd.facets.size(); ++f) {
      auto m = facet_vertex(fd, f, rays, flags);
      if (!m) {
        out.is_gnp = false;
        out.witness = FacetWitness{i, fd.facets[f]};
        break;
      }
      cert.push_back(std::move(*m));
    }
    out.certificate.push_back(std::move(cert));
  }
  if (!out.is_gnp) out.certificate.clear();

  const auto parts = parts_from_partition(delta, partition);
  const bool sum_equal = minkowski_sum(std::span<const Polytope>(parts)) == delta;
  if (sum_equal != out.is_gnp) throw std::logic_error("facet certificate and Minkowski sum disagree");
  return out;
}

GeneralizedNefPartition make_gnp(const Polytope& delta, const VertexPartition& partition) {
  if (!is_gnp(delta, partition).is_gnp) throw GeometryError("partition does not define a generalized nef partition");
  return {delta, polar(delta), partition, parts_from_partition(delta, partition)};
}

GeneralizedNefPartition gnp_from_parts(const std::vector<Polytope>& parts) {
  if (parts.empty()) throw GeometryError("no parts");
  const Polytope delta = minkowski_sum(std::span<const Polytope>(parts));
  if (!contains_origin_in_interior(delta)) throw GeometryError("origin not interior to the sum of parts");
  const Polytope dp = polar(delta);
  std::vector<Block> blocks(parts.size());
  for (std::size_t r = 0; r < dp.vertices().size(); ++r) {
    const QVector& n = dp.vertices()[r];
    std::optional<std::size_t> owner;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      Rational mn = 0;
      for (const auto& m : parts[i].vertices()) mn = std::min(mn, Rational(m.dot(n)));
      if (mn == -1 && !owner) owner = i;
      else if (mn != 0) throw GeometryError("parts do not form a generalized nef partition");
    }
    if (!owner) throw GeometryError("parts do not form a generalized nef partition");
    blocks[*owner].push_back(r);
  }
  VertexPartition p{blocks};
  check_cover(p, dp.vertices().size());
  const auto rebuilt = parts_from_partition(delta, p);
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (rebuilt[i] != parts[i]) throw GeometryError("parts do not form a generalized nef partition");
  return {delta, dp, std::move(p), parts};
}

std::vector<GeneralizedNefPartition> all_gnps(const Polytope& delta, std::optional<std::size_t> s, std::size_t cap) {
  const Polytope dp = polar(delta);
  const auto& rays = dp.vertices();
  const std::size_t nv = rays.size();
  if (nv > cap || nv > 31) throw GeometryError("too many polar vertices for partition enumeration");
  const FacetData fd = polar_facets(delta, rays);

  std::map<Mask, bool> memo;
  auto valid = [&](Mask m) {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::vector<bool> flags(nv);
    for (std::size_t i = 0; i < nv; ++i) flags[i] = (m >> i) & 1u;
    bool ok = true;
    for (std::size_t f = 0; f < fd.facets.size() && ok; ++f) ok = facet_vertex(fd, f, rays, flags).has_value();
    memo.emplace(m, ok);
    return ok;
  };

  std::vector<VertexPartition> found;
  std::vector<Block> current;
  std::function<void(Mask)> rec = [&](Mask remaining) {
    if (remaining == 0) {
      if (!s || current.size() == *s) found.push_back(canonical_partition(current));
      return;
    }
    if (s && current.size() >= *s) return;
    const Mask low = remaining & (~remaining + 1);
    const Mask rest = remaining ^ low;
    // Subsets of rest, each joined with the lowest element.
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      const Mask block = sub | low;
      if (valid(block)) {
        Block b;
        for (std::size_t i = 0; i < nv; ++i)
          if ((block >> i) & 1u) b.push_back(i);
        current.push_back(std::move(b));
        rec(remaining ^ block);
        current.pop_back();
      }
      if (sub == 0) break;
    }
  };
  rec(nv == 32 ? ~Mask(0) : (Mask(1) << nv) - 1);

  std::sort(found.begin(), found.end(), [](const VertexPartition& a, const VertexPartition& b) {
    return a.blocks.size() != b.blocks.size() ? a.blocks.size() < b.blocks.size() : a.blocks < b.blocks;
  });
  std::vector<GeneralizedNefPartition> out;
  for (const auto& p : found) out.push_back(make_gnp(delta, p));
  return out;
}

GeneralizedNefPartition dual_gnp(const GeneralizedNefPartition& g) {
  const int n = g.delta.ambient_dim();
  const auto& rays = g.delta_polar.vertices();
  std::vector<Polytope> nablas;
  for (std::size_t j = 0; j < g.s(); ++j) {
    std::vector<QVector> pts;
    for (auto r : g.partition.blocks[j]) pts.push_back(rays[r]);
    nablas.push_back(hull_with_origin(n, pts));
  }
  // H-form definition of each part.
  for (std::size_t j = 0; j < g.s(); ++j) {
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < g.s(); ++i)
      for (const auto& m : g.parts[i].vertices())
        if (!is_origin(m)) hs.push_back({m, Rational(i == j ? 1 : 0)});
    if (Polytope::from_inequalities(n, hs) != nablas[j]) throw std::logic_error("dual part disagrees with its H-form");
  }
  const Polytope nabla = minkowski_sum(std::span<const Polytope>(nablas));
  {
    std::vector<Halfspace> hs;
    for (const auto& part : g.parts)
      for (const auto& m : part.vertices())
        if (!is_origin(m)) hs.push_back({m, Rational(1)});
    if (Polytope::from_inequalities(n, hs) != nabla) throw std::logic_error("dual polytope differs from the intersection of polars");
  }
  const Polytope nabla_polar = polar(nabla);
  std::vector<QVector> all;
  for (const auto& part : g.parts)
    for (const auto& m : part.vertices()) all.push_back(m);
  if (Polytope::hull(n, all) != nabla_polar) throw std::logic_error("polar of the dual is not the hull of the parts");

  std::vector<Block> blocks;
  for (const auto& part : g.parts) {
    Block b;
    for (const auto& m : part.vertices()) {
      if (is_origin(m)) continue;
      const auto idx = nabla_polar.vertex_index(m);
      if (idx == Polytope::npos) throw std::logic_error("part vertex is not a vertex of the dual polar");
      b.push_back(idx);
    }
    std::sort(b.begin(), b.end());
    blocks.push_back(std::move(b));
  }
  VertexPartition p{std::move(blocks)};
  check_cover(p, nabla_polar.vertices().size());
  const auto rebuilt = parts_from_partition(nabla, p);
  for (std::size_t j = 0; j < g.s(); ++j)
    if (rebuilt[j] != nablas[j]) throw std::logic_error("dual partition does not recover its parts");
  return {nabla, nabla_polar, std::move(p), std::move(nablas)};
}

Irreducibility is_irreducible(const GeneralizedNefPartition& g) {
  const std::size_t s = g.s();
  if (s > 20) throw GeometryError("too many parts");
  std::vector<Mask> subsets;
  for (Mask m = 1; m + 1 < (Mask(1) << s); ++m) subsets.push_back(m);
  std::stable_sort(subsets.begin(), subsets.end(), [](Mask a, Mask b) {
    const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    // lexicographic on the sorted index lists
    for (std::size_t i = 0; i < 32; ++i) {
      const bool x = (a >> i) & 1u, y = (b >> i) & 1u;
      if (x != y) return x;
    }
    return false;
  });
  const bool canonical_setting = is_lattice_polytope(g.delta) && interior_lattice_count(g.delta) == 1;
  const QVector zero = QVector::Zero(g.delta.ambient_dim());
  for (Mask m : subsets) {
    std::vector<Polytope> ps;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s; ++i)
      if ((m >> i) & 1u) {
        ps.push_back(g.parts[i]);
        idx.push_back(i);
      }
    const Polytope sum = minkowski_sum(std::span<const Polytope>(ps));
    const bool relint = relative_interior_contains(sum, zero);
    if (canonical_setting && is_lattice_polytope(sum)) {
      const bool one = interior_lattice_count(sum) == 1;
      if (one != relint) throw std::logic_error("relative interior test and interior point count disagree");
    }
    if (relint) return {false, idx};
  }
  return {};
}

namespace {

// Coordinates of p in the basis columns of b.
Polytope in_basis(const Polytope& p, const ZMatrix& b) {
  const QMatrix qb = to_rational(b);
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) {
    auto c = solve(qb, v);
    if (!c) throw std::logic_error("polytope leaves its span");
    pts.push_back(std::move(*c));
  }
  return Polytope::hull(static_cast<int>(b.cols()), std::move(pts));
}

ZMatrix span_basis(const std::vector<Polytope>& ps, int n) {
  std::vector<ZVector> gens;
  for (const auto& p : ps)
    for (const auto& v : p.vertices())
      if (!is_origin(v)) gens.push_back(primitive_integer(v));
  ZMatrix g(n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) g.col(static_cast<Eigen::Index>(k)) = gens[k];
  return saturation_basis(g);
}

void decompose_into(const GeneralizedNefPartition& g, const ZMatrix& basis, const std::vector<std::size_t>& labels,
                    std::vector<DirectSummand>& out) {
  const auto irr = is_irreducible(g);
  if (irr.irreducible) {
    out.push_back({g, basis, labels});
    return;
  }
  const int n = g.delta.ambient_dim();
  std::vector<std::size_t> a = irr.witness, b;
  for (std::size_t i = 0; i < g.s(); ++i)
    if (!std::binary_search(a.begin(), a.end(), i)) b.push_back(i);
  std::vector<Polytope> pa, pb;
  for (auto i : a) pa.push_back(g.parts[i]);
  for (auto i : b) pb.push_back(g.parts[i]);
  const ZMatrix ba = span_basis(pa, n), bb = span_basis(pb, n);
  if (ba.cols() + bb.cols() != n) throw std::logic_error("summand spans are not complementary");
  ZMatrix both(n, n);
  both << ba, bb;
  if (rank(to_rational(both)) != n) throw std::logic_error("summand spans are not complementary");
  for (const auto& [idx, sb, ps] : {std::tuple{a, ba, pa}, std::tuple{b, bb, pb}}) {
    std::vector<Polytope> local;
    for (const auto& p : ps) local.push_back(in_basis(p, sb));
    std::vector<std::size_t> sub_labels;
    for (auto i : idx) sub_labels.push_back(labels[i]);
    decompose_into(gnp_from_parts(local), ZMatrix(basis * sb), sub_labels, out);
  }
}

}  // namespace

std::vector<DirectSummand> decompose_direct_sum(const GeneralizedNefPartition& g, bool allow_rational) {
  if (!allow_rational && !is_lattice_polytope(g.delta)) throw GeometryError("direct sum decomposition needs a lattice polytope");
  std::vector<std::size_t> labels(g.s());
  for (std::size_t i = 0; i < g.s(); ++i) labels[i] = i;
  const int n = g.delta.ambient_dim();
  std::vector<DirectSummand> out;
  decompose_into(g, ZMatrix::Identity(n, n), labels, out);
  std::sort(out.begin(), out.end(), [](const DirectSummand& x, const DirectSummand& y) { return x.parts < y.parts; });
  return out;
}

std::vector<NefDivisor> nef_divisors(const ToricAmbient& a, const GeneralizedNefPartition& g) {
  const auto& polar_rays = g.delta_polar.vertices();
  if (a.num_rays() != polar_rays.size()) throw ToricError("ambient does not match the partition");
  std::vector<NefDivisor> out;
  for (std::size_t i = 0; i < g.s(); ++i) {
    TorusDivisor d{std::vector<Rational>(a.num_rays(), Rational(0))};
    for (auto r : g.partition.blocks[i]) {
      const auto k = a.ray_index(to_integer(polar_rays[r]));
      if (k == Polytope::npos) throw ToricError("ambient does not match the partition");
      d.coefficients[k] = 1;
    }
    if (divisor_polytope(a, d) != g.parts[i]) throw std::logic_error("nef divisor polytope differs from its part");
    out.push_back({d, a.class_of(d)});
  }
  return out;
}

}  // namespace nefpart
