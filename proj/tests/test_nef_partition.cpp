#include "nefpart/nef_partition.hpp"
#include "nefpart/linalg.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "reference_data.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace nefpart;
using namespace nefpart::testing;

namespace {

Polytope hull0(std::initializer_list<QVector> pts) {
  std::vector<QVector> v(pts);
  v.push_back(QVector::Zero(v.front().size()));
  return convex_hull(v);
}

std::size_t polar_index(const Polytope& delta, const ZVector& ray) {
  return polar(delta).vertex_index(to_rational(ray));
}

VertexPartition by_rays(const Polytope& delta, const std::vector<ZVector>& rays,
                        std::initializer_list<std::initializer_list<int>> labels) {
  std::vector<Block> blocks;
  for (const auto& b : labels) {
    Block out;
    for (int l : b) out.push_back(polar_index(delta, rays[static_cast<std::size_t>(l - 1)]));
    blocks.push_back(out);
  }
  return canonical_partition(blocks);
}

std::size_t block_of(const VertexPartition& p, std::size_t idx) {
  for (std::size_t i = 0; i < p.s(); ++i)
    if (std::find(p.blocks[i].begin(), p.blocks[i].end(), idx) != p.blocks[i].end()) return i;
  return p.s();
}

std::set<std::vector<std::string>> point_partition(const VertexPartition& p, const Polytope& polar_poly) {
  std::set<std::vector<std::string>> out;
  for (const auto& b : p.blocks) {
    std::vector<std::string> pts;
    for (auto i : b) pts.push_back(to_string(polar_poly.vertices()[i]));
    std::sort(pts.begin(), pts.end());
    out.insert(pts);
  }
  return out;
}

std::vector<std::string> labels_of(std::initializer_list<QVector> pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(to_string(p));
  std::sort(out.begin(), out.end());
  return out;
}

ClassGroupElement class_in(const ClassGroupElement& c, const ZMatrix& t) {
  ZVector v(2);
  v << c.free[0], c.free[1];
  const ZVector w = t * v;
  return {{w(0), w(1)}, {}};
}

}  // namespace

TEST(Parts, P113TwoParts) {
  const auto delta = p113_delta();
  const auto p = by_rays(delta, p113_rays(), {{1}, {2, 3}});
  const auto parts = parts_from_partition(delta, p);
  const std::size_t b1 = block_of(p, polar_index(delta, p113_rays()[0]));
  EXPECT_EQ(parts[b1], hull0({q({-1, -2}), q({-1, 1})}));
  EXPECT_EQ(parts[1 - b1], convex_hull({q({0, -1}), q({0, 1}), q({Rational(2, 3), Rational(1, 3)})}));
  EXPECT_TRUE(is_gnp(delta, p).is_gnp);
}

TEST(Parts, P113ThreeParts) {
  const auto delta = p113_delta();
  const auto p = by_rays(delta, p113_rays(), {{1}, {2}, {3}});
  const auto parts = parts_from_partition(delta, p);
  auto part_of = [&](int label) { return parts[block_of(p, polar_index(delta, p113_rays()[label - 1]))]; };
  EXPECT_EQ(part_of(2), hull0({q({0, 1}), q({Rational(1, 3), Rational(2, 3)})}));
  EXPECT_EQ(part_of(3), hull0({q({0, -1}), q({Rational(1, 3), Rational(-1, 3)})}));
  EXPECT_EQ(part_of(1), hull0({q({-1, -2}), q({-1, 1})}));
}

TEST(Parts, TrivialPartitionIsDelta) {
  for (const auto& delta : {p113_delta(), blp2_delta(), k3_delta2()}) {
    Block all(polar(delta).vertices().size());
    std::iota(all.begin(), all.end(), 0);
    const VertexPartition p{{all}};
    EXPECT_EQ(parts_from_partition(delta, p)[0], delta);
    EXPECT_TRUE(is_gnp(delta, p).is_gnp);
  }
}

TEST(Parts, BlowUpPartition) {
  const auto delta = blp2_delta();
  const auto p = by_rays(delta, blp2_rays(), {{2, 4}, {1, 3}});
  const auto parts = parts_from_partition(delta, p);
  const std::size_t b = block_of(p, polar_index(delta, blp2_rays()[1]));
  EXPECT_EQ(parts[b], hull0({q({0, -1}), q({1, 0})}));
  EXPECT_EQ(parts[1 - b], hull0({q({-1, 1}), q({-1, 0}), q({1, 1})}));
}

TEST(Gnp, BlowUpWitness) {
  const auto delta = blp2_delta();
  const auto rays = blp2_rays();
  for (auto labels : {std::vector<std::vector<int>>{{2, 4}, {1, 3}}, {{1}, {2, 3, 4}}, {{2}, {1, 3, 4}}}) {
    std::vector<Block> blocks;
    for (const auto& b : labels) {
      Block out;
      for (int l : b) out.push_back(polar_index(delta, rays[static_cast<std::size_t>(l - 1)]));
      blocks.push_back(out);
    }
    const auto c = is_gnp(delta, canonical_partition(blocks));
    EXPECT_TRUE(c.is_gnp);
    ASSERT_EQ(c.certificate.size(), labels.size());
  }
  const auto bad = by_rays(delta, rays, {{2, 3}, {1, 4}});
  const auto c = is_gnp(delta, bad);
  ASSERT_FALSE(c.is_gnp);
  ASSERT_TRUE(c.witness);
  const std::size_t second = block_of(bad, polar_index(delta, rays[0]));
  EXPECT_EQ(c.witness->part, second);
  Block facet{polar_index(delta, rays[2]), polar_index(delta, rays[3])};
  std::sort(facet.begin(), facet.end());
  EXPECT_EQ(c.witness->facet, facet);
}

TEST(Gnp, CertificateVerticesSatisfyTheirFacet) {
  const auto delta = blp2_delta();
  const auto p = by_rays(delta, blp2_rays(), {{2, 4}, {1, 3}});
  const auto c = is_gnp(delta, p);
  const auto parts = parts_from_partition(delta, p);
  const Polytope dp = polar(delta);
  const auto& rays = dp.vertices();
  for (std::size_t i = 0; i < p.s(); ++i)
    for (std::size_t f = 0; f < c.facets.size(); ++f) {
      const QVector& m = c.certificate[i][f];
      EXPECT_NE(parts[i].vertex_index(m), Polytope::npos);
      for (auto r : c.facets[f]) EXPECT_EQ(m.dot(rays[r]), block_of(p, r) == i ? -1 : 0);
    }
}

TEST(AllGnps, P113AllFivePartitions) {
  EXPECT_EQ(all_gnps(p113_delta()).size(), 5u);
}

TEST(AllGnps, BlowUpTwoParts) {
  const auto delta = blp2_delta();
  const auto rays = blp2_rays();
  const auto gs = all_gnps(delta, 2);
  auto has = [&](const VertexPartition& p) {
    return std::any_of(gs.begin(), gs.end(), [&](const auto& g) { return g.partition == p; });
  };
  EXPECT_TRUE(has(by_rays(delta, rays, {{2, 4}, {1, 3}})));
  EXPECT_TRUE(has(by_rays(delta, rays, {{1}, {2, 3, 4}})));
  EXPECT_TRUE(has(by_rays(delta, rays, {{2}, {1, 3, 4}})));
  EXPECT_FALSE(has(by_rays(delta, rays, {{2, 3}, {1, 4}})));
  for (const auto& g : gs) EXPECT_EQ(g.s(), 2u);
}

TEST(AllGnps, ProjectiveLine) {
  const auto gs = all_gnps(convex_hull({q({-1}), q({1})}));
  EXPECT_EQ(gs.size(), 2u);
}

TEST(AllGnps, CapEnforced) {
  EXPECT_THROW(all_gnps(blp2_delta(), std::nullopt, 3), GeometryError);
}

TEST(Dual, P113) {
  const auto delta = p113_delta();
  const auto g = make_gnp(delta, by_rays(delta, p113_rays(), {{1}, {2, 3}}));
  const auto d = dual_gnp(g);
  const std::size_t b1 = block_of(g.partition, polar_index(delta, p113_rays()[0]));
  EXPECT_EQ(d.parts[b1], hull0({q({1, 0})}));
  EXPECT_EQ(d.parts[1 - b1], hull0({q({-1, -1}), q({-2, 1})}));
  EXPECT_EQ(d.delta_polar, convex_hull({q({0, 1}), q({-1, -2}), q({0, -1}), q({-1, 1}), q({Rational(2, 3), Rational(1, 3)})}));
  const std::set<std::vector<std::string>> expected{
      labels_of({q({0, -1}), q({0, 1}), q({Rational(2, 3), Rational(1, 3)})}), labels_of({q({-1, 1}), q({-1, -2})})};
  EXPECT_EQ(point_partition(d.partition, d.delta_polar), expected);
}

TEST(Dual, TrivialPartition) {
  const auto delta = p113_delta();
  const auto g = make_gnp(delta, VertexPartition{{{0, 1, 2}}});
  const auto d = dual_gnp(g);
  EXPECT_EQ(d.delta, polar(delta));
  EXPECT_EQ(d.parts[0], polar(delta));
  EXPECT_EQ(d.partition.s(), 1u);
}

TEST(Dual, NestedInnerPartition) {
  const auto g = gnp_from_parts({hull0({q({0, -1}), q({1, 0})}), hull0({q({-1, 0}), q({0, 1})})});
  const auto d = dual_gnp(g);
  EXPECT_EQ(d.parts[0], hull0({q({-1, 1}), q({-1, 0}), q({0, 1})}));
  EXPECT_EQ(d.parts[1], hull0({q({0, -1}), q({1, -1}), q({1, 0})}));
  EXPECT_EQ(d.delta, convex_hull({q({1, 1}), q({1, -1}), q({-1, 1}), q({-1, -1})}));
  EXPECT_TRUE(is_irreducible(g).irreducible);
}

TEST(GnpFromParts, RejectsNonPartition) {
  EXPECT_THROW(gnp_from_parts({convex_hull({q({-1, 0}), q({1, 1})}), hull0({q({0, 1})})}), GeometryError);
}

TEST(Irreducible, SquareSegments) {
  const auto delta = convex_hull({q({-1, -1}), q({-1, 1}), q({1, -1}), q({1, 1})});
  const auto dp = polar(delta);
  const Block vertical{dp.vertex_index(q({0, -1})), dp.vertex_index(q({0, 1}))};
  const Block horizontal{dp.vertex_index(q({-1, 0})), dp.vertex_index(q({1, 0}))};
  const auto p = canonical_partition({vertical, horizontal});
  const auto g = make_gnp(delta, p);
  const auto irr = is_irreducible(g);
  EXPECT_FALSE(irr.irreducible);
  ASSERT_EQ(irr.witness.size(), 1u);
  const auto ds = decompose_direct_sum(g);
  ASSERT_EQ(ds.size(), 2u);
  for (const auto& d : ds) {
    EXPECT_EQ(d.gnp.s(), 1u);
    EXPECT_EQ(d.gnp.delta.ambient_dim(), 1);
    EXPECT_EQ(d.basis.cols(), 1);
  }
}

TEST(Irreducible, IrreducibleIsSingleton) {
  const auto g = make_gnp(blp2_delta(), by_rays(blp2_delta(), blp2_rays(), {{2, 4}, {1, 3}}));
  ASSERT_TRUE(is_irreducible(g).irreducible);
  const auto ds = decompose_direct_sum(g);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].parts, (std::vector<std::size_t>{0, 1}));
}

TEST(Irreducible, ProductSplitsIntoFactors) {
  for (bool lattice : {true, false}) {
    const Polytope f = lattice ? blp2_delta() : p113_delta();
    const auto g1 = all_gnps(f, 2).front();
    std::vector<Polytope> parts;
    for (const auto& p : g1.parts) parts.push_back(embed(p, 0, 2));
    for (const auto& p : g1.parts) parts.push_back(embed(p, 2, 0));
    const auto g = gnp_from_parts(parts);
    EXPECT_EQ(g.delta, product(f, f));
    if (!lattice) EXPECT_THROW(decompose_direct_sum(g), GeometryError);
    const auto ds = decompose_direct_sum(g, !lattice);
    ASSERT_EQ(ds.size(), 2u);
    EXPECT_EQ(ds[0].parts, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(ds[1].parts, (std::vector<std::size_t>{2, 3}));
    for (const auto& d : ds) {
      EXPECT_EQ(d.gnp.delta.ambient_dim(), 2);
      EXPECT_EQ(polar(d.gnp.delta).vertices().size(), polar(f).vertices().size());
    }
  }
}

TEST(NefDivisors, BlowUpTable) {
  const auto delta = blp2_delta();
  const auto rays = blp2_rays();
  const auto a = ambient_from_polytope(delta);
  // e0 = [D1], e1 = [D4].
  ZMatrix b(2, 2);
  auto unit_class = [&](const ZVector& ray) {
    std::vector<Integer> e(4, 0);
    e[a.ray_index(ray)] = 1;
    return a.class_of(e);
  };
  const auto d1 = unit_class(rays[0]), d4 = unit_class(rays[3]);
  b << d1.free[0], d4.free[0], d1.free[1], d4.free[1];
  const ZMatrix t = unimodular_inverse(b);
  auto expect = [&](std::initializer_list<std::initializer_list<int>> labels,
                    std::vector<std::vector<long>> classes) {
    std::vector<std::initializer_list<int>> ls(labels);
    const auto p = by_rays(delta, rays, labels);
    const auto g = make_gnp(delta, p);
    const auto nd = nef_divisors(a, g);
    for (std::size_t k = 0; k < ls.size(); ++k) {
      const auto blk = block_of(p, polar_index(delta, rays[static_cast<std::size_t>(*ls[k].begin() - 1)]));
      const auto c = class_in(nd[blk].degree, t);
      EXPECT_EQ(c.free, (std::vector<Integer>{classes[k][0], classes[k][1]}));
    }
  };
  expect({{2, 4}, {1, 3}}, {{1, 0}, {2, -1}});
  expect({{1}, {2, 3, 4}}, {{1, 0}, {2, -1}});
  expect({{2}, {1, 3, 4}}, {{1, -1}, {2, 0}});
}

TEST(NefDivisors, TrivialIsAnticanonical) {
  const auto delta = k3_delta2();
  const auto a = ambient_from_polytope(delta);
  Block all(a.num_rays());
  std::iota(all.begin(), all.end(), 0);
  const auto nd = nef_divisors(a, make_gnp(delta, VertexPartition{{all}}));
  EXPECT_EQ(nd[0].degree, a.anticanonical_class());
}

// Random corpus: polars of random lattice polytopes in dimensions 2 and 3.
class GnpCorpus : public ::testing::Test {
 protected:
  static std::vector<GeneralizedNefPartition>& corpus() {
    static std::vector<GeneralizedNefPartition> c = [] {
      std::vector<GeneralizedNefPartition> out;
      std::mt19937 rng(2024);
      while (out.size() < 240) {
        const int n = out.size() % 3 == 2 ? 3 : 2;
        const auto delta = random_qfano_dual(rng, n, n == 2 ? 2 : 1, 2);
        if (polar(delta).vertices().size() > 7) continue;
        for (auto& g : all_gnps(delta))
          if (g.s() >= 2) out.push_back(std::move(g));
      }
      return out;
    }();
    return c;
  }
};

TEST_F(GnpCorpus, PartsMeetInOriginAndSumToDelta) {
  for (const auto& g : corpus()) {
    for (std::size_t i = 0; i < g.s(); ++i)
      for (std::size_t j = i + 1; j < g.s(); ++j) ASSERT_TRUE(meet_is_origin(g.parts[i], g.parts[j]));
    ASSERT_EQ(minkowski_sum(std::span<const Polytope>(g.parts)), g.delta);
  }
}

TEST_F(GnpCorpus, RandomPartitionsAgreeWithSumTest) {
  std::mt19937 rng(7);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto delta = random_qfano_dual(rng, 2, 3, 2);
    const std::size_t nv = polar(delta).vertices().size();
    std::uniform_int_distribution<std::size_t> pick(0, 2);
    std::vector<Block> blocks(3);
    for (std::size_t i = 0; i < nv; ++i) blocks[pick(rng)].push_back(i);
    std::erase_if(blocks, [](const Block& b) { return b.empty(); });
    const auto p = canonical_partition(blocks);
    const auto parts = parts_from_partition(delta, p);
    ASSERT_TRUE(delta.contains(minkowski_sum(std::span<const Polytope>(parts))));
    const auto c = is_gnp(delta, p);  // throws if the two tests disagree
    (c.is_gnp ? positives : negatives)++;
  }
  EXPECT_GT(positives, 0);
  EXPECT_GT(negatives, 0);
}

TEST_F(GnpCorpus, DualIsInvolution) {
  ASSERT_GE(corpus().size(), 200u);
  for (const auto& g : corpus()) {
    const auto d = dual_gnp(g);
    const auto dd = dual_gnp(d);
    ASSERT_EQ(dd.delta, g.delta);
    ASSERT_EQ(dd.partition, g.partition);
    for (std::size_t i = 0; i < g.s(); ++i) ASSERT_EQ(dd.parts[i], g.parts[i]);
  }
}

TEST_F(GnpCorpus, PolarIsHullOfDualParts) {
  for (const auto& g : corpus()) {
    const auto d = dual_gnp(g);
    std::vector<QVector> pts;
    for (const auto& p : d.parts) pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
    ASSERT_EQ(convex_hull(pts), g.delta_polar);
    ASSERT_TRUE(contains_origin_in_interior(d.delta));
    ASSERT_TRUE(contains_origin_in_interior(d.delta_polar));
    // Recovering the original parts from the dual side.
    for (std::size_t i = 0; i < g.s(); ++i) {
      std::vector<Halfspace> hs;
      for (std::size_t j = 0; j < g.s(); ++j)
        for (const auto& n : d.parts[j].vertices()) hs.push_back({n, Rational(i == j ? 1 : 0)});
      ASSERT_EQ(Polytope::from_inequalities(g.delta.ambient_dim(), hs), g.parts[i]);
    }
  }
}

TEST_F(GnpCorpus, DualityPreservesIrreducibility) {
  int irreducible = 0;
  for (const auto& g : corpus()) {
    if (!is_irreducible(g).irreducible) continue;
    ++irreducible;
    ASSERT_TRUE(is_irreducible(dual_gnp(g)).irreducible);
  }
  EXPECT_GT(irreducible, 0);
}
