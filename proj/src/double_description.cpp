#include "nefpart/double_description.hpp"

#include <boost/dynamic_bitset.hpp>

namespace nefpart {

namespace {

struct Ray {
  ZVector v;
  boost::dynamic_bitset<> tight;
};

Integer dot(const ZVector& a, const ZVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

}  // namespace

ConeGenerators cone_from_constraints(const ZMatrix& c) {
  const Eigen::Index dim = c.cols();
  const std::size_t m = static_cast<std::size_t>(c.rows());
  std::vector<ZVector> lin;
  for (Eigen::Index i = 0; i < dim; ++i) lin.push_back(ZVector::Unit(dim, i));
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const ZVector a = c.row(static_cast<Eigen::Index>(k)).transpose();

    std::size_t pick = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        pick = i;
        break;
      }

    if (pick < lin.size()) {
      ZVector l = lin[pick];
      Integer al = dot(a, l);
      if (al < 0) {
        l = -l;
        al = -al;
      }
      std::vector<ZVector> rest;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == pick) continue;
        rest.push_back(primitive_integer(ZVector(al * lin[i] - dot(a, lin[i]) * l)));
      }
      lin = std::move(rest);
      for (auto& r : rays) {
        const Integer ar = dot(a, r.v);
        if (ar != 0) r.v = primitive_integer(ZVector(al * r.v - ar * l));
        r.tight.set(k);
      }
      boost::dynamic_bitset<> t(m);
      for (std::size_t j = 0; j < k; ++j) t.set(j);
      rays.push_back({l, std::move(t)});
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) {
        pos.push_back(i);
        next.push_back(rays[i]);
      } else if (val[i] < 0) {
        neg.push_back(i);
      } else {
        next.push_back(rays[i]);
        next.back().tight.set(k);
      }
    }
    const long need = static_cast<long>(dim) - static_cast<long>(lin.size()) - 2;
    for (auto p : pos)
      for (auto q : neg) {
        boost::dynamic_bitset<> common = rays[p].tight & rays[q].tight;
        if (static_cast<long>(common.count()) < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        ZVector v = primitive_integer(ZVector(val[p] * rays[q].v - val[q] * rays[p].v));
        common.set(k);
        next.push_back({std::move(v), std::move(common)});
      }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lin);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

}  // namespace nefpart
