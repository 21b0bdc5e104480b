#pragma once

#include "nefpart/rational.hpp"

#include <vector>

namespace nefpart {

// Generators of the cone {y : c y >= 0}: lineality basis plus extreme rays
// modulo lineality, all primitive integer vectors.
struct ConeGenerators {
  std::vector<ZVector> lineality;
  std::vector<ZVector> rays;
};

ConeGenerators cone_from_constraints(const ZMatrix& c);

}  // namespace nefpart
