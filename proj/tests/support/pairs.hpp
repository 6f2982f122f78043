#pragma once

// Root pairs exercised by the transform tests: per algebra, a blade pair, two
// random pairs and both degenerate pairs g = f and g = -f.

#include <cstdint>
#include <vector>

#include "clifford_mellin/roots.hpp"

namespace pairs {

namespace cm = clifford_mellin;

inline cm::RootPair blade_pair(cm::Signature sig) {
  if (sig == cm::Signature::cl02()) return cm::RootPair::quaternion_default();
  const auto blade =
      cm::Multivector::basis(sig, sig == cm::Signature::cl20() ? cm::kE12 : cm::kE2);
  return cm::RootPair::from(blade, blade);
}

inline std::vector<cm::RootPair> for_algebra(cm::Signature sig, std::uint64_t seed) {
  const auto r = cm::random_roots(sig, 4, seed);
  return {blade_pair(sig), cm::RootPair(r[0], r[1]), cm::RootPair(r[2], r[3]),
          cm::RootPair(r[0], r[0]), cm::RootPair(r[1], cm::validate_root(-r[1].value()))};
}

inline std::vector<cm::RootPair> all(std::uint64_t seed) {
  std::vector<cm::RootPair> out;
  for (cm::Signature sig : cm::kAllSignatures) {
    for (auto& p : for_algebra(sig, seed)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace pairs
