#pragma once

// Cross-identification of oracle results with built geodesics. Kept apart from the
// oracle itself, which must not see the builder.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "geodesics.hpp"
#include "shooting.hpp"

namespace hypertet {

struct Identification {
  std::optional<GeodesicType> type;  // from the crossing counts
  std::array<int, 6> counts{};
  bool matched = false;              // coincides with a built copy
  int copy = -1;                     // 0..2 rotations, 3..5 their mirror images
  double length_diff = 0;            // |oracle - built|
};

// The six images of the built geodesic under rotations about A4 and the reflection.
inline std::array<GeodesicPath<double>, 6> all_copies(const Surface<double>& s, const GeodesicPath<double>& g) {
  auto rot = symmetric_copies(s, g);
  auto mir = mirror_copy(s, g);
  auto mrot = symmetric_copies(s, mir);
  return {rot[0], rot[1], rot[2], mrot[0], mrot[1], mrot[2]};
}

template <std::floating_point Real>
std::vector<Identification> identify_found(const Surface<double>& s, const OracleReport<Real>& r, double tol = 1e-8) {
  std::map<std::pair<int, int>, std::array<GeodesicPath<double>, 6>> built;
  std::vector<Identification> out;
  for (const auto& g : r.found) {
    Identification id;
    id.counts = g.edge_counts();
    id.type = g.type;
    if (g.type) {
      auto key = std::make_pair(g.type->p, g.type->q);
      auto it = built.find(key);
      if (it == built.end()) it = built.emplace(key, all_copies(s, build_geodesic(s, *g.type))).first;
      for (int c = 0; c < 6 && !id.matched; ++c) {
        const auto& b = it->second[c];
        if (same_closed_path(b.crossings, g.crossings, tol)) {
          id.length_diff = std::abs(double(g.length) - b.length);
          id.matched = id.length_diff < tol;
          id.copy = c;
        }
      }
    }
    out.push_back(id);
  }
  return out;
}

} // namespace hypertet
