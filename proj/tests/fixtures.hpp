#pragma once

// Small hand-built maps shared by the test suites.

#include <set>
#include <vector>

#include "lattice.hpp"
#include "pqmap/map.hpp"

namespace pqmap::fixtures {

// Single k-gon: vertex i joined to i+1 by edge i, the disc bounded.
inline PlanarMap single_polygon(int k) {
    std::vector<std::vector<DartId>> rotations(k);
    for (int i = 0; i < k; ++i) rotations[i] = {2 * i, twin(2 * ((i + k - 1) % k))};
    return PlanarMap::build(std::move(rotations), 1);
}

// Wheel of k quadrilaterals around a hub of degree k: hub 0, rim vertices
// 1..2k, spokes to odd rim positions.
inline PlanarMap quad_wheel(int k) {
    // Spoke i: edge i, darts 2i (hub -> rim 2i), 2i+1.  Rim edge j: edge
    // k+j between rim vertices j and j+1 (mod 2k).
    auto rim = [&](int j) { return 1 + ((j % (2 * k)) + 2 * k) % (2 * k); };
    auto rim_dart = [&](int j) { return 2 * (k + ((j % (2 * k)) + 2 * k) % (2 * k)); };
    std::vector<std::vector<DartId>> bounded;
    for (int i = 0; i < k; ++i) {
        // Face between spokes i and i+1: hub -> rim(2i) -> rim(2i+1) ->
        // rim(2i+2) -> hub.
        bounded.push_back({2 * i, rim_dart(2 * i), rim_dart(2 * i + 1),
                           twin(2 * ((i + 1) % k))});
    }
    std::vector<DartId> outer;
    for (int j = 2 * k - 1; j >= 0; --j) outer.push_back(twin(rim_dart(j)));
    std::vector<VertexId> origin(2 * (k + 2 * k));
    for (int i = 0; i < k; ++i) {
        origin[2 * i] = 0;
        origin[2 * i + 1] = rim(2 * i);
    }
    for (int j = 0; j < 2 * k; ++j) {
        origin[rim_dart(j)] = rim(j);
        origin[twin(rim_dart(j))] = rim(j + 1);
    }
    return PlanarMap::build_from_orbits(bounded, outer, origin, 2 * k + 1);
}

inline PlanarMap square_region(const std::set<lattice::Coord>& faces) {
    return lattice::build_lattice_map(lattice::SquareLattice{}, faces).map;
}

}  // namespace pqmap::fixtures
