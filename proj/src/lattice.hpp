#pragma once

// Internal lattice machinery shared by the generators and the defect
// injection code.  Not part of the public surface.

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pqmap/map.hpp"

namespace pqmap::lattice {

// ---- generic lattice-region builder --------------------------------------
//
// A lattice is described by a per-vertex list of outgoing directions in
// counterclockwise order together with, for each direction, the face key on
// the RIGHT of that dart (face walks keep the face on the right under the
// phi = sigma(twin) convention).  Building a map from a face set is then
// uniform across the square, triangular and honeycomb lattices.

using Coord = std::pair<int, int>;

struct LatticeMapResult {
    PlanarMap map;
    std::map<Coord, VertexId> vertex_id;
    std::map<Coord, FaceId> face_id;  // by face key; filled after build
};

template <typename Lattice>
LatticeMapResult build_lattice_map(const Lattice& lat,
                                   const std::set<typename Lattice::FaceKey>& faces) {
    using FaceKey = typename Lattice::FaceKey;

    // Edges present = sides of present faces.
    std::set<std::pair<Coord, int>> darts_present;  // (vertex, direction index)
    for (const FaceKey& f : faces) {
        for (const auto& [v, dir] : lat.face_sides(f)) {
            darts_present.insert({v, dir});
            darts_present.insert(lat.reverse(v, dir));
        }
    }

    std::map<Coord, VertexId> vid;
    for (const auto& [v, dir] : darts_present) {
        (void)dir;
        vid.emplace(v, 0);
    }
    int next_vertex = 0;
    for (auto& [coord, id] : vid) id = next_vertex++;

    // Edge ids: ascending by canonical dart (vertex, dir) with its reverse
    // later in the set order.
    std::map<std::pair<Coord, int>, DartId> dart_id;
    int next_edge = 0;
    for (const auto& key : darts_present) {
        if (dart_id.count(key)) continue;
        auto rev = lat.reverse(key.first, key.second);
        dart_id[key] = 2 * next_edge;
        dart_id[rev] = 2 * next_edge + 1;
        ++next_edge;
    }

    std::vector<std::vector<DartId>> rotations(next_vertex);
    for (const auto& [coord, v] : vid) {
        for (int dir = 0; dir < lat.direction_count(coord); ++dir) {
            auto it = darts_present.find({coord, dir});
            if (it != darts_present.end()) rotations[v].push_back(dart_id.at(*it));
        }
    }

    // Outer dart: any dart whose right face is absent.
    DartId outer = kNoDart;
    for (const auto& key : darts_present) {
        auto rf = lat.right_face(key.first, key.second);
        if (!rf || !faces.count(*rf)) {
            outer = dart_id.at(key);
            break;
        }
    }

    LatticeMapResult result{PlanarMap::build(std::move(rotations), outer), std::move(vid), {}};

    // Recover face ids from any present face's canonical dart.
    for (const FaceKey& f : faces) {
        auto [v, dir] = lat.face_sides(f).front();
        DartId d = dart_id.at({v, dir});
        result.face_id[lat.face_anchor(f)] = result.map.face_of(d);
    }
    return result;
}

// Square lattice: vertex (x, y); directions E, N, W, S; face key = lower
// left corner of the unit square.
struct SquareLattice {
    using FaceKey = Coord;

    static constexpr int kDirs = 4;
    int direction_count(const Coord&) const { return kDirs; }

    static Coord step(const Coord& v, int dir) {
        static constexpr int dx[] = {1, 0, -1, 0};
        static constexpr int dy[] = {0, 1, 0, -1};
        return {v.first + dx[dir], v.second + dy[dir]};
    }
    std::pair<Coord, int> reverse(const Coord& v, int dir) const {
        return {step(v, dir), (dir + 2) % 4};
    }
    // Right faces: E -> (x, y-1), N -> (x, y), W -> (x-1, y), S -> (x-1, y-1).
    std::optional<FaceKey> right_face(const Coord& v, int dir) const {
        auto [x, y] = v;
        switch (dir) {
            case 0: return FaceKey{x, y - 1};
            case 1: return FaceKey{x, y};
            case 2: return FaceKey{x - 1, y};
            default: return FaceKey{x - 1, y - 1};
        }
    }
    // Clockwise walk of square (x, y): N at (x,y), E at (x,y+1), S at
    // (x+1,y+1), W at (x+1,y).
    std::vector<std::pair<Coord, int>> face_sides(const FaceKey& f) const {
        auto [x, y] = f;
        return {{{x, y}, 1}, {{x, y + 1}, 0}, {{x + 1, y + 1}, 3}, {{x + 1, y}, 2}};
    }
    Coord face_anchor(const FaceKey& f) const { return f; }
};

// Triangular lattice in axial coordinates; directions at 0, 60, ..., 300
// degrees.  Up-triangle U(a,b) = {(a,b),(a+1,b),(a,b+1)}; down-triangle
// D(a,b) = {(a+1,b),(a,b+1),(a+1,b+1)}.  Face keys encode up/down in the
// parity trick key = (2a + up, b).
struct TriangularLattice {
    using FaceKey = std::pair<Coord, bool>;  // (a, b), is_up

    static constexpr int kDirs = 6;
    int direction_count(const Coord&) const { return kDirs; }

    static Coord step(const Coord& v, int dir) {
        static constexpr int da[] = {1, 0, -1, -1, 0, 1};
        static constexpr int db[] = {0, 1, 1, 0, -1, -1};
        return {v.first + da[dir], v.second + db[dir]};
    }
    std::pair<Coord, int> reverse(const Coord& v, int dir) const {
        return {step(v, dir), (dir + 3) % 6};
    }
    std::optional<FaceKey> right_face(const Coord& v, int dir) const {
        auto [a, b] = v;
        switch (dir) {
            case 0: return FaceKey{{a, b - 1}, false};   // +u  : D(a, b-1)
            case 1: return FaceKey{{a, b}, true};        // +v  : U(a, b)
            case 2: return FaceKey{{a - 1, b}, false};   // v-u : D(a-1, b)
            case 3: return FaceKey{{a - 1, b}, true};    // -u  : U(a-1, b)
            case 4: return FaceKey{{a - 1, b - 1}, false};  // -v
            default: return FaceKey{{a, b - 1}, true};   // u-v : U(a, b-1)
        }
    }
    std::vector<std::pair<Coord, int>> face_sides(const FaceKey& f) const {
        auto [a, b] = f.first;
        if (f.second) {
            // U(a,b) clockwise: +v at (a,b), u-v at (a,b+1), -u at (a+1,b).
            return {{{a, b}, 1}, {{a, b + 1}, 5}, {{a + 1, b}, 3}};
        }
        // D(a,b) clockwise: +u at (a,b+1), -v at (a+1,b+1), v-u at (a+1,b).
        return {{{a, b + 1}, 0}, {{a + 1, b + 1}, 4}, {{a + 1, b}, 2}};
    }
    Coord face_anchor(const FaceKey& f) const {
        return {2 * f.first.first + (f.second ? 1 : 0), f.first.second};
    }
};

// Honeycomb as a brick wall: all horizontal edges, vertical edges where
// x + y is even; hexagon key (x, y), x + y even, spanning columns x..x+2
// between rows y and y+1.
struct BrickLattice {
    using FaceKey = Coord;

    // Directions: 0 = E, 1 = N, 2 = W, 3 = S; N exists iff x+y even, S iff
    // x+y odd.
    int direction_count(const Coord&) const { return 4; }

    static Coord step(const Coord& v, int dir) {
        static constexpr int dx[] = {1, 0, -1, 0};
        static constexpr int dy[] = {0, 1, 0, -1};
        return {v.first + dx[dir], v.second + dy[dir]};
    }
    std::pair<Coord, int> reverse(const Coord& v, int dir) const {
        return {step(v, dir), (dir + 2) % 4};
    }
    static bool even(int t) { return ((t % 2) + 2) % 2 == 0; }
    std::optional<FaceKey> right_face(const Coord& v, int dir) const {
        auto [x, y] = v;
        switch (dir) {
            case 0: return FaceKey{even(x + (y - 1)) ? x : x - 1, y - 1};
            case 1:
                if (!even(x + y)) return std::nullopt;
                return FaceKey{x, y};
            case 2: return FaceKey{even((x - 1) + y) ? x - 1 : x - 2, y};
            default:
                if (even(x + y)) return std::nullopt;
                return FaceKey{x - 2, y - 1};
        }
    }
    std::vector<std::pair<Coord, int>> face_sides(const FaceKey& f) const {
        auto [x, y] = f;
        // Clockwise hexagon walk with the face on the right.
        return {{{x, y}, 1},     {{x, y + 1}, 0},     {{x + 1, y + 1}, 0},
                {{x + 2, y + 1}, 3}, {{x + 2, y}, 2}, {{x + 1, y}, 2}};
    }
    Coord face_anchor(const FaceKey& f) const { return f; }
};

inline std::set<SquareLattice::FaceKey> square_block(int n) {
    std::set<Coord> faces;
    for (int x = -n; x < n; ++x)
        for (int y = -n; y < n; ++y) faces.insert({x, y});
    return faces;
}

inline int hex_norm(int a, int b) { return std::max({std::abs(a), std::abs(b), std::abs(a + b)}); }

inline std::set<TriangularLattice::FaceKey> hexagon_ball(int n) {
    std::set<TriangularLattice::FaceKey> faces;
    for (int a = -n - 1; a <= n; ++a) {
        for (int b = -n - 1; b <= n; ++b) {
            if (hex_norm(a, b) <= n && hex_norm(a + 1, b) <= n && hex_norm(a, b + 1) <= n)
                faces.insert({{a, b}, true});
            if (hex_norm(a + 1, b) <= n && hex_norm(a, b + 1) <= n && hex_norm(a + 1, b + 1) <= n)
                faces.insert({{a, b}, false});
        }
    }
    return faces;
}

// Vertex-sharing growth of a triangular-lattice face set, starting from the
// single up-triangle at the origin.
inline std::set<TriangularLattice::FaceKey> triangle_growth(int steps) {
    std::set<TriangularLattice::FaceKey> faces{{{0, 0}, true}};
    TriangularLattice lat;
    for (int i = 0; i < steps; ++i) {
        std::set<Coord> verts;
        for (const auto& f : faces)
            for (const auto& [v, dir] : lat.face_sides(f)) {
                verts.insert(v);
                verts.insert(TriangularLattice::step(v, dir));
            }
        std::set<TriangularLattice::FaceKey> grown = faces;
        for (const Coord& v : verts) {
            // All six faces around a vertex (a,b).
            auto [a, b] = v;
            grown.insert({{a, b}, true});
            grown.insert({{a - 1, b}, false});
            grown.insert({{a - 1, b}, true});
            grown.insert({{a - 1, b - 1}, false});
            grown.insert({{a, b - 1}, true});
            grown.insert({{a, b - 1}, false});
        }
        faces = std::move(grown);
    }
    return faces;
}


}  // namespace pqmap::lattice
