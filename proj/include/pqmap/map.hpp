#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pqmap/rational.hpp"

namespace pqmap {

// A map is encoded purely combinatorially as a rotation system over darts.
// Darts 2k and 2k+1 are the two orientations of undirected edge k, so the
// twin involution is d ^ 1 by construction.  Rotations list the darts
// leaving each vertex in counterclockwise order; faces are the orbits of
// the face-successor permutation phi(d) = rotation_next(twin(d)).  With
// counterclockwise rotations a bounded face walk keeps the face on its
// left; the outer orbit runs clockwise around the map.

using DartId = int;
using VertexId = int;
using EdgeId = int;
using FaceId = int;

constexpr DartId kNoDart = -1;

constexpr DartId twin(DartId d) { return d ^ 1; }
constexpr EdgeId edge_of(DartId d) { return d >> 1; }
constexpr DartId dart_of(EdgeId e) { return 2 * e; }

enum class MapErrorKind {
    BadHeader,
    BadCount,
    BadLine,
    DartOutOfRange,
    DartRepeated,
    DartMissing,
    TwinViolation,
    Disconnected,
    EulerViolation,
    OuterOutOfRange,
    ZeroDegreeVertex,
    BadAngle,
    InvalidArgument,
    PreconditionFailed,
    TheoremViolation,
};

const char* map_error_kind_name(MapErrorKind kind);

struct MapError : std::runtime_error {
    MapErrorKind kind;
    int line;  // 1-based line in the source file, 0 when not file-related

    MapError(MapErrorKind k, const std::string& message, int line_number = 0)
        : std::runtime_error(message), kind(k), line(line_number) {}
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    [[nodiscard]] bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Validates a raw rotation system without constructing a map: twin
// involution, rotation partition, connectivity, Euler V - E + F_all = 2,
// outer designation, and the no-degree-0 rule (one-vertex map excepted).
ValidationReport validate_rotation_system(const std::vector<std::vector<DartId>>& rotations,
                                          DartId outer_dart);

class PlanarMap {
  public:
    // Builds and fully validates; throws MapError on the first failure.
    static PlanarMap build(std::vector<std::vector<DartId>> rotations, DartId outer_dart);

    // Rebuilds a map from its face orbits (the phi-cycles, outer included).
    // Surgery code finds this form natural: it edits walks, not rotations.
    // `origin[d]` gives the origin vertex of each dart; vertex ids must be
    // dense in [0, V).
    static PlanarMap build_from_orbits(const std::vector<std::vector<DartId>>& bounded_walks,
                                       const std::vector<DartId>& outer_walk,
                                       const std::vector<VertexId>& origin,
                                       int vertex_count);

    [[nodiscard]] int vertex_count() const { return static_cast<int>(rotations_.size()); }
    [[nodiscard]] int edge_count() const { return dart_count_ / 2; }
    [[nodiscard]] int dart_count() const { return dart_count_; }
    [[nodiscard]] int face_count() const { return static_cast<int>(face_walks_.size()); }
    [[nodiscard]] int all_face_count() const { return face_count() + 1; }
    [[nodiscard]] int area() const { return face_count(); }

    [[nodiscard]] VertexId origin(DartId d) const { return dart_origin_[d]; }
    [[nodiscard]] VertexId head(DartId d) const { return dart_origin_[twin(d)]; }
    [[nodiscard]] std::span<const DartId> rotation(VertexId v) const { return rotations_[v]; }

    // sigma and its inverse: cyclic successor/predecessor among the darts
    // leaving origin(d).
    [[nodiscard]] DartId rotation_next(DartId d) const;
    [[nodiscard]] DartId rotation_prev(DartId d) const;

    // phi(d) = rotation_next(twin(d)); orbits of phi are the faces.
    [[nodiscard]] DartId face_next(DartId d) const { return rotation_next(twin(d)); }

    // Bounded face index of the dart's orbit, or kOuterFace.
    static constexpr FaceId kOuterFace = -2;
    [[nodiscard]] FaceId face_of(DartId d) const { return dart_face_[d]; }
    [[nodiscard]] bool on_outer(DartId d) const { return dart_face_[d] == kOuterFace; }

    [[nodiscard]] std::span<const DartId> face_walk(FaceId f) const { return face_walks_[f]; }
    [[nodiscard]] std::span<const DartId> outer_orbit() const { return outer_orbit_; }
    [[nodiscard]] DartId outer_dart() const { return outer_dart_; }

    // The boundary path: the outer orbit reversed and twinned, i.e. the
    // closed walk around the map with the map on its left.
    [[nodiscard]] const std::vector<DartId>& boundary_path() const { return boundary_path_; }
    [[nodiscard]] int perimeter() const { return static_cast<int>(boundary_path_.size()); }

    [[nodiscard]] int vertex_degree(VertexId v) const {
        return static_cast<int>(rotations_[v].size());
    }
    [[nodiscard]] int face_degree(FaceId f) const {
        return static_cast<int>(face_walks_[f].size());
    }

    // mu(o): number of boundary-path passages through o.  Zero exactly for
    // interior vertices.
    [[nodiscard]] int boundary_multiplicity(VertexId v) const { return mu_[v]; }
    [[nodiscard]] bool is_exterior_vertex(VertexId v) const { return mu_[v] > 0; }
    // A face is exterior when it shares an edge with the boundary.
    [[nodiscard]] bool is_exterior_face(FaceId f) const { return exterior_face_[f]; }
    [[nodiscard]] bool is_exterior_edge(EdgeId e) const {
        return on_outer(dart_of(e)) || on_outer(twin(dart_of(e)));
    }

    // Minimal dart of the outer orbit; kNoDart for edgeless maps.
    [[nodiscard]] DartId canonical_outer_dart() const {
        if (outer_orbit_.empty()) return kNoDart;
        return *std::min_element(outer_orbit_.begin(), outer_orbit_.end());
    }

    [[nodiscard]] bool operator==(const PlanarMap& other) const {
        return rotations_ == other.rotations_ &&
               canonical_outer_dart() == other.canonical_outer_dart();
    }

    [[nodiscard]] const std::vector<std::vector<DartId>>& rotations() const { return rotations_; }

    // Placeholder state for result structs; real maps come from build().
    PlanarMap() = default;

  private:
    void finalize();  // computes all derived structure, throws MapError

    std::vector<std::vector<DartId>> rotations_;
    DartId outer_dart_ = kNoDart;
    int dart_count_ = 0;

    std::vector<VertexId> dart_origin_;
    std::vector<int> rot_pos_;  // index of each dart inside its rotation
    std::vector<FaceId> dart_face_;
    std::vector<std::vector<DartId>> face_walks_;  // bounded, by minimal dart
    std::vector<DartId> outer_orbit_;
    std::vector<DartId> boundary_path_;
    std::vector<int> mu_;
    std::vector<char> exterior_face_;
};

// --- breadth-first machinery -------------------------------------------

// Unweighted distances in the 1-skeleton from a set of source vertices.
// Unreachable vertices get -1 (cannot happen on a connected map).
std::vector<int> bfs_distances(const PlanarMap& m, const std::vector<VertexId>& sources);

inline std::vector<int> bfs_from(const PlanarMap& m, VertexId o) {
    return bfs_distances(m, {o});
}

// Maximal distance from a vertex to the exterior-vertex set.
int radius(const PlanarMap& m);

// Vertices within distance d of o, ascending.
std::vector<VertexId> ball(const PlanarMap& m, VertexId o, int d);

// |B(d,o)| <= b^d + 1 for every o and every d up to max_d, where b is the
// maximum vertex degree.  Returns a violating (o, d) pair if any.
std::optional<std::pair<VertexId, int>> ball_growth_violation(const PlanarMap& m, int max_d);

// --- file format ---------------------------------------------------------

struct ParsedFile {
    PlanarMap map;
    // Raw angle lines: (corner dart, coefficient of pi).  The angles module
    // turns these into an AngleFunction.
    std::vector<std::pair<DartId, Rational>> angle_lines;
};

ParsedFile parse_pqm(const std::string& text);

std::string serialize_pqm(const PlanarMap& m,
                          const std::vector<std::pair<DartId, Rational>>& angle_lines = {});

// --- weak dual -----------------------------------------------------------

// Vertices of the dual are the bounded faces, edges the interior edges,
// bounded faces the interior vertices.  Throws when m has no bounded face.
PlanarMap weak_dual(const PlanarMap& m);

}  // namespace pqmap
