#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "lattice.hpp"
#include "pqmap/generators.hpp"
#include "pqmap/submap.hpp"

// Defect injection: cutting a straight slit from the boundary to a flat
// interior vertex and gluing a flat lattice sector into it raises that
// vertex's degree to q+1 while every other element stays flat.  This is
// the only way to create an isolated negative-curvature cone point in a
// flat region; single local moves cannot keep the (p,q) property there.

namespace pqmap {

namespace {

using lattice::Coord;

struct Sector {
    PlanarMap map;
    // Ray vertex ids from apex to tip; `toward` is the ray whose bounded-
    // side darts point to the apex, `away` the other one.
    std::vector<VertexId> ray_toward;
    std::vector<VertexId> ray_away;
    std::vector<DartId> toward_face_dart;  // per ray edge, bounded-side dart
    std::vector<DartId> away_face_dart;
};

DartId dart_between(const PlanarMap& m, VertexId u, VertexId w) {
    for (DartId d : m.rotation(u))
        if (m.head(d) == w) return d;
    throw MapError(MapErrorKind::InvalidArgument, "expected lattice edge missing");
}

Sector make_sector(const PQParams& pq, int L) {
    const int p = pq.p();
    std::vector<Coord> ray_x, ray_other;
    lattice::LatticeMapResult built = [&] {
        if (p == 4) {
            std::set<Coord> faces;
            for (int x = 0; x < L; ++x)
                for (int y = 0; x + y < L; ++y) faces.insert({x, y});
            for (int i = 0; i <= L; ++i) {
                ray_x.push_back({i, 0});
                ray_other.push_back({0, i});
            }
            return lattice::build_lattice_map(lattice::SquareLattice{}, faces);
        }
        if (p == 3) {
            std::set<lattice::TriangularLattice::FaceKey> faces;
            for (int a = 0; a < L; ++a)
                for (int b = 0; a + b < L; ++b) {
                    faces.insert({{a, b}, true});
                    if (a + b < L - 1) faces.insert({{a, b}, false});
                }
            for (int i = 0; i <= L; ++i) {
                ray_x.push_back({i, 0});
                ray_other.push_back({0, i});
            }
            return lattice::build_lattice_map(lattice::TriangularLattice{}, faces);
        }
        // p == 6: brick-wall wedge between the x-axis and the north-west
        // zigzag.
        std::set<Coord> faces;
        int rows = (L + 1) / 2 + 1;
        for (int y = 0; y <= rows; ++y)
            for (int x0 = -y; x0 + y <= L; ++x0)
                if (lattice::BrickLattice::even(x0 + y)) faces.insert({x0, y});
        for (int i = 0; i <= L; ++i) ray_x.push_back({i, 0});
        for (int i = 0; i <= L; ++i) {
            int k = i / 2;
            ray_other.push_back(i % 2 == 0 ? Coord{-k, k} : Coord{-k, k + 1});
        }
        return lattice::build_lattice_map(lattice::BrickLattice{}, faces);
    }();

    Sector sec;
    auto classify = [&](const std::vector<Coord>& coords, std::vector<VertexId>& ids,
                        std::vector<DartId>& face_darts) {
        bool toward = false;
        for (int i = 0; i < static_cast<int>(coords.size()); ++i)
            ids.push_back(built.vertex_id.at(coords[i]));
        for (int i = 0; i + 1 < static_cast<int>(coords.size()); ++i) {
            DartId out = dart_between(built.map, ids[i], ids[i + 1]);
            DartId face_dart = built.map.on_outer(out) ? twin(out) : out;
            bool this_toward = built.map.origin(face_dart) == ids[i + 1];
            if (i == 0)
                toward = this_toward;
            else if (toward != this_toward)
                throw MapError(MapErrorKind::TheoremViolation,
                               "sector ray orientation not uniform");
            face_darts.push_back(face_dart);
        }
        return toward;
    };
    std::vector<VertexId> ids_x, ids_o;
    std::vector<DartId> darts_x, darts_o;
    bool x_toward = classify(ray_x, ids_x, darts_x);
    bool o_toward = classify(ray_other, ids_o, darts_o);
    if (x_toward == o_toward)
        throw MapError(MapErrorKind::TheoremViolation, "sector rays have equal orientation");
    if (x_toward) {
        sec.ray_toward = ids_x;
        sec.toward_face_dart = darts_x;
        sec.ray_away = ids_o;
        sec.away_face_dart = darts_o;
    } else {
        sec.ray_toward = ids_o;
        sec.toward_face_dart = darts_o;
        sec.ray_away = ids_x;
        sec.away_face_dart = darts_x;
    }
    sec.map = std::move(built.map);
    return sec;
}

// Degree of a sector vertex, used to steer the zigzag phase of the slit.
int sector_ray_away_degree(const PQParams& pq, int index) {
    switch (pq.p()) {
        case 4: return 3;
        case 3: return 4;
        default: return index % 2 == 0 ? 2 : 3;  // brick zigzag alternates
    }
}

// Straight continuation of the slit path: the dart sigma^k(arrival twin)
// with k = q - (q + 1 - away_degree) chosen so the two slit sides end up
// flat after gluing.
DartId straight_out(const PlanarMap& m, DartId arrival, const PQParams& pq, int index) {
    const int q = pq.q();
    int left_needed = q + 1 - sector_ray_away_degree(pq, index);
    int k = q - left_needed;
    DartId d = twin(arrival);
    for (int i = 0; i < k; ++i) d = m.rotation_next(d);
    return d;
}

struct SlitPath {
    std::vector<DartId> darts;  // x_0 -> ... -> x_L, x_0 interior, x_L exterior
};

std::optional<SlitPath> trace_slit(const PlanarMap& m, const PQParams& pq, DartId first) {
    const int q = pq.q();
    SlitPath path;
    std::set<VertexId> used{m.origin(first)};
    DartId d = first;
    for (int i = 1;; ++i) {
        if (m.on_outer(d) || m.on_outer(twin(d))) return std::nullopt;
        if (m.face_of(d) == m.face_of(twin(d))) return std::nullopt;
        path.darts.push_back(d);
        VertexId x = m.head(d);
        if (!used.insert(x).second) return std::nullopt;
        if (m.is_exterior_vertex(x)) return path;
        if (m.vertex_degree(x) != q) return std::nullopt;
        d = straight_out(m, d, pq, i);
    }
}

PlanarMap insert_cone_wedge(const PlanarMap& m, const PQParams& pq, const SlitPath& path) {
    const int L = static_cast<int>(path.darts.size());
    Sector sec = make_sector(pq, L);
    const PlanarMap& s = sec.map;

    // Tokens: old darts from 0, sector darts from OFF.
    const int OFF = m.dart_count();
    auto sec_token = [&](DartId d) { return OFF + d; };

    std::vector<VertexId> x(L + 1);
    x[0] = m.origin(path.darts[0]);
    for (int i = 0; i < L; ++i) x[i + 1] = m.head(path.darts[i]);

    // Final vertex ids: old map ids stay (left slit copies keep them); the
    // right copies and the remaining sector vertices get fresh ids.
    int vnext = m.vertex_count();
    std::vector<VertexId> right_copy(L + 1, -1);
    for (int i = 1; i <= L; ++i) right_copy[i] = vnext++;
    std::vector<VertexId> sec_vertex(s.vertex_count(), -1);
    sec_vertex[sec.ray_toward[0]] = x[0];  // apex
    for (int i = 1; i <= L; ++i) {
        sec_vertex[sec.ray_away[i]] = x[i];
        sec_vertex[sec.ray_toward[i]] = right_copy[i];
    }
    for (VertexId v = 0; v < s.vertex_count(); ++v)
        if (sec_vertex[v] == -1) sec_vertex[v] = vnext++;

    // Token origins.
    std::vector<VertexId> token_origin(OFF + s.dart_count());
    for (DartId d = 0; d < m.dart_count(); ++d) token_origin[d] = m.origin(d);
    for (DartId d = 0; d < s.dart_count(); ++d)
        token_origin[OFF + d] = sec_vertex[s.origin(d)];

    // Boundary split at b = x[L]: pick the outer corner with the smallest
    // outgoing dart.  The corner between rotation darts (a_j, a_j1) hosts
    // orbit(a_j1).
    VertexId b = x[L];
    auto rot_b = m.rotation(b);
    const int deg_b = static_cast<int>(rot_b.size());
    int wedge = -1;
    for (int j = 0; j < deg_b; ++j) {
        DartId y = rot_b[(j + 1) % deg_b];
        if (m.on_outer(y) && (wedge == -1 || y < rot_b[(wedge + 1) % deg_b])) wedge = j;
    }
    if (wedge == -1)
        throw MapError(MapErrorKind::TheoremViolation, "slit end is not on the boundary");
    DartId a_j = rot_b[wedge];
    DartId a_j1 = rot_b[(wedge + 1) % deg_b];

    // Reassign the right-side rotation arcs at every split vertex.
    for (int i = 1; i <= L; ++i) {
        auto rot = m.rotation(x[i]);
        const int deg = static_cast<int>(rot.size());
        DartId t_prev = twin(path.darts[i - 1]);
        DartId stop = (i < L) ? path.darts[i] : a_j;
        int pos = -1;
        for (int j = 0; j < deg; ++j)
            if (rot[j] == t_prev) pos = j;
        if (stop != t_prev) {
            for (int j = (pos + 1) % deg;; j = (j + 1) % deg) {
                token_origin[rot[j]] = right_copy[i];
                if (rot[j] == stop) break;
                if (j == pos)
                    throw MapError(MapErrorKind::TheoremViolation, "slit arc wrapped around");
            }
        }
    }

    // Final edges: old non-path edges, then the left/right slit copies,
    // then the sector's non-ray edges.
    std::set<EdgeId> path_edges, sector_ray_edges;
    for (DartId d : path.darts) path_edges.insert(edge_of(d));
    for (DartId d : sec.toward_face_dart) sector_ray_edges.insert(edge_of(d));
    for (DartId d : sec.away_face_dart) sector_ray_edges.insert(edge_of(d));

    std::vector<std::pair<int, int>> edge_tokens;  // (token for 2k, token for 2k+1)
    for (EdgeId e = 0; e < m.edge_count(); ++e)
        if (!path_edges.count(e)) edge_tokens.push_back({2 * e, 2 * e + 1});
    for (int i = 0; i < L; ++i) {
        edge_tokens.push_back(
            {static_cast<int>(twin(path.darts[i])), sec_token(sec.away_face_dart[i])});
        edge_tokens.push_back(
            {static_cast<int>(path.darts[i]), sec_token(sec.toward_face_dart[i])});
    }
    for (EdgeId e = 0; e < s.edge_count(); ++e)
        if (!sector_ray_edges.count(e))
            edge_tokens.push_back({sec_token(2 * e), sec_token(2 * e + 1)});

    std::vector<DartId> token_to_dart(OFF + s.dart_count(), kNoDart);
    for (int k = 0; k < static_cast<int>(edge_tokens.size()); ++k) {
        token_to_dart[edge_tokens[k].first] = 2 * k;
        token_to_dart[edge_tokens[k].second] = 2 * k + 1;
    }

    // Walks: every old bounded walk and every sector walk survives with its
    // tokens; the outer walk gains the staircase between the corner pair.
    std::vector<std::vector<DartId>> walks;
    std::vector<VertexId> final_origin(2 * edge_tokens.size());
    auto push_walk = [&](const std::vector<int>& tokens) {
        std::vector<DartId> walk;
        for (int t : tokens) {
            DartId d = token_to_dart[t];
            if (d == kNoDart)
                throw MapError(MapErrorKind::TheoremViolation, "unmapped wedge token");
            final_origin[d] = token_origin[t];
            walk.push_back(d);
        }
        walks.push_back(std::move(walk));
    };
    for (FaceId f = 0; f < m.face_count(); ++f) {
        std::vector<int> tokens(m.face_walk(f).begin(), m.face_walk(f).end());
        push_walk(tokens);
    }
    for (FaceId f = 0; f < s.face_count(); ++f) {
        std::vector<int> tokens;
        for (DartId d : s.face_walk(f)) tokens.push_back(sec_token(d));
        push_walk(tokens);
    }

    // Staircase: the sector outer orbit minus the ray darts, starting right
    // after the removed block; it must run from the toward tip to the away
    // tip.
    std::set<DartId> ray_outer;
    for (DartId d : sec.toward_face_dart) ray_outer.insert(twin(d));
    for (DartId d : sec.away_face_dart) ray_outer.insert(twin(d));
    auto sec_outer = s.outer_orbit();
    const int so = static_cast<int>(sec_outer.size());
    int start = -1;
    for (int i = 0; i < so; ++i) {
        if (!ray_outer.count(sec_outer[i]) && ray_outer.count(sec_outer[(i + so - 1) % so]))
            start = i;
    }
    if (start == -1)
        throw MapError(MapErrorKind::TheoremViolation, "sector boundary has no staircase");
    std::vector<DartId> staircase;
    for (int i = start; !ray_outer.count(sec_outer[i % so]); ++i)
        staircase.push_back(sec_outer[i % so]);
    if (static_cast<int>(staircase.size()) != so - 2 * L)
        throw MapError(MapErrorKind::TheoremViolation, "sector rays are not contiguous");
    if (s.origin(staircase.front()) != sec.ray_toward[L])
        throw MapError(MapErrorKind::TheoremViolation, "staircase orientation mismatch");

    {
        std::vector<int> tokens;
        auto outer = m.outer_orbit();
        const int n = static_cast<int>(outer.size());
        int qpos = -1;
        for (int i = 0; i < n; ++i)
            if (outer[i] == a_j1) qpos = i;
        if (qpos == -1 || outer[(qpos + n - 1) % n] != twin(a_j))
            throw MapError(MapErrorKind::TheoremViolation, "outer corner tracing failed");
        // Cyclically: ..., twin(a_j), staircase, a_j1, ...
        for (DartId d : staircase) tokens.push_back(sec_token(d));
        for (int i = qpos; i < qpos + n; ++i) tokens.push_back(outer[i % n]);
        std::vector<DartId> walk;
        for (int t : tokens) {
            DartId d = token_to_dart[t];
            if (d == kNoDart)
                throw MapError(MapErrorKind::TheoremViolation, "unmapped outer token");
            final_origin[d] = token_origin[t];
            walk.push_back(d);
        }
        return PlanarMap::build_from_orbits(walks, walk, final_origin, vnext);
    }
}

// One negative-curvature face via a merge: requires an interior edge with
// exterior endpoints and flat interior faces on both sides.
std::optional<PlanarMap> try_face_defect(const PlanarMap& m, const PQParams& pq, Rng& rng) {
    const int p = pq.p();
    std::vector<EdgeId> candidates;
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        DartId a = dart_of(e);
        if (m.is_exterior_edge(e)) continue;
        FaceId f1 = m.face_of(a);
        FaceId f2 = m.face_of(twin(a));
        if (f1 == f2) continue;
        if (m.is_exterior_face(f1) || m.is_exterior_face(f2)) continue;
        if (m.face_degree(f1) != p || m.face_degree(f2) != p) continue;
        if (!m.is_exterior_vertex(m.origin(a)) || !m.is_exterior_vertex(m.head(a))) continue;
        if (m.vertex_degree(m.origin(a)) < 3 || m.vertex_degree(m.head(a)) < 3) continue;
        candidates.push_back(e);
    }
    if (candidates.empty()) return std::nullopt;
    return merge_faces_at(m, candidates[rng.below(candidates.size())]);
}

std::optional<PlanarMap> try_vertex_defect(const PlanarMap& m, const PQParams& pq, Rng& rng) {
    auto dd = defect_distance(m, pq);
    auto cls = classify_flat(m, pq);
    std::set<VertexId> defect(cls.defect_vertices.begin(), cls.defect_vertices.end());
    std::vector<VertexId> targets;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (!m.is_exterior_vertex(v) && m.vertex_degree(v) == pq.q() && !defect.count(v))
            targets.push_back(v);
    std::sort(targets.begin(), targets.end(), [&](VertexId a, VertexId b) {
        if (dd.distance[a] != dd.distance[b]) return dd.distance[a] > dd.distance[b];
        return a < b;
    });
    if (targets.empty()) return std::nullopt;
    // Prefer deep targets; the seed picks among the deepest few.
    std::size_t tier = std::min<std::size_t>(targets.size(), 4);
    std::size_t first = rng.below(tier);
    for (std::size_t idx = 0; idx < targets.size(); ++idx) {
        VertexId w = targets[(first + idx) % targets.size()];
        auto rot = m.rotation(w);
        std::size_t rot_off = rng.below(rot.size());
        for (std::size_t k = 0; k < rot.size(); ++k) {
            DartId d0 = rot[(rot_off + k) % rot.size()];
            auto path = trace_slit(m, pq, d0);
            if (!path) continue;
            return insert_cone_wedge(m, pq, *path);
        }
    }
    return std::nullopt;
}

}  // namespace

PerturbResult perturb_defects(const PlanarMap& m, const PQParams& pq, int defect_count,
                              std::uint64_t seed) {
    require_pq_map(m, pq);
    PerturbResult out;
    out.flat_ball_radius_before = flat_ball_radius(m, pq);
    out.map = m;
    Rng rng(seed);
    for (int k = 0; k < defect_count; ++k) {
        auto before = classify_flat(out.map, pq);
        int before_count = static_cast<int>(before.non_flat_faces.size() +
                                            before.non_flat_interior_vertices.size());
        std::optional<PlanarMap> next;
        if (rng.below(2) == 0) next = try_face_defect(out.map, pq, rng);
        if (!next) next = try_vertex_defect(out.map, pq, rng);
        if (!next) next = try_face_defect(out.map, pq, rng);
        if (!next)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "insufficient interior room for another defect");
        auto after = classify_flat(*next, pq);
        int after_count = static_cast<int>(after.non_flat_faces.size() +
                                           after.non_flat_interior_vertices.size());
        if (after_count != before_count + 1)
            throw MapError(MapErrorKind::TheoremViolation,
                           "defect injection changed the defect count by " +
                               std::to_string(after_count - before_count));
        if (!is_pq_map(*next, pq).ok || !condition_B(*next, pq))
            throw MapError(MapErrorKind::TheoremViolation,
                           "defect injection left the (p,q) class");
        out.map = std::move(*next);
    }
    out.flat_ball_radius_after = flat_ball_radius(out.map, pq);
    return out;
}

}  // namespace pqmap
