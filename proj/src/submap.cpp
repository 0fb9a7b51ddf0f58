#include "pqmap/submap.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pqmap {

namespace {

std::vector<char> face_mask(const PlanarMap& m, const std::vector<FaceId>& faces) {
    std::vector<char> mask(m.face_count(), 0);
    for (FaceId f : faces) {
        if (f < 0 || f >= m.face_count())
            throw MapError(MapErrorKind::InvalidArgument, "face id out of range");
        mask[f] = 1;
    }
    return mask;
}

}  // namespace

Submap extract_submap(const PlanarMap& m, const std::vector<FaceId>& faces) {
    if (faces.empty())
        throw MapError(MapErrorKind::InvalidArgument, "submap needs a nonempty face selection");
    auto mask = face_mask(m, faces);

    Submap sub;
    sub.parent = &m;
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (mask[f]) sub.faces.push_back(f);

    std::set<VertexId> vset;
    std::set<EdgeId> eset;
    for (FaceId f : sub.faces) {
        for (DartId d : m.face_walk(f)) {
            vset.insert(m.origin(d));
            eset.insert(edge_of(d));
        }
    }
    sub.vertices.assign(vset.begin(), vset.end());
    sub.edges.assign(eset.begin(), eset.end());

    auto in_region = [&](DartId d) {
        FaceId f = m.face_of(d);
        return f != PlanarMap::kOuterFace && mask[f];
    };
    // Boundary darts keep the region on their right (the face side of the
    // orbit convention); successors pivot through region faces.
    std::vector<char> visited(m.dart_count(), 0);
    for (FaceId f : sub.faces) {
        for (DartId d0 : m.face_walk(f)) {
            if (visited[d0] || in_region(twin(d0))) continue;
            std::vector<DartId> walk;
            DartId d = d0;
            do {
                visited[d] = 1;
                walk.push_back(d);
                DartId e = m.face_next(d);
                while (in_region(twin(e))) e = m.face_next(twin(e));
                d = e;
            } while (d != d0);
            sub.boundary_walks.push_back(std::move(walk));
        }
    }

    // Simplicity: one closed walk, no vertex twice, Euler characteristic 1.
    sub.simple = false;
    if (sub.boundary_walks.size() == 1) {
        std::set<VertexId> seen;
        bool repeat = false;
        for (DartId d : sub.boundary_walks[0])
            if (!seen.insert(m.origin(d)).second) repeat = true;
        long euler = static_cast<long>(sub.vertices.size()) -
                     static_cast<long>(sub.edges.size()) + static_cast<long>(sub.faces.size());
        sub.simple = !repeat && euler == 1;
    }
    return sub;
}

StandaloneSubmap submap_to_map(const Submap& sub) {
    if (!sub.simple)
        throw MapError(MapErrorKind::PreconditionFailed,
                       "only simple submaps convert to standalone maps");
    const PlanarMap& m = *sub.parent;
    std::vector<int> vmap(m.vertex_count(), -1);
    for (std::size_t i = 0; i < sub.vertices.size(); ++i) vmap[sub.vertices[i]] = static_cast<int>(i);
    std::vector<int> emap(m.edge_count(), -1);
    for (std::size_t i = 0; i < sub.edges.size(); ++i) emap[sub.edges[i]] = static_cast<int>(i);

    auto map_dart = [&](DartId d) {
        return 2 * emap[edge_of(d)] + (d & 1);
    };
    std::vector<std::vector<DartId>> rotations(sub.vertices.size());
    for (std::size_t i = 0; i < sub.vertices.size(); ++i) {
        for (DartId d : m.rotation(sub.vertices[i]))
            if (emap[edge_of(d)] != -1) rotations[i].push_back(map_dart(d));
    }
    DartId outer = map_dart(twin(sub.boundary_walks[0][0]));
    StandaloneSubmap result{PlanarMap::build(std::move(rotations), outer), {}, {}, {}};
    result.vertex_to_parent = sub.vertices;
    result.edge_to_parent = sub.edges;
    // Bounded faces of the standalone map correspond to the selected faces;
    // recover the correspondence through any dart of each walk.
    result.face_to_parent.assign(result.map.face_count(), -1);
    for (FaceId f : sub.faces) {
        DartId d = map_dart(m.face_walk(f).front());
        FaceId nf = result.map.face_of(d);
        if (nf == PlanarMap::kOuterFace)
            throw MapError(MapErrorKind::TheoremViolation,
                           "simple submap conversion produced an inconsistent outer face");
        result.face_to_parent[nf] = f;
    }
    return result;
}

InteriorDecomposition interior(const PlanarMap& m) {
    InteriorDecomposition out;
    std::vector<char> strongly_interior(m.face_count(), 0);
    for (FaceId f = 0; f < m.face_count(); ++f) {
        bool touches = false;
        for (DartId d : m.face_walk(f))
            if (m.is_exterior_vertex(m.origin(d))) touches = true;
        strongly_interior[f] = !touches;
    }
    // Components: edge-adjacency clusters of strongly interior faces.  For a
    // valid map each cluster is a maximal simple piece; distinct clusters
    // share at most one vertex.
    std::vector<int> comp(m.face_count(), -1);
    int comp_count = 0;
    for (FaceId f0 = 0; f0 < m.face_count(); ++f0) {
        if (!strongly_interior[f0] || comp[f0] != -1) continue;
        std::vector<FaceId> stack{f0};
        comp[f0] = comp_count;
        while (!stack.empty()) {
            FaceId f = stack.back();
            stack.pop_back();
            for (DartId d : m.face_walk(f)) {
                FaceId g = m.face_of(twin(d));
                if (g == PlanarMap::kOuterFace || !strongly_interior[g] || comp[g] != -1)
                    continue;
                comp[g] = comp_count;
                stack.push_back(g);
            }
        }
        ++comp_count;
    }
    for (int c = 0; c < comp_count; ++c) {
        std::vector<FaceId> faces;
        for (FaceId f = 0; f < m.face_count(); ++f)
            if (comp[f] == c) faces.push_back(f);
        Submap sub = extract_submap(m, faces);
        if (!sub.simple)
            throw MapError(MapErrorKind::TheoremViolation,
                           "interior component is not simple");
        out.y_length += sub.boundary_length();
        out.components.push_back(std::move(sub));
    }
    return out;
}

Rational contraction_check(const PlanarMap& m, const PQParams& pq) {
    require_pq_map(m, pq);
    if (m.face_count() == 0)
        throw MapError(MapErrorKind::PreconditionFailed, "contraction check needs a face");
    if (!condition_D(m, pq))
        throw MapError(MapErrorKind::PreconditionFailed,
                       "contraction check requires every face degree >= p");
    auto report = pq_curvatures(m, pq);
    auto decomposition = interior(m);
    Rational slack = Rational(m.perimeter()) - decomposition.y_length -
                     (report.J + pq.p_rat());
    if (slack < 0)
        throw MapError(MapErrorKind::TheoremViolation,
                       "contraction inequality violated: slack " + rational_str(slack));
    return slack;
}

DefectDistance defect_distance(const PlanarMap& m, const PQParams& pq) {
    auto classification = classify_flat(m, pq);
    DefectDistance out;
    if (classification.defect_vertices.empty()) {
        out.distance.assign(m.vertex_count(), 0);
        out.r_defect = 0;
        return out;
    }
    out.distance = bfs_distances(m, classification.defect_vertices);
    out.r_defect = *std::max_element(out.distance.begin(), out.distance.end());
    return out;
}

std::vector<GrowthStage> flat_ball_growth(const PlanarMap& m, const PQParams& pq, VertexId o) {
    auto classification = classify_flat(m, pq);
    std::vector<char> defect(m.vertex_count(), 0);
    for (VertexId v : classification.defect_vertices) defect[v] = 1;
    const int p = pq.p();

    std::vector<GrowthStage> stages;
    GrowthStage base;
    base.stage = 0;
    base.face_count = 0;
    base.boundary_length = 0;
    base.outgoing_darts = m.vertex_degree(o);
    base.flat_simple = !defect[o];
    stages.push_back(base);
    if (!base.flat_simple) return stages;

    std::vector<char> vin(m.vertex_count(), 0);
    std::vector<char> fin(m.face_count(), 0);
    vin[o] = 1;
    for (int stage = 1;; ++stage) {
        // Add every face sharing a vertex with the current stage.
        std::vector<FaceId> grown;
        for (FaceId f = 0; f < m.face_count(); ++f) {
            if (fin[f]) continue;
            for (DartId d : m.face_walk(f)) {
                if (vin[m.origin(d)]) {
                    grown.push_back(f);
                    break;
                }
            }
        }
        if (grown.empty()) break;
        for (FaceId f : grown) fin[f] = 1;
        for (FaceId f = 0; f < m.face_count(); ++f)
            if (fin[f])
                for (DartId d : m.face_walk(f)) vin[m.origin(d)] = 1;

        GrowthStage s;
        s.stage = stage;
        std::vector<FaceId> faces;
        for (FaceId f = 0; f < m.face_count(); ++f)
            if (fin[f]) faces.push_back(f);
        s.face_count = static_cast<int>(faces.size());

        bool ok = true;
        for (FaceId f : faces)
            if (m.face_degree(f) != p) ok = false;
        for (VertexId v = 0; v < m.vertex_count(); ++v)
            if (vin[v] && defect[v]) ok = false;
        Submap sub = extract_submap(m, faces);
        if (!sub.simple) ok = false;
        s.boundary_length = sub.boundary_length();
        int outgoing = 0;
        for (VertexId v = 0; v < m.vertex_count(); ++v) {
            if (!vin[v]) continue;
            for (DartId d : m.rotation(v))
                if (!vin[m.head(d)]) ++outgoing;
        }
        s.outgoing_darts = outgoing;
        s.flat_simple = ok;
        stages.push_back(s);
        if (!ok) break;
        if (s.face_count == m.face_count()) break;
    }
    return stages;
}

int flat_ball_radius(const PlanarMap& m, const PQParams& pq) {
    auto dd = defect_distance(m, pq);
    // r(o) < dist(o, defect set), so scan vertices by decreasing defect
    // distance and stop once no vertex can beat the best stage found.
    std::vector<VertexId> order(m.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (dd.distance[a] != dd.distance[b]) return dd.distance[a] > dd.distance[b];
        return a < b;
    });
    int best = 0;
    for (VertexId o : order) {
        if (dd.distance[o] <= best) break;
        auto stages = flat_ball_growth(m, pq, o);
        int r = -1;
        for (const auto& s : stages)
            if (s.flat_simple) r = s.stage;
        best = std::max(best, r);
    }
    return std::max(best, 0);
}

Submap shell_submap(const PlanarMap& m, VertexId o, int r) {
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (m.face_degree(f) > 6)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "shell submaps require all face degrees <= 6");
    if (r < 1) throw MapError(MapErrorKind::InvalidArgument, "shell radius must be >= 1");
    auto dist = bfs_from(m, o);
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.is_exterior_vertex(v) && dist[v] <= r)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "the r-ball around o touches the boundary");

    auto face_dist = [&](FaceId f) {
        int best = dist[m.origin(m.face_walk(f).front())];
        for (DartId d : m.face_walk(f)) best = std::min(best, dist[m.origin(d)]);
        return best;
    };
    std::vector<char> required(m.face_count(), 0);
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (face_dist(f) <= r - 1) required[f] = 1;

    std::vector<FaceId> all_faces(m.face_count());
    std::iota(all_faces.begin(), all_faces.end(), 0);
    Submap current = extract_submap(m, all_faces);
    if (!current.simple)
        throw MapError(MapErrorKind::PreconditionFailed,
                       "shell extraction needs a simple ambient boundary");

    // Greedy minimisation: drop boundary-adjacent far faces while the
    // selection stays simple and the boundary does not grow.  Equality
    // moves are needed to cross plateaus (peeling a grid ring keeps the
    // perimeter until the ring closes); the face count still strictly
    // decreases, so this terminates.
    while (true) {
        std::set<FaceId> frontier;
        for (const auto& walk : current.boundary_walks)
            for (DartId d : walk) frontier.insert(m.face_of(d));
        bool improved = false;
        for (FaceId f : frontier) {
            if (required[f] || face_dist(f) < r) continue;
            std::vector<FaceId> reduced;
            for (FaceId g : current.faces)
                if (g != f) reduced.push_back(g);
            if (reduced.empty()) continue;
            Submap candidate = extract_submap(m, reduced);
            if (!candidate.simple) continue;
            if (candidate.boundary_length() > current.boundary_length()) continue;
            current = std::move(candidate);
            improved = true;
            break;
        }
        if (!improved) break;
    }

    // Lemma postconditions.
    for (const auto& walk : current.boundary_walks)
        for (DartId d : walk)
            if (dist[m.origin(d)] < r)
                throw MapError(MapErrorKind::TheoremViolation,
                               "shell boundary came closer than r to the center");
    for (const auto& walk : current.boundary_walks)
        for (DartId d : walk)
            if (dist[m.origin(d)] > r + 2)
                throw MapError(MapErrorKind::TheoremViolation,
                               "shell has an exterior vertex farther than r+2");
    return current;
}

}  // namespace pqmap
