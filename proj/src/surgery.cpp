#include "pqmap/surgery.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "pqmap/submap.hpp"

namespace pqmap {

InducedMap face_set_to_map(const PlanarMap& m, const std::vector<FaceId>& faces) {
    if (faces.empty())
        throw MapError(MapErrorKind::InvalidArgument, "face set must be nonempty");
    std::vector<char> mask(m.face_count(), 0);
    for (FaceId f : faces) mask[f] = 1;

    std::set<VertexId> vset;
    std::set<EdgeId> eset;
    for (FaceId f : faces)
        for (DartId d : m.face_walk(f)) {
            vset.insert(m.origin(d));
            eset.insert(edge_of(d));
        }
    InducedMap out;
    out.vertex_to_parent.assign(vset.begin(), vset.end());
    out.edge_to_parent.assign(eset.begin(), eset.end());

    std::vector<int> vmap(m.vertex_count(), -1);
    for (std::size_t i = 0; i < out.vertex_to_parent.size(); ++i)
        vmap[out.vertex_to_parent[i]] = static_cast<int>(i);
    std::vector<int> emap(m.edge_count(), -1);
    for (std::size_t i = 0; i < out.edge_to_parent.size(); ++i)
        emap[out.edge_to_parent[i]] = static_cast<int>(i);

    auto map_dart = [&](DartId d) { return 2 * emap[edge_of(d)] + (d & 1); };
    std::vector<std::vector<DartId>> rotations(out.vertex_to_parent.size());
    for (std::size_t i = 0; i < out.vertex_to_parent.size(); ++i)
        for (DartId d : m.rotation(out.vertex_to_parent[i]))
            if (emap[edge_of(d)] != -1) rotations[i].push_back(map_dart(d));

    // Outer dart: twin of any dart whose orbit is selected but whose twin's
    // orbit is not.
    DartId outer = kNoDart;
    for (FaceId f : faces) {
        for (DartId d : m.face_walk(f)) {
            FaceId g = m.face_of(twin(d));
            if (g == PlanarMap::kOuterFace || !mask[g]) {
                outer = map_dart(twin(d));
                break;
            }
        }
        if (outer != kNoDart) break;
    }
    out.map = PlanarMap::build(std::move(rotations), outer);

    out.face_to_parent.assign(out.map.face_count(), -1);
    for (FaceId f : faces) {
        FaceId nf = out.map.face_of(map_dart(m.face_walk(f).front()));
        if (nf == PlanarMap::kOuterFace)
            throw MapError(MapErrorKind::InvalidArgument,
                           "face selection does not bound a map");
        out.face_to_parent[nf] = f;
    }
    return out;
}

// --- adjustment to condition (B) ------------------------------------------

namespace {

struct Walks {
    std::vector<std::vector<DartId>> bounded;
    std::vector<DartId> outer;
    std::vector<VertexId> origin;
    int vertex_count;

    explicit Walks(const PlanarMap& m) : vertex_count(m.vertex_count()) {
        for (FaceId f = 0; f < m.face_count(); ++f) {
            auto w = m.face_walk(f);
            bounded.emplace_back(w.begin(), w.end());
        }
        outer.assign(m.outer_orbit().begin(), m.outer_orbit().end());
        origin.resize(m.dart_count());
        for (DartId d = 0; d < m.dart_count(); ++d) origin[d] = m.origin(d);
    }

    DartId new_edge() {
        DartId d = static_cast<DartId>(origin.size());
        origin.push_back(-1);
        origin.push_back(-1);
        return d;
    }

    PlanarMap build() const {
        return PlanarMap::build_from_orbits(bounded, outer, origin, vertex_count);
    }
};

}  // namespace

PlanarMap subdivide_large_faces(const PlanarMap& m, const PQParams& pq) {
    const int p = pq.p();
    PlanarMap current = m;
    while (true) {
        FaceId big = -1;
        for (FaceId f = 0; f < current.face_count(); ++f)
            if (current.face_degree(f) >= 2 * p) {
                big = f;
                break;
            }
        if (big == -1) break;

        Walks ws(current);
        std::vector<DartId> walk = ws.bounded[big];
        const int d = static_cast<int>(walk.size());
        DartId g = ws.new_edge();  // closes the first arc: v_p -> v_0
        DartId h = twin(g);
        VertexId v0 = ws.origin[walk[0]];
        VertexId vp = ws.origin[walk[p]];
        ws.origin[g] = vp;
        ws.origin[h] = v0;

        std::vector<DartId> first(walk.begin(), walk.begin() + p);
        first.push_back(g);
        std::vector<DartId> second(walk.begin() + p, walk.begin() + d);
        second.push_back(h);
        ws.bounded[big] = std::move(first);
        ws.bounded.push_back(std::move(second));
        current = ws.build();
    }
    return current;
}

PlanarMap split_large_vertices(const PlanarMap& m, const PQParams& pq) {
    const int q = pq.q();
    PlanarMap current = m;
    while (true) {
        VertexId big = -1;
        for (VertexId v = 0; v < current.vertex_count(); ++v)
            if (current.vertex_degree(v) >= 2 * q) {
                big = v;
                break;
            }
        if (big == -1) break;

        auto rot = current.rotation(big);
        const int d = static_cast<int>(rot.size());
        // Window start: darts rot[s..s+q-1] move to the new vertex o'.  For
        // exterior vertices the window must see no outer corner, i.e. the
        // orbits of rot[s..s+q] (q+1 consecutive darts) are all bounded;
        // then o'' inherits every boundary passage and o' is interior.
        int start = -1;
        if (!current.is_exterior_vertex(big)) {
            start = 0;
        } else {
            for (int s = 0; s < d && start == -1; ++s) {
                bool ok = true;
                for (int k = 0; k <= q; ++k)
                    if (current.on_outer(rot[(s + k) % d])) ok = false;
                if (ok) start = s;
            }
            if (start == -1)
                throw MapError(MapErrorKind::PreconditionFailed,
                               "no splitting window avoids the boundary at vertex " +
                                   std::to_string(big) + " (boundary passages too dense)");
        }

        Walks ws(current);
        VertexId o_prime = ws.vertex_count++;
        DartId g = ws.new_edge();  // o'' -> o', crossed by the first cut wedge
        DartId h = twin(g);        // o'  -> o''
        ws.origin[g] = big;
        ws.origin[h] = o_prime;
        for (int k = 0; k < q; ++k) ws.origin[rot[(start + k) % d]] = o_prime;

        // The wedge before rot[start] belongs to orbit(rot[start]); its walk
        // gains g between twin(rot[start-1]) and rot[start].  The wedge after
        // the window belongs to orbit(rot[start+q]) and gains h.
        DartId at_start = rot[start];
        DartId at_end = rot[(start + q) % d];
        auto insert_before = [&](std::vector<DartId>& walk, DartId anchor, DartId inserted) {
            auto it = std::find(walk.begin(), walk.end(), anchor);
            if (it == walk.end())
                throw MapError(MapErrorKind::InvalidArgument, "walk anchor missing");
            walk.insert(it, inserted);
        };
        auto walk_of = [&](DartId dart) -> std::vector<DartId>& {
            FaceId f = current.face_of(dart);
            if (f == PlanarMap::kOuterFace) return ws.outer;
            return ws.bounded[f];
        };
        insert_before(walk_of(at_start), at_start, g);
        insert_before(walk_of(at_end), at_end, h);
        current = ws.build();

        if (current.vertex_degree(big) + current.vertex_degree(o_prime) !=
            d + 2)
            throw MapError(MapErrorKind::TheoremViolation, "vertex split degree bookkeeping");
    }
    return current;
}

PlanarMap adjust_to_condition_B(const PlanarMap& m, const PQParams& pq) {
    PlanarMap current = m;
    for (int round = 0; round < 64; ++round) {
        if (condition_B(current, pq)) return current;
        current = subdivide_large_faces(current, pq);
        current = split_large_vertices(current, pq);
    }
    throw MapError(MapErrorKind::TheoremViolation, "adjustment to (B) failed to converge");
}

// --- trimming to condition (D) ---------------------------------------------

TrimResult trim_to_condition_D(const PlanarMap& m, const PQParams& pq) {
    const int p = pq.p();
    for (EdgeId e = 0; e < m.edge_count(); ++e)
        if (m.on_outer(dart_of(e)) && m.on_outer(twin(dart_of(e))))
            throw MapError(MapErrorKind::PreconditionFailed,
                           "trimming does not support bridge edges");
    const int n0 = m.perimeter();
    const int area0 = m.face_count();

    TrimResult out{m, 0, false};
    while (true) {
        FaceId victim = -1;
        for (FaceId f = 0; f < out.map.face_count(); ++f) {
            if (out.map.is_exterior_face(f) && out.map.face_degree(f) < p) {
                victim = f;
                break;
            }
        }
        if (victim == -1) break;
        ++out.removed_faces;
        if (out.map.face_count() == 1) {
            out.map = PlanarMap::build({{}}, kNoDart);
            out.emptied = true;
            return out;
        }
        std::vector<FaceId> keep;
        for (FaceId f = 0; f < out.map.face_count(); ++f)
            if (f != victim) keep.push_back(f);
        out.map = face_set_to_map(out.map, keep).map;
    }

    if (out.map.perimeter() > (p - 1) * n0)
        throw MapError(MapErrorKind::TheoremViolation,
                       "trim blew the perimeter bound (p-1)n");
    if (out.map.face_count() < area0 - n0)
        throw MapError(MapErrorKind::TheoremViolation, "trim removed more than n faces");
    return out;
}

// --- connecting forests ------------------------------------------------------

namespace {

// Shortest path from `from` to the exterior-vertex set; returns edge ids.
std::vector<EdgeId> path_to_boundary(const PlanarMap& m, VertexId from) {
    std::vector<int> parent_dart(m.vertex_count(), kNoDart);
    std::vector<int> dist(m.vertex_count(), -1);
    std::deque<VertexId> queue{from};
    dist[from] = 0;
    VertexId hit = -1;
    if (m.is_exterior_vertex(from)) return {};
    while (!queue.empty() && hit == -1) {
        VertexId v = queue.front();
        queue.pop_front();
        for (DartId d : m.rotation(v)) {
            VertexId w = m.head(d);
            if (dist[w] != -1) continue;
            dist[w] = dist[v] + 1;
            parent_dart[w] = d;
            if (m.is_exterior_vertex(w)) {
                hit = w;
                break;
            }
            queue.push_back(w);
        }
    }
    if (hit == -1)
        throw MapError(MapErrorKind::TheoremViolation, "no path to the boundary");
    std::vector<EdgeId> path;
    VertexId v = hit;
    while (v != from) {
        DartId d = parent_dart[v];
        path.push_back(edge_of(d));
        v = m.origin(d);
    }
    return path;
}

// Recursive edge collection following the interior recursion; edges are in
// m's ids.
std::vector<EdgeId> collect_connecting_edges(const PlanarMap& m, const PQParams& pq) {
    auto cls = classify_flat(m, pq);
    if (cls.non_flat_faces.empty() && cls.non_flat_interior_vertices.empty()) return {};

    std::set<EdgeId> edges;
    auto dec = interior(m);
    std::set<VertexId> handled_vertices;
    std::set<FaceId> handled_faces;

    for (const auto& comp : dec.components) {
        auto standalone = submap_to_map(comp);
        auto sub_edges = collect_connecting_edges(standalone.map, pq);
        // Anchor vertices of the sub-forest trees (on the component
        // boundary) and every non-flat element inside the component are
        // handled by the recursion; anchors then connect onward to the
        // boundary of m.
        std::set<VertexId> anchor_candidates;
        if (!sub_edges.empty()) {
            std::vector<char> in_forest(standalone.map.vertex_count(), 0);
            for (EdgeId e : sub_edges) {
                DartId d = dart_of(e);
                in_forest[standalone.map.origin(d)] = 1;
                in_forest[standalone.map.head(d)] = 1;
            }
            for (VertexId v = 0; v < standalone.map.vertex_count(); ++v)
                if (in_forest[v] && standalone.map.is_exterior_vertex(v))
                    anchor_candidates.insert(v);
        }
        for (EdgeId e : sub_edges) edges.insert(standalone.edge_to_parent[e]);
        for (VertexId v : anchor_candidates) {
            for (EdgeId e : path_to_boundary(m, standalone.vertex_to_parent[v]))
                edges.insert(e);
        }
        // Everything strictly inside the component is handled.
        for (FaceId f : comp.faces) handled_faces.insert(f);
        std::set<VertexId> comp_boundary;
        for (const auto& walk : comp.boundary_walks)
            for (DartId d : walk) comp_boundary.insert(m.origin(d));
        for (VertexId v : comp.vertices)
            if (!comp_boundary.count(v)) handled_vertices.insert(v);
    }

    for (VertexId v : cls.non_flat_interior_vertices) {
        if (handled_vertices.count(v)) continue;
        for (EdgeId e : path_to_boundary(m, v)) edges.insert(e);
    }
    for (FaceId f : cls.non_flat_faces) {
        if (handled_faces.count(f)) continue;
        bool touches = false;
        for (DartId d : m.face_walk(f))
            if (m.is_exterior_vertex(m.origin(d))) touches = true;
        if (touches) continue;  // already connected with an empty path
        VertexId v = m.origin(m.face_walk(f).front());
        for (EdgeId e : path_to_boundary(m, v)) edges.insert(e);
    }
    return {edges.begin(), edges.end()};
}

// True when every terminal is connected to the boundary inside the edge
// set.
bool terminals_connected(const PlanarMap& m, const FlatClassification& cls,
                         const std::set<EdgeId>& edges) {
    std::vector<std::vector<VertexId>> adj(m.vertex_count());
    for (EdgeId e : edges) {
        DartId d = dart_of(e);
        adj[m.origin(d)].push_back(m.head(d));
        adj[m.head(d)].push_back(m.origin(d));
    }
    std::vector<char> reach(m.vertex_count(), 0);
    std::deque<VertexId> queue;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.is_exterior_vertex(v)) {
            reach[v] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (VertexId w : adj[v])
            if (!reach[w]) {
                reach[w] = 1;
                queue.push_back(w);
            }
    }
    for (VertexId v : cls.non_flat_interior_vertices)
        if (!reach[v]) return false;
    for (FaceId f : cls.non_flat_faces) {
        bool ok = false;
        for (DartId d : m.face_walk(f))
            if (reach[m.origin(d)]) ok = true;
        if (!ok) return false;
    }
    return true;
}

}  // namespace

ConnectingForest connecting_forest(const PlanarMap& m, const PQParams& pq) {
    if (!is_pq_star_map(m, pq))
        throw MapError(MapErrorKind::PreconditionFailed,
                       "connecting forests require a (p,q)*-map");
    auto cls = classify_flat(m, pq);
    auto raw = collect_connecting_edges(m, pq);
    std::set<EdgeId> edges(raw.begin(), raw.end());
    if (!terminals_connected(m, cls, edges))
        throw MapError(MapErrorKind::TheoremViolation,
                       "constructed subgraph misses a terminal");

    // Reverse-delete down to an edge-minimal subgraph: minimality forces a
    // forest whose trees each touch the boundary exactly once.
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        std::vector<EdgeId> order(edges.rbegin(), edges.rend());
        for (EdgeId e : order) {
            std::set<EdgeId> reduced = edges;
            reduced.erase(e);
            if (terminals_connected(m, cls, reduced)) {
                edges = std::move(reduced);
                shrunk = true;
            }
        }
    }

    ConnectingForest forest;
    forest.edges.assign(edges.begin(), edges.end());

    // Trees and anchors.
    std::vector<int> uf(m.vertex_count());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (EdgeId e : forest.edges) uf[find(m.origin(dart_of(e)))] = find(m.head(dart_of(e)));
    std::map<int, std::vector<EdgeId>> trees;
    for (EdgeId e : forest.edges) trees[find(m.origin(dart_of(e)))].push_back(e);
    for (auto& [root, tree_edges] : trees) {
        std::set<VertexId> verts;
        for (EdgeId e : tree_edges) {
            verts.insert(m.origin(dart_of(e)));
            verts.insert(m.head(dart_of(e)));
        }
        if (verts.size() != tree_edges.size() + 1)
            throw MapError(MapErrorKind::TheoremViolation, "forest has a cycle");
        std::vector<VertexId> boundary;
        for (VertexId v : verts)
            if (m.is_exterior_vertex(v)) boundary.push_back(v);
        if (boundary.size() != 1)
            throw MapError(MapErrorKind::TheoremViolation,
                           "forest tree touches the boundary " +
                               std::to_string(boundary.size()) + " times");
        forest.trees.push_back(tree_edges);
        forest.anchors.push_back(boundary.front());
    }

    if (forest.edge_budget() > (pq.p() - 1) * m.perimeter())
        throw MapError(MapErrorKind::TheoremViolation,
                       "forest exceeds the (p-1)n edge bound");
    return forest;
}

PlanarMap cut_along_edge(const PlanarMap& m, EdgeId e) {
    DartId a = dart_of(e);
    if (m.is_exterior_edge(e))
        throw MapError(MapErrorKind::InvalidArgument, "cannot cut along a boundary edge");
    VertexId u = m.origin(a);
    VertexId v = m.head(a);
    if (m.is_exterior_vertex(v)) std::swap(u, v), a = twin(a);
    if (!m.is_exterior_vertex(u) || m.is_exterior_vertex(m.head(a)))
        throw MapError(MapErrorKind::InvalidArgument,
                       "cut edge needs exactly one boundary endpoint");
    v = m.head(a);
    DartId a_twin = twin(a);

    // Outer corner at u: consecutive rotation darts (x, y) with orbit(y)
    // outer; deterministic pick by minimal y.
    auto rot = m.rotation(u);
    const int deg = static_cast<int>(rot.size());
    int wedge = -1;
    for (int j = 0; j < deg; ++j) {
        DartId y = rot[(j + 1) % deg];
        if (m.on_outer(y) && (wedge == -1 || y < rot[(wedge + 1) % deg])) wedge = j;
    }
    if (wedge == -1)
        throw MapError(MapErrorKind::InvalidArgument, "endpoint not on the boundary");
    DartId a_j = rot[wedge];
    DartId a_j1 = rot[(wedge + 1) % deg];

    Walks ws(m);
    VertexId u2 = ws.vertex_count++;
    DartId z = ws.new_edge();  // u2 -> v
    DartId z_twin = twin(z);   // v -> u2
    ws.origin[z] = u2;
    ws.origin[z_twin] = v;

    // Move the rotation arc (a, a_j] to u2.
    int pos_a = -1;
    for (int j = 0; j < deg; ++j)
        if (rot[j] == a) pos_a = j;
    if (pos_a == -1) throw MapError(MapErrorKind::InvalidArgument, "cut dart misplaced");
    for (int j = (pos_a + 1) % deg; ; j = (j + 1) % deg) {
        ws.origin[rot[j]] = u2;
        if (rot[j] == a_j) break;
        if (j == pos_a)
            throw MapError(MapErrorKind::InvalidArgument, "degenerate cut arc");
    }

    // Outer: ... twin(a_j), a_j1 ... becomes ... twin(a_j), z, a_twin, a_j1 ...
    auto it = std::find(ws.outer.begin(), ws.outer.end(), a_j1);
    DartId prev = (it == ws.outer.begin()) ? ws.outer.back() : *(it - 1);
    if (it == ws.outer.end() || prev != twin(a_j))
        throw MapError(MapErrorKind::TheoremViolation, "outer wedge tracing failed");
    it = ws.outer.insert(it, a_twin);
    ws.outer.insert(it, z);

    // The old face of a_twin keeps its shape with a_twin replaced by z_twin.
    FaceId f2 = m.face_of(a_twin);
    if (f2 == PlanarMap::kOuterFace)
        throw MapError(MapErrorKind::InvalidArgument, "cut edge lies on the boundary");
    auto& walk = ws.bounded[f2];
    *std::find(walk.begin(), walk.end(), a_twin) = z_twin;

    return ws.build();
}

CutResult cut_along_forest(const PlanarMap& m, const ConnectingForest& forest) {
    CutResult out{m, 0};
    const int area0 = m.face_count();
    const int n0 = m.perimeter();
    std::set<EdgeId> remaining(forest.edges.begin(), forest.edges.end());
    while (!remaining.empty()) {
        EdgeId chosen = -1;
        for (EdgeId e : remaining) {
            DartId d = dart_of(e);
            bool ou = out.map.is_exterior_vertex(out.map.origin(d));
            bool ov = out.map.is_exterior_vertex(out.map.head(d));
            if (ou != ov) {
                chosen = e;
                break;
            }
        }
        if (chosen == -1)
            throw MapError(MapErrorKind::TheoremViolation,
                           "no forest edge touches the current boundary");
        out.map = cut_along_edge(out.map, chosen);
        remaining.erase(chosen);
        ++out.cuts;
    }
    if (out.map.face_count() != area0)
        throw MapError(MapErrorKind::TheoremViolation, "cutting changed the area");
    if (out.map.perimeter() != n0 + 2 * out.cuts)
        throw MapError(MapErrorKind::TheoremViolation,
                       "cutting perimeter bookkeeping failed");
    return out;
}

}  // namespace pqmap
