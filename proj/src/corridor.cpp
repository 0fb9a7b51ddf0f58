#include "pqmap/corridor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pqmap {

std::vector<DartId> Corridor::side_a() const {
    std::vector<DartId> out;
    for (const auto& arc : arcs_a) out.insert(out.end(), arc.begin(), arc.end());
    return out;
}

std::vector<DartId> Corridor::side_b() const {
    std::vector<DartId> out;
    for (auto it = arcs_b.rbegin(); it != arcs_b.rend(); ++it)
        out.insert(out.end(), it->begin(), it->end());
    return out;
}

namespace {

int walk_position(std::span<const DartId> walk, DartId d) {
    for (int i = 0; i < static_cast<int>(walk.size()); ++i)
        if (walk[i] == d) return i;
    throw MapError(MapErrorKind::InvalidArgument, "dart not on face walk");
}

// Successor gluing dart inside the face of g: the walk dart at the chosen
// offset, twinned into the next face.
DartId successor_gluing(const PlanarMap& m, DartId g, CorridorRule rule) {
    FaceId f = m.face_of(g);
    auto walk = m.face_walk(f);
    const int d = static_cast<int>(walk.size());
    if (d < 4)
        throw MapError(MapErrorKind::PreconditionFailed,
                       "face of degree " + std::to_string(d) +
                           " admits no non-adjacent gluing edge");
    int pos = walk_position(walk, g);
    int offset = d / 2;
    (void)rule;
    if (d % 2 == 1) {
        // Both floor and ceil are maximally antipodal; take the smaller dart.
        DartId lo = walk[(pos + offset) % d];
        DartId hi = walk[(pos + offset + 1) % d];
        return twin(std::min(lo, hi));
    }
    return twin(walk[(pos + offset) % d]);
}

void assert_side_simple(const PlanarMap& m, const std::vector<DartId>& side, const char* which) {
    if (side.empty()) return;
    std::set<VertexId> seen;
    for (DartId d : side)
        if (!seen.insert(m.origin(d)).second)
            throw MapError(MapErrorKind::TheoremViolation,
                           std::string("corridor side ") + which + " passes vertex " +
                               std::to_string(m.origin(d)) + " twice");
    if (seen.count(m.head(side.back())))
        throw MapError(MapErrorKind::TheoremViolation,
                       std::string("corridor side ") + which + " passes its endpoint twice");
}

}  // namespace

Corridor build_corridor(const PlanarMap& m, EdgeId e, CorridorRule rule) {
    require_pq_map(m, PQParams::standard(4, 4));
    if (e < 0 || e >= m.edge_count())
        throw MapError(MapErrorKind::InvalidArgument, "edge id out of range");

    // Forward chain from a dart, collecting gluing darts until one lies on
    // the boundary.
    auto extend = [&](DartId g0) {
        std::vector<DartId> chain;
        std::set<DartId> seen;
        DartId g = g0;
        while (!m.on_outer(g)) {
            if (!seen.insert(g).second)
                throw MapError(MapErrorKind::TheoremViolation, "corridor cycled");
            chain.push_back(g);
            g = successor_gluing(m, g, rule);
        }
        chain.push_back(g);  // final boundary dart
        return chain;
    };

    DartId a = dart_of(e);
    Corridor c;
    if (m.on_outer(a) || m.on_outer(twin(a))) {
        // Boundary start: run through the single bounded side.  The first
        // rung is the starting edge itself, oriented into its face.
        DartId g0 = m.on_outer(a) ? twin(a) : a;
        if (m.on_outer(g0))
            throw MapError(MapErrorKind::InvalidArgument, "bridge edges start no corridor");
        c.gluing = extend(g0);
    } else {
        auto forward = extend(a);
        auto backward = extend(twin(a));
        c.gluing.reserve(forward.size() + backward.size() - 1);
        for (auto it = backward.rbegin(); it != backward.rend(); ++it)
            c.gluing.push_back(twin(*it));
        // backward's first element is twin(a); its twin is a == forward[0].
        c.gluing.pop_back();
        c.gluing.insert(c.gluing.end(), forward.begin(), forward.end());
    }

    const int rungs = static_cast<int>(c.gluing.size());
    for (int i = 0; i + 1 < rungs; ++i) {
        DartId g = c.gluing[i];
        FaceId f = m.face_of(g);
        c.faces.push_back(f);
        auto walk = m.face_walk(f);
        const int d = static_cast<int>(walk.size());
        int pos_in = walk_position(walk, g);
        int pos_out = walk_position(walk, twin(c.gluing[i + 1]));
        std::vector<DartId> arc_a, arc_b;
        for (int k = (pos_in + 1) % d; k != pos_out; k = (k + 1) % d)
            arc_a.push_back(walk[k]);
        for (int k = (pos_out + 1) % d; k != pos_in; k = (k + 1) % d)
            arc_b.push_back(walk[k]);
        if (arc_a.empty() || arc_b.empty())
            throw MapError(MapErrorKind::TheoremViolation, "adjacent gluing edges");
        c.arcs_a.push_back(std::move(arc_a));
        c.arcs_b.push_back(std::move(arc_b));
    }

    assert_side_simple(m, c.side_a(), "q");
    assert_side_simple(m, c.side_b(), "q'");
    return c;
}

Corridor corridor_reversed(const Corridor& c) {
    Corridor r;
    for (auto it = c.gluing.rbegin(); it != c.gluing.rend(); ++it) r.gluing.push_back(twin(*it));
    r.faces.assign(c.faces.rbegin(), c.faces.rend());
    const int t = c.length();
    for (int i = t - 1; i >= 0; --i) {
        // The sides swap roles; the dart sequences live on the face walks
        // and stay as they are.
        r.arcs_a.push_back(c.arcs_b[i]);
        r.arcs_b.push_back(c.arcs_a[i]);
    }
    return r;
}

namespace {

struct WalkEdit {
    std::vector<std::vector<DartId>> bounded;
    std::vector<DartId> outer;
    std::vector<VertexId> origin;
    int vertex_count;

    explicit WalkEdit(const PlanarMap& m) : vertex_count(m.vertex_count()) {
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

    // Builds after dropping the listed edges and any face whose walk went
    // empty; compacts dart, vertex ids.  `vertex_merge` maps old to
    // surviving vertex ids before compaction.
    PlanarMap build(const std::set<EdgeId>& removed_edges,
                    const std::vector<VertexId>& vertex_merge,
                    std::vector<VertexId>* out_vertex_image = nullptr) {
        std::vector<DartId> remap(origin.size(), kNoDart);
        int next = 0;
        for (EdgeId e = 0; e < static_cast<int>(origin.size()) / 2; ++e) {
            if (removed_edges.count(e)) continue;
            remap[2 * e] = next++;
            remap[2 * e + 1] = next++;
        }
        std::vector<VertexId> merged_origin(next);
        for (DartId d = 0; d < static_cast<int>(origin.size()); ++d)
            if (remap[d] != kNoDart) merged_origin[remap[d]] = vertex_merge[origin[d]];

        std::vector<int> vmap(vertex_count, -1);
        for (VertexId v : merged_origin) vmap[v] = 0;
        int vnext = 0;
        for (VertexId v = 0; v < vertex_count; ++v)
            if (vmap[v] == 0) vmap[v] = vnext++;
        for (auto& v : merged_origin) v = vmap[v];
        if (out_vertex_image) {
            out_vertex_image->assign(vertex_count, -1);
            for (VertexId v = 0; v < vertex_count; ++v)
                (*out_vertex_image)[v] = vmap[vertex_merge[v]];
        }

        auto remap_walk = [&](const std::vector<DartId>& walk) {
            std::vector<DartId> out;
            for (DartId d : walk)
                if (remap[d] != kNoDart) out.push_back(remap[d]);
            return out;
        };
        std::vector<std::vector<DartId>> new_bounded;
        for (const auto& walk : bounded) {
            auto w = remap_walk(walk);
            if (!w.empty()) new_bounded.push_back(std::move(w));
        }
        if (next == 0) return PlanarMap::build({{}}, kNoDart);
        return PlanarMap::build_from_orbits(new_bounded, remap_walk(outer), merged_origin,
                                            vnext);
    }
};

}  // namespace

CollapseResult collapse_corridor(const PlanarMap& m, const Corridor& c) {
    const int t = c.length();
    if (t == 0) throw MapError(MapErrorKind::InvalidArgument, "empty corridor");
    for (FaceId f : c.faces)
        if (m.face_degree(f) != 4)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "collapse requires a corridor of degree-4 faces");
    if (!m.on_outer(c.gluing.back()) || !m.on_outer(twin(c.gluing.front())))
        throw MapError(MapErrorKind::PreconditionFailed,
                       "collapse requires a boundary-to-boundary corridor");

    // Union side vertices pairwise and the side edges f_i ~ g_i; the merged
    // edge keeps f_i's id, with dart f_i matching twin(g_i).
    std::vector<int> uf(m.vertex_count());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (DartId g : c.gluing) uf[find(m.origin(g))] = find(m.head(g));

    WalkEdit ws(m);
    std::set<EdgeId> removed;
    for (DartId g : c.gluing) removed.insert(edge_of(g));

    // dart substitution: g_i -> twin(f_i), twin(g_i) -> f_i.
    std::vector<DartId> subst(m.dart_count());
    std::iota(subst.begin(), subst.end(), 0);
    for (int i = 0; i < t; ++i) {
        if (c.arcs_a[i].size() != 1 || c.arcs_b[i].size() != 1)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "degree-4 corridor faces must have single-edge arcs");
        DartId f_dart = c.arcs_a[i][0];
        DartId g_dart = c.arcs_b[i][0];
        subst[g_dart] = twin(f_dart);
        subst[twin(g_dart)] = f_dart;
        removed.insert(edge_of(g_dart));
    }

    // Remove corridor faces; substitute darts everywhere else.  The merged
    // edge must not be dropped, so removal happens on the g-side ids only.
    std::vector<char> is_corridor_face(m.face_count(), 0);
    for (FaceId f : c.faces) is_corridor_face[f] = 1;
    std::vector<std::vector<DartId>> new_bounded;
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (is_corridor_face[f]) continue;
        std::vector<DartId> walk;
        for (DartId d : ws.bounded[f]) {
            DartId s = subst[d];
            if (removed.count(edge_of(s))) continue;
            walk.push_back(s);
        }
        new_bounded.push_back(std::move(walk));
    }
    std::vector<DartId> new_outer;
    for (DartId d : ws.outer) {
        DartId s = subst[d];
        if (removed.count(edge_of(s))) continue;
        new_outer.push_back(s);
    }
    ws.bounded = std::move(new_bounded);
    ws.outer = std::move(new_outer);
    std::vector<VertexId> merge(m.vertex_count());
    for (VertexId v = 0; v < m.vertex_count(); ++v) merge[v] = find(v);

    CollapseResult out;
    out.map = ws.build(removed, merge, &out.vertex_image);
    if (out.map.face_count() > 0) {
        auto verdict = is_pq_map(out.map, PQParams::standard(4, 4));
        if (!verdict.ok)
            throw MapError(MapErrorKind::TheoremViolation,
                           "collapse result is not a (4,4)-map");
    }
    return out;
}

PlanarMap reduce_face_degree(const PlanarMap& m, const Corridor& c, int t) {
    if (t < 1 || t > c.length())
        throw MapError(MapErrorKind::InvalidArgument, "face index out of corridor range");

    // Work on the side whose arc at t has length >= 2 and whose downstream
    // arcs are single edges; try the corridor as given, then reversed.
    auto viable = [&](const Corridor& cc, int tt) {
        if (static_cast<int>(cc.arcs_a[tt - 1].size()) < 2) return false;
        for (int s = tt; s < cc.length(); ++s)
            if (cc.arcs_a[s].size() != 1) return false;
        return true;
    };
    Corridor reversed = corridor_reversed(c);
    int t_rev = c.length() + 1 - t;
    const Corridor* use = nullptr;
    int tt = t;
    if (viable(c, t)) {
        use = &c;
    } else if (viable(reversed, t_rev)) {
        use = &reversed;
        tt = t_rev;
    } else {
        throw MapError(MapErrorKind::PreconditionFailed,
                       "no side offers a length->=2 arc at t with single-edge arcs beyond");
    }
    const Corridor& cc = *use;
    const int R = cc.length();
    if (m.face_degree(cc.faces[tt - 1]) < 5)
        throw MapError(MapErrorKind::PreconditionFailed,
                       "target face already has degree 4");

    WalkEdit ws(m);
    std::set<EdgeId> removed_edges;
    // New rungs F_s for s in [tt..R]; F_s runs prevA(s) -> B-vertex of rung s,
    // where prevA(tt) is the second-to-last vertex of arc_a[tt-1] and
    // prevA(s) = head(gluing[s-1]) afterwards.
    std::vector<DartId> new_rung(R + 1, kNoDart);
    for (int s = tt; s <= R; ++s) {
        DartId F = ws.new_edge();
        new_rung[s] = F;
        VertexId prev_a = (s == tt)
                              ? ws.origin[cc.arcs_a[tt - 1].back()]
                              : m.head(cc.gluing[s - 1]);
        ws.origin[F] = prev_a;
        ws.origin[twin(F)] = m.origin(cc.gluing[s]);
        removed_edges.insert(edge_of(cc.gluing[s]));
    }

    // Face tt-1 loses its last A-edge and its outgoing rung.
    {
        FaceId f = cc.faces[tt - 1];
        std::vector<DartId> walk{cc.gluing[tt - 1]};
        const auto& arc = cc.arcs_a[tt - 1];
        walk.insert(walk.end(), arc.begin(), arc.end() - 1);
        walk.push_back(new_rung[tt]);
        const auto& arcb = cc.arcs_b[tt - 1];
        walk.insert(walk.end(), arcb.begin(), arcb.end());
        ws.bounded[f] = std::move(walk);
    }
    // Faces tt..R-1 shift their A-edge back by one rung.
    for (int s = tt; s < R; ++s) {
        FaceId f = cc.faces[s];
        DartId a_dart = (s == tt) ? cc.arcs_a[tt - 1].back() : cc.arcs_a[s - 1][0];
        std::vector<DartId> walk{twin(new_rung[s]), a_dart, new_rung[s + 1]};
        const auto& arcb = cc.arcs_b[s];
        walk.insert(walk.end(), arcb.begin(), arcb.end());
        ws.bounded[f] = std::move(walk);
    }
    // Outer walk: the final boundary rung is replaced by the rerouted rung
    // plus the freed A-edge, lengthening the boundary by one.  When the
    // old rung ended at a degree-2 corner the freed edge would dangle;
    // drop both and the corner vertex instead.
    {
        DartId old_rung = cc.gluing[R];
        DartId freed = (R == tt) ? cc.arcs_a[tt - 1].back() : cc.arcs_a[R - 1][0];
        auto it = std::find(ws.outer.begin(), ws.outer.end(), old_rung);
        if (it == ws.outer.end())
            throw MapError(MapErrorKind::TheoremViolation, "corridor end not on boundary");
        VertexId tip = m.head(old_rung);
        if (m.vertex_degree(tip) == 2) {
            auto next = (it + 1 == ws.outer.end()) ? ws.outer.begin() : it + 1;
            if (*next != twin(freed))
                throw MapError(MapErrorKind::TheoremViolation,
                               "degenerate corner tracing failed");
            *it = twin(new_rung[R]);
            ws.outer.erase(next > it ? next : ws.outer.begin());
            removed_edges.insert(edge_of(freed));
        } else {
            *it = twin(new_rung[R]);
            ws.outer.insert(it + 1, freed);
        }
    }

    std::vector<VertexId> identity(m.vertex_count());
    std::iota(identity.begin(), identity.end(), 0);
    return ws.build(removed_edges, identity);
}

PlanarMap distance_preserving_subdivision(const PlanarMap& m, VertexId o) {
    if (o < 0 || o >= m.vertex_count())
        throw MapError(MapErrorKind::InvalidArgument, "marked vertex out of range");
    PlanarMap current = m;
    while (true) {
        FaceId big = -1;
        for (FaceId f = 0; f < current.face_count(); ++f)
            if (current.face_degree(f) >= 7) {
                big = f;
                break;
            }
        if (big == -1) break;

        auto dist = bfs_from(current, o);
        auto walk = current.face_walk(big);
        const int d = static_cast<int>(walk.size());
        const int j = d / 2;
        int chosen = -1;
        for (int i = 0; i < d && chosen == -1; ++i) {
            int fi = dist[current.origin(walk[i])] -
                     dist[current.origin(walk[(i + j) % d])];
            if (fi >= -1 && fi <= 1) chosen = i;
        }
        if (chosen == -1)
            throw MapError(MapErrorKind::TheoremViolation,
                           "no near-balanced diagonal found");

        WalkEdit ws(current);
        DartId g = ws.new_edge();
        VertexId v1 = current.origin(walk[chosen]);
        VertexId v2 = current.origin(walk[(chosen + j) % d]);
        ws.origin[g] = v2;
        ws.origin[twin(g)] = v1;
        std::vector<DartId> first, second;
        for (int k = chosen; k != (chosen + j) % d; k = (k + 1) % d) first.push_back(walk[k]);
        first.push_back(g);
        for (int k = (chosen + j) % d; k != chosen; k = (k + 1) % d) second.push_back(walk[k]);
        second.push_back(twin(g));
        ws.bounded[big] = std::move(first);
        ws.bounded.push_back(std::move(second));
        std::vector<VertexId> identity(current.vertex_count());
        std::iota(identity.begin(), identity.end(), 0);
        current = ws.build({}, identity);
    }
    return current;
}

}  // namespace pqmap
