#include "pqmap/generators.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "pqmap/submap.hpp"

#include "lattice.hpp"

namespace pqmap {

namespace {

PlanarMap single_vertex_map() { return PlanarMap::build({{}}, kNoDart); }

}  // namespace

PlanarMap gen_standard(int p, int n) {
    if (p != 3 && p != 4 && p != 6)
        throw MapError(MapErrorKind::InvalidArgument, "standard p must be 3, 4 or 6");
    if (n < 0) throw MapError(MapErrorKind::InvalidArgument, "n must be non-negative");
    if (n == 0) return single_vertex_map();
    if (p == 4) {
        return lattice::build_lattice_map(lattice::SquareLattice{}, lattice::square_block(n)).map;
    }
    if (p == 3) {
        return lattice::build_lattice_map(lattice::TriangularLattice{}, lattice::hexagon_ball(n)).map;
    }
    // S^6_n: weak dual of the triangle-seeded growth.
    auto grown = lattice::build_lattice_map(lattice::TriangularLattice{}, lattice::triangle_growth(n)).map;
    return weak_dual(grown);
}

// ---- local moves ----------------------------------------------------------

namespace {

struct WalkSet {
    std::vector<std::vector<DartId>> bounded;
    std::vector<DartId> outer;
    std::vector<VertexId> origin;
    int vertex_count;

    explicit WalkSet(const PlanarMap& m) : vertex_count(m.vertex_count()) {
        bounded.reserve(m.face_count());
        for (FaceId f = 0; f < m.face_count(); ++f) {
            auto walk = m.face_walk(f);
            bounded.emplace_back(walk.begin(), walk.end());
        }
        outer.assign(m.outer_orbit().begin(), m.outer_orbit().end());
        origin.resize(m.dart_count());
        for (DartId d = 0; d < m.dart_count(); ++d) origin[d] = m.origin(d);
    }

    DartId new_edge() {
        DartId d = static_cast<int>(origin.size());
        origin.push_back(-1);
        origin.push_back(-1);
        return d;
    }

    // Removes the given edges and compacts dart ids; walks must no longer
    // reference them.
    PlanarMap build_removing(const std::vector<EdgeId>& removed_edges) {
        std::vector<char> removed(origin.size() / 2, 0);
        for (EdgeId e : removed_edges) removed[e] = 1;
        std::vector<DartId> remap(origin.size(), kNoDart);
        int next = 0;
        for (EdgeId e = 0; e < static_cast<int>(origin.size()) / 2; ++e) {
            if (removed[e]) continue;
            remap[2 * e] = next++;
            remap[2 * e + 1] = next++;
        }
        std::vector<VertexId> new_origin(next);
        for (DartId d = 0; d < static_cast<int>(origin.size()); ++d)
            if (remap[d] != kNoDart) new_origin[remap[d]] = origin[d];

        // Vertices may disappear (e.g. after trimming); compact them too.
        std::vector<int> vmap(vertex_count, -1);
        int vnext = 0;
        for (DartId d = 0; d < next; ++d) {
            VertexId v = new_origin[d];
            if (vmap[v] == -1) vmap[v] = 0;
        }
        if (next == 0) {
            // Map degenerated to a single vertex.
            return single_vertex_map();
        }
        for (VertexId v = 0; v < vertex_count; ++v)
            if (vmap[v] == 0) vmap[v] = vnext++;
        for (auto& v : new_origin) v = vmap[v];

        auto remap_walk = [&](const std::vector<DartId>& walk) {
            std::vector<DartId> out;
            out.reserve(walk.size());
            for (DartId d : walk) {
                if (remap[d] != kNoDart) out.push_back(remap[d]);
            }
            return out;
        };
        std::vector<std::vector<DartId>> new_bounded;
        for (const auto& walk : bounded) {
            auto w = remap_walk(walk);
            if (!w.empty()) new_bounded.push_back(std::move(w));
        }
        return PlanarMap::build_from_orbits(new_bounded, remap_walk(outer), new_origin, vnext);
    }

    PlanarMap build() { return build_removing({}); }
};

std::vector<DartId>::iterator find_dart(std::vector<DartId>& walk, DartId d) {
    auto it = std::find(walk.begin(), walk.end(), d);
    if (it == walk.end())
        throw MapError(MapErrorKind::InvalidArgument, "dart not on expected walk");
    return it;
}

}  // namespace

PlanarMap attach_boundary_face(const PlanarMap& m, DartId outer_dart, int face_degree) {
    if (!m.on_outer(outer_dart))
        throw MapError(MapErrorKind::InvalidArgument, "attachment dart must be on the outer orbit");
    if (face_degree < 3)
        throw MapError(MapErrorKind::InvalidArgument, "attached face needs degree >= 3");
    WalkSet ws(m);
    VertexId u = m.origin(outer_dart);
    VertexId w = m.head(outer_dart);

    // New face walk (d, n_1, ..., n_{k-1}) running w -> y_1 -> ... -> u; the
    // outer walk replaces d with the twins of the new path reversed.
    std::vector<DartId> face_walk{outer_dart};
    std::vector<DartId> new_darts;
    VertexId prev = w;
    for (int i = 1; i < face_degree; ++i) {
        DartId n = ws.new_edge();
        VertexId target = (i == face_degree - 1) ? u : ws.vertex_count++;
        ws.origin[n] = prev;
        ws.origin[twin(n)] = target;
        face_walk.push_back(n);
        new_darts.push_back(n);
        prev = target;
    }
    auto it = find_dart(ws.outer, outer_dart);
    std::vector<DartId> replacement;
    for (auto rit = new_darts.rbegin(); rit != new_darts.rend(); ++rit)
        replacement.push_back(twin(*rit));
    it = ws.outer.erase(it);
    ws.outer.insert(it, replacement.begin(), replacement.end());
    ws.bounded.push_back(std::move(face_walk));
    return ws.build();
}

PlanarMap merge_faces_at(const PlanarMap& m, EdgeId e) {
    DartId a = dart_of(e);
    FaceId f1 = m.face_of(a);
    FaceId f2 = m.face_of(twin(a));
    if (f1 == PlanarMap::kOuterFace || f2 == PlanarMap::kOuterFace || f1 == f2)
        throw MapError(MapErrorKind::InvalidArgument,
                       "merge requires an interior edge between distinct faces");
    WalkSet ws(m);
    auto& w1 = ws.bounded[f1];
    auto& w2 = ws.bounded[f2];
    auto i1 = find_dart(w1, a);
    auto i2 = find_dart(w2, twin(a));
    std::vector<DartId> merged;
    merged.insert(merged.end(), i1 + 1, w1.end());
    merged.insert(merged.end(), w1.begin(), i1);
    merged.insert(merged.end(), i2 + 1, w2.end());
    merged.insert(merged.end(), w2.begin(), i2);
    // Replace f1's walk, drop f2's.
    w1 = std::move(merged);
    ws.bounded.erase(ws.bounded.begin() + f2);
    return ws.build_removing({e});
}

PlanarMap contract_interior_edge(const PlanarMap& m, EdgeId e) {
    DartId a = dart_of(e);
    if (m.is_exterior_edge(e))
        throw MapError(MapErrorKind::InvalidArgument, "contraction needs an interior edge");
    VertexId u = m.origin(a);
    VertexId v = m.head(a);
    if (u == v) throw MapError(MapErrorKind::InvalidArgument, "cannot contract a loop");
    WalkSet ws(m);
    for (auto& walk : ws.bounded) {
        walk.erase(std::remove_if(walk.begin(), walk.end(),
                                  [&](DartId d) { return edge_of(d) == e; }),
                   walk.end());
    }
    for (DartId d = 0; d < static_cast<int>(ws.origin.size()); ++d)
        if (ws.origin[d] == v) ws.origin[d] = u;
    return ws.build_removing({e});
}

PlanarMap split_boundary_edge_at(const PlanarMap& m, DartId outer_dart) {
    if (!m.on_outer(outer_dart))
        throw MapError(MapErrorKind::InvalidArgument, "split dart must be on the outer orbit");
    WalkSet ws(m);
    DartId d = outer_dart;
    DartId td = twin(d);
    VertexId w = m.head(d);
    VertexId x = ws.vertex_count++;
    DartId g = ws.new_edge();  // x -> w on the outer side
    ws.origin[g] = x;
    ws.origin[twin(g)] = w;
    // d keeps origin u and now ends at x; twin(d) moves to x.
    ws.origin[td] = x;
    // Bounded face walk: ... twin(d) ... becomes ... twin(g), twin(d) ...
    FaceId f = m.face_of(td);
    if (f == PlanarMap::kOuterFace)
        throw MapError(MapErrorKind::InvalidArgument, "bridge edges cannot be split");
    auto& walk = ws.bounded[f];
    auto it = find_dart(walk, td);
    walk.insert(it, twin(g));
    // Outer walk: ... d ... becomes ... d, g ...
    auto oit = find_dart(ws.outer, d);
    ws.outer.insert(oit + 1, g);
    return ws.build();
}

// ---- random (p,q)-maps ----------------------------------------------------

PlanarMap gen_random_pq(const PQParams& pq, int steps, std::uint64_t seed) {
    const int p = pq.p();
    const int q = pq.q();
    PlanarMap m = gen_standard(p, 2);
    Rng rng(seed);

    for (int step = 0; step < steps; ++step) {
        int kind = static_cast<int>(rng.below(4));
        switch (kind) {
            case 0: {  // boundary p-gon attachment
                std::vector<DartId> candidates;
                for (DartId d : m.outer_orbit()) {
                    if (m.vertex_degree(m.origin(d)) + 1 < 2 * q &&
                        m.vertex_degree(m.head(d)) + 1 < 2 * q)
                        candidates.push_back(d);
                }
                if (candidates.empty()) break;
                m = attach_boundary_face(m, candidates[rng.below(candidates.size())], p);
                break;
            }
            case 1: {  // face merge across an interior edge
                std::vector<EdgeId> candidates;
                for (EdgeId e = 0; e < m.edge_count(); ++e) {
                    DartId a = dart_of(e);
                    FaceId f1 = m.face_of(a);
                    FaceId f2 = m.face_of(twin(a));
                    if (f1 == PlanarMap::kOuterFace || f2 == PlanarMap::kOuterFace || f1 == f2)
                        continue;
                    if (m.face_degree(f1) + m.face_degree(f2) - 2 >= 2 * p) continue;
                    VertexId u = m.origin(a);
                    VertexId v = m.head(a);
                    auto endpoint_ok = [&](VertexId o) {
                        if (m.is_exterior_vertex(o)) return m.vertex_degree(o) >= 3;
                        return m.vertex_degree(o) - 1 >= q;
                    };
                    if (endpoint_ok(u) && endpoint_ok(v)) candidates.push_back(e);
                }
                if (candidates.empty()) break;
                m = merge_faces_at(m, candidates[rng.below(candidates.size())]);
                break;
            }
            case 2: {  // vertex merge (contract an interior edge)
                std::vector<EdgeId> candidates;
                for (EdgeId e = 0; e < m.edge_count(); ++e) {
                    DartId a = dart_of(e);
                    if (m.is_exterior_edge(e)) continue;
                    VertexId u = m.origin(a);
                    VertexId v = m.head(a);
                    if (u == v) continue;
                    if (m.vertex_degree(u) + m.vertex_degree(v) - 2 >= 2 * q) continue;
                    FaceId f1 = m.face_of(a);
                    FaceId f2 = m.face_of(twin(a));
                    if (f1 == f2) continue;
                    if (m.face_degree(f1) - 1 < p || m.face_degree(f2) - 1 < p) continue;
                    // Parallel edges would contract to loops; skip them.
                    bool parallel = false;
                    for (DartId d : m.rotation(u))
                        if (edge_of(d) != e && m.head(d) == v) parallel = true;
                    if (parallel) continue;
                    candidates.push_back(e);
                }
                if (candidates.empty()) break;
                m = contract_interior_edge(m, candidates[rng.below(candidates.size())]);
                break;
            }
            default: {  // boundary edge split (degree-2 exterior vertex)
                std::vector<DartId> candidates;
                for (DartId d : m.outer_orbit()) {
                    FaceId f = m.face_of(twin(d));
                    if (f == PlanarMap::kOuterFace) continue;
                    if (m.face_degree(f) + 1 >= 2 * p) continue;
                    candidates.push_back(d);
                }
                if (candidates.empty()) break;
                m = split_boundary_edge_at(m, candidates[rng.below(candidates.size())]);
                break;
            }
        }
    }

    if (!is_pq_map(m, pq).ok || !condition_B(m, pq))
        throw MapError(MapErrorKind::TheoremViolation,
                       "random generator produced a map outside its invariants");
    return m;
}

GenSpec parse_gen_spec(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::vector<int> args;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::istringstream in(rest);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                args.push_back(std::stoi(tok));
            } catch (...) {
                throw MapError(MapErrorKind::InvalidArgument,
                               "bad generator argument '" + tok + "'");
            }
        }
    }
    GenSpec spec{GenSpec::Kind::Random, 4, 4, 2, 40, 1};
    if (kind == "standard") {
        spec.kind = GenSpec::Kind::Standard;
        if (args.size() < 2)
            throw MapError(MapErrorKind::InvalidArgument, "standard:<p>,<n> expected");
        spec.p = args[0];
        spec.size = args[1];
        spec.q = spec.p == 4 ? 4 : (spec.p == 3 ? 6 : 3);
    } else if (kind == "random" || kind == "perturb") {
        spec.kind = kind == "random" ? GenSpec::Kind::Random : GenSpec::Kind::Perturb;
        if (args.size() < 2)
            throw MapError(MapErrorKind::InvalidArgument, kind + ":<p>,<q>[,k] expected");
        spec.p = args[0];
        spec.q = args[1];
        if (args.size() >= 3) {
            spec.steps = args[2];
            spec.defects = args[2];
        }
    } else {
        throw MapError(MapErrorKind::InvalidArgument, "unknown generator '" + kind + "'");
    }
    return spec;
}

PlanarMap run_gen_spec(const GenSpec& spec, std::uint64_t seed) {
    switch (spec.kind) {
        case GenSpec::Kind::Standard:
            return gen_standard(spec.p, spec.size);
        case GenSpec::Kind::Random:
            return gen_random_pq(PQParams::standard(spec.p, spec.q), spec.steps, seed);
        case GenSpec::Kind::Perturb: {
            auto pq = PQParams::standard(spec.p, spec.q);
            Rng rng(seed);
            int n = 4 + static_cast<int>(rng.below(3));
            auto base = gen_standard(spec.p, n);
            return perturb_defects(base, pq, spec.defects, rng.next()).map;
        }
    }
    throw MapError(MapErrorKind::InvalidArgument, "unreachable");
}

}  // namespace pqmap
