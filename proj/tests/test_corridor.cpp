#include "pqmap/corridor.hpp"

#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "pqmap/generators.hpp"
#include "pqmap/submap.hpp"

using namespace pqmap;
using fixtures::square_region;

namespace {

PlanarMap strip(int k) {
    std::set<lattice::Coord> faces;
    for (int i = 0; i < k; ++i) faces.insert({i, 0});
    return square_region(faces);
}

EdgeId central_interior_edge(const PlanarMap& m) {
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        DartId d = dart_of(e);
        if (m.is_exterior_edge(e)) continue;
        if (!m.is_exterior_vertex(m.origin(d)) && !m.is_exterior_vertex(m.head(d))) return e;
    }
    return -1;
}

}  // namespace

TEST_CASE("straight corridor through a grid") {
    auto m = gen_standard(4, 2);
    EdgeId e = central_interior_edge(m);
    REQUIRE(e != -1);
    auto c = build_corridor(m, e);
    CHECK(c.length() == 4);
    CHECK(c.side_a().size() == 4);
    CHECK(c.side_b().size() == 4);
    // All four faces distinct.
    std::set<FaceId> faces(c.faces.begin(), c.faces.end());
    CHECK(faces.size() == 4);
}

TEST_CASE("boundary edge forces the whole strip") {
    auto m = strip(5);
    // A left-end boundary edge: the vertical edge whose both endpoints have
    // degree 2.
    EdgeId left = -1;
    for (EdgeId e = 0; e < m.edge_count() && left == -1; ++e) {
        DartId d = dart_of(e);
        if (m.is_exterior_edge(e) && m.vertex_degree(m.origin(d)) == 2 &&
            m.vertex_degree(m.head(d)) == 2)
            left = e;
    }
    REQUIRE(left != -1);
    auto c = build_corridor(m, left);
    CHECK(c.length() == 5);
}

TEST_CASE("corridor sides stay simple across a corpus") {
    auto pq = PQParams::standard(4, 4);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto m = gen_random_pq(pq, 60, seed);
        Rng rng(seed);
        for (int trial = 0; trial < 5; ++trial) {
            EdgeId e = static_cast<EdgeId>(rng.below(m.edge_count()));
            DartId d = dart_of(e);
            if (m.on_outer(d) && m.on_outer(twin(d))) continue;  // bridge
            auto c = build_corridor(m, e);  // side simplicity asserted inside
            CHECK(c.length() >= 1);
        }
    }
}

TEST_CASE("collapse of the middle row of a grid") {
    auto m = gen_standard(4, 2);
    EdgeId e = central_interior_edge(m);
    auto c = build_corridor(m, e);
    auto result = collapse_corridor(m, c);
    CHECK(result.map.vertex_count() == m.vertex_count() - 5);
    CHECK(result.map.face_count() == m.face_count() - 4);
    CHECK(is_pq_map(result.map, PQParams::standard(4, 4)).ok);
}

TEST_CASE("full strip collapse degenerates to a path") {
    auto m = strip(4);
    EdgeId left = -1;
    for (EdgeId e = 0; e < m.edge_count() && left == -1; ++e) {
        DartId d = dart_of(e);
        if (m.is_exterior_edge(e) && m.vertex_degree(m.origin(d)) == 2 &&
            m.vertex_degree(m.head(d)) == 2)
            left = e;
    }
    auto c = build_corridor(m, left);
    auto result = collapse_corridor(m, c);
    CHECK(result.map.face_count() == 0);
    CHECK(result.map.vertex_count() == 5);
    CHECK(result.map.edge_count() == 4);
}

TEST_CASE("collapse distance contract on sampled pairs") {
    auto m = gen_standard(4, 4);
    EdgeId e = central_interior_edge(m);
    auto c = build_corridor(m, e);
    auto result = collapse_corridor(m, c);

    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        VertexId a = static_cast<VertexId>(rng.below(m.vertex_count()));
        VertexId b = static_cast<VertexId>(rng.below(m.vertex_count()));
        int before = bfs_from(m, a)[b];
        int after = bfs_from(result.map, result.vertex_image[a])[result.vertex_image[b]];
        CHECK(after <= before);
        CHECK(before <= 2 * after + 1);
    }
}

TEST_CASE("reducing a pentagon in a corridor") {
    // A 1x5 strip whose middle face got one boundary edge split: a pentagon
    // among squares.
    auto m = strip(5);
    DartId split_dart = kNoDart;
    for (DartId d : m.outer_orbit()) {
        FaceId f = m.face_of(twin(d));
        if (f == PlanarMap::kOuterFace) continue;
        // Middle face: exterior face whose two neighbours are faces too.
        int interior_neighbours = 0;
        for (DartId w : m.face_walk(f))
            if (m.face_of(twin(w)) != PlanarMap::kOuterFace) ++interior_neighbours;
        if (interior_neighbours == 2 && split_dart == kNoDart) split_dart = d;
    }
    REQUIRE(split_dart != kNoDart);
    auto with_pentagon = split_boundary_edge_at(m, split_dart);
    FaceId pentagon = -1;
    for (FaceId f = 0; f < with_pentagon.face_count(); ++f)
        if (with_pentagon.face_degree(f) == 5) pentagon = f;
    REQUIRE(pentagon != -1);

    EdgeId start = -1;
    for (EdgeId e = 0; e < with_pentagon.edge_count() && start == -1; ++e) {
        DartId d = dart_of(e);
        if (with_pentagon.is_exterior_edge(e) &&
            with_pentagon.vertex_degree(with_pentagon.origin(d)) == 2 &&
            with_pentagon.vertex_degree(with_pentagon.head(d)) == 2)
            start = e;
    }
    auto c = build_corridor(with_pentagon, start);
    int t = -1;
    for (int i = 0; i < c.length(); ++i)
        if (c.faces[i] == pentagon) t = i + 1;
    REQUIRE(t != -1);

    auto before_degrees = [&](const PlanarMap& mm) {
        std::multiset<int> out;
        for (FaceId f = 0; f < mm.face_count(); ++f) out.insert(mm.face_degree(f));
        return out;
    };
    auto reduced = reduce_face_degree(with_pentagon, c, t);
    CHECK(before_degrees(reduced) == std::multiset<int>{4, 4, 4, 4, 4});
    // The rerouted corridor ends at a degree-2 corner, which gets trimmed:
    // net perimeter change -1 instead of the generic +1.
    CHECK(reduced.perimeter() == with_pentagon.perimeter() - 1);

    // Degree-excess drops by exactly one per call; a clean corridor refuses.
    auto clean = strip(3);
    EdgeId ce = -1;
    for (EdgeId e = 0; e < clean.edge_count() && ce == -1; ++e) {
        DartId d = dart_of(e);
        if (clean.is_exterior_edge(e) && clean.vertex_degree(clean.origin(d)) == 2 &&
            clean.vertex_degree(clean.head(d)) == 2)
            ce = e;
    }
    auto cc = build_corridor(clean, ce);
    CHECK_THROWS_AS((void)reduce_face_degree(clean, cc, 2), MapError);
}

TEST_CASE("iterated reduction clears all excess degree") {
    auto m = strip(6);
    // Two splits on middle faces: two pentagons.
    int splits = 0;
    while (splits < 2) {
        DartId pick = kNoDart;
        for (DartId d : m.outer_orbit()) {
            FaceId f = m.face_of(twin(d));
            if (f == PlanarMap::kOuterFace || m.face_degree(f) != 4) continue;
            int interior_neighbours = 0;
            for (DartId w : m.face_walk(f))
                if (m.face_of(twin(w)) != PlanarMap::kOuterFace) ++interior_neighbours;
            if (interior_neighbours == 2) {
                pick = d;
                break;
            }
        }
        REQUIRE(pick != kNoDart);
        m = split_boundary_edge_at(m, pick);
        ++splits;
    }
    auto excess = [&](const PlanarMap& mm) {
        int total = 0;
        for (FaceId f = 0; f < mm.face_count(); ++f)
            total += std::max(0, mm.face_degree(f) - 4);
        return total;
    };
    int steps = 0;
    int start_excess = excess(m);
    while (excess(m) > 0) {
        EdgeId e = -1;
        for (EdgeId cand = 0; cand < m.edge_count() && e == -1; ++cand) {
            DartId d = dart_of(cand);
            if (m.is_exterior_edge(cand) && m.vertex_degree(m.origin(d)) == 2 &&
                m.vertex_degree(m.head(d)) == 2)
                e = cand;
        }
        REQUIRE(e != -1);
        auto c = build_corridor(m, e);
        int before = excess(m);
        bool reduced = false;
        for (int i = 0; i < c.length() && !reduced; ++i) {
            if (m.face_degree(c.faces[i]) < 5) continue;
            try {
                m = reduce_face_degree(m, c, i + 1);
                reduced = true;
            } catch (const MapError&) {
            }
        }
        REQUIRE(reduced);
        CHECK(excess(m) == before - 1);
        REQUIRE(++steps <= start_excess);
    }
    CHECK(steps == start_excess);
}

TEST_CASE("distance preserving subdivision on a 9-gon") {
    auto m = fixtures::single_polygon(9);
    VertexId o = 0;
    auto before = bfs_from(m, o);
    auto result = distance_preserving_subdivision(m, o);
    for (FaceId f = 0; f < result.face_count(); ++f) CHECK(result.face_degree(f) <= 6);
    auto after = bfs_from(result, o);
    for (VertexId v = 0; v < m.vertex_count(); ++v) CHECK(after[v] == before[v]);
    CHECK(result.vertex_count() == m.vertex_count());
}

TEST_CASE("subdivision is the identity when all faces are small") {
    auto m = gen_standard(4, 2);
    CHECK(distance_preserving_subdivision(m, 0) == m);
}

TEST_CASE("subdivision never increases any pairwise distance") {
    auto pq = PQParams::standard(4, 4);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto m = gen_random_pq(pq, 40, seed);
        if (m.vertex_count() > 60) continue;
        // Merge two boundary-adjacent faces to force a 7-gon when possible.
        for (EdgeId e = 0; e < m.edge_count(); ++e) {
            DartId d = dart_of(e);
            if (m.is_exterior_edge(e)) continue;
            FaceId f1 = m.face_of(d);
            FaceId f2 = m.face_of(twin(d));
            if (f1 == f2) continue;
            if (m.face_degree(f1) + m.face_degree(f2) - 2 != 7) continue;
            if (!m.is_exterior_vertex(m.origin(d)) || !m.is_exterior_vertex(m.head(d)))
                continue;
            m = merge_faces_at(m, e);
            break;
        }
        VertexId o = static_cast<VertexId>(seed % m.vertex_count());
        std::vector<std::vector<int>> before;
        for (VertexId v = 0; v < m.vertex_count(); ++v) before.push_back(bfs_from(m, v));
        auto result = distance_preserving_subdivision(m, o);
        for (VertexId v = 0; v < m.vertex_count(); ++v) {
            auto after = bfs_from(result, v);
            for (VertexId w = 0; w < m.vertex_count(); ++w) {
                CHECK(after[w] <= before[v][w]);
                if (v == o) CHECK(after[w] == before[v][w]);
            }
        }
    }
}
