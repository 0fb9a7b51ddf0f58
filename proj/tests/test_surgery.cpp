#include "pqmap/surgery.hpp"

#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "pqmap/generators.hpp"
#include "pqmap/submap.hpp"

using namespace pqmap;
using fixtures::quad_wheel;
using fixtures::single_polygon;

TEST_CASE("subdividing an octagon gives two pentagons") {
    auto pq = PQParams::standard(4, 4);
    auto m = subdivide_large_faces(single_polygon(8), pq);
    REQUIRE(m.face_count() == 2);
    CHECK(m.face_degree(0) == 5);
    CHECK(m.face_degree(1) == 5);
    CHECK(m.vertex_count() == 8);  // no new vertices
    CHECK(condition_B(m, pq));
}

TEST_CASE("subdividing a 13-gon lands every degree in [5, 7]") {
    auto pq = PQParams::standard(4, 4);
    auto m = subdivide_large_faces(single_polygon(13), pq);
    for (FaceId f = 0; f < m.face_count(); ++f) {
        CHECK(m.face_degree(f) >= 5);
        CHECK(m.face_degree(f) <= 7);
    }
    CHECK(m.vertex_count() == 13);
    CHECK(is_pq_map(m, pq).ok);
}

TEST_CASE("maps already under (B) pass through unchanged") {
    auto pq = PQParams::standard(4, 4);
    auto m = gen_standard(4, 2);
    CHECK(subdivide_large_faces(m, pq) == m);
    CHECK(split_large_vertices(m, pq) == m);
    CHECK(adjust_to_condition_B(m, pq) == m);
}

TEST_CASE("splitting an interior vertex of degree 9") {
    auto pq = PQParams::standard(4, 4);
    auto wheel = quad_wheel(9);
    REQUIRE(wheel.vertex_degree(0) == 9);
    REQUIRE(!wheel.is_exterior_vertex(0));
    auto m = split_large_vertices(wheel, pq);
    CHECK(m.vertex_count() == wheel.vertex_count() + 1);
    std::multiset<int> inner_degrees;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (!m.is_exterior_vertex(v)) inner_degrees.insert(m.vertex_degree(v));
    CHECK(inner_degrees == std::multiset<int>{5, 6});
    CHECK(is_pq_map(m, pq).ok);
    CHECK(condition_B(m, pq));
}

TEST_CASE("splitting an exterior vertex leaves exactly one copy on the boundary") {
    auto pq = PQParams::standard(4, 4);
    // Pile boundary squares onto one corner of a grid until it reaches
    // degree 10.
    auto m = gen_standard(4, 1);
    VertexId hot = -1;
    for (VertexId v = 0; v < m.vertex_count() && hot == -1; ++v)
        if (m.is_exterior_vertex(v) && m.vertex_degree(v) == 2) hot = v;
    REQUIRE(hot != -1);
    int guard = 0;
    while (m.vertex_degree(hot) < 10) {
        DartId pick = kNoDart;
        for (DartId d : m.outer_orbit())
            if (m.origin(d) == hot) pick = d;
        REQUIRE(pick != kNoDart);
        int old_v = m.vertex_count();
        m = attach_boundary_face(m, pick, 4);
        REQUIRE(m.vertex_count() == old_v + 2);
        REQUIRE(++guard < 32);
    }
    REQUIRE(m.vertex_degree(hot) == 10);
    auto split = split_large_vertices(m, pq);
    CHECK(split.vertex_count() == m.vertex_count() + 1);
    // The two halves of the old vertex are the two vertices whose degrees
    // sum to 12; exactly one of them is exterior.
    int exterior_halves = 0;
    std::multiset<int> halves;
    for (VertexId v = 0; v < split.vertex_count(); ++v) {
        int deg = split.vertex_degree(v);
        if (deg == 5 || deg == 7) {
            halves.insert(deg);
            if (split.is_exterior_vertex(v)) ++exterior_halves;
        }
    }
    CHECK(halves == std::multiset<int>{5, 7});
    CHECK(exterior_halves == 1);
    CHECK(condition_B(split, pq));
}

TEST_CASE("trimming standard maps is a no-op") {
    auto pq = PQParams::standard(4, 4);
    auto result = trim_to_condition_D(gen_standard(4, 2), pq);
    CHECK(result.removed_faces == 0);
    CHECK(result.map == gen_standard(4, 2));
}

TEST_CASE("trimming removes a glued triangle") {
    auto pq = PQParams::standard(4, 4);
    auto m = gen_standard(4, 1);
    auto with_triangle = attach_boundary_face(m, m.outer_dart(), 3);
    REQUIRE(!condition_D(with_triangle, pq));
    auto result = trim_to_condition_D(with_triangle, pq);
    CHECK(result.removed_faces == 1);
    CHECK(result.map == m);
    CHECK(condition_D(result.map, pq));
}

TEST_CASE("trimming a lone triangle empties the map") {
    auto pq = PQParams::standard(4, 4);
    auto result = trim_to_condition_D(single_polygon(3), pq);
    CHECK(result.emptied);
    CHECK(result.removed_faces == 1);
    CHECK(result.map.vertex_count() == 1);
}

TEST_CASE("trim perimeter and area guarantees on adversarial corpora") {
    for (auto [p, q] : {std::pair{3, 6}, std::pair{4, 4}, std::pair{6, 3}}) {
        auto pq = PQParams::standard(p, q);
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            auto m = gen_random_pq(pq, 50, seed);
            // Glue a few deficient faces to break (D).
            Rng rng(seed);
            for (int k = 0; k < 4 && p > 3; ++k) {
                auto outer = m.outer_orbit();
                DartId d = outer[rng.below(outer.size())];
                if (m.vertex_degree(m.origin(d)) + 1 >= 2 * q) continue;
                if (m.vertex_degree(m.head(d)) + 1 >= 2 * q) continue;
                m = attach_boundary_face(m, d, p - 1);
            }
            int n0 = m.perimeter();
            int area0 = m.face_count();
            auto result = trim_to_condition_D(m, pq);  // bounds asserted inside
            CHECK(condition_D(result.map, pq));
            CHECK(result.map.perimeter() <= (p - 1) * n0);
            CHECK(result.map.face_count() >= area0 - n0);
            // Trimming never enlarges the flat-ball radius witness.
            CHECK(flat_ball_radius(result.map, pq) <= flat_ball_radius(m, pq));
        }
    }
}

TEST_CASE("connecting forest of a flat map is empty") {
    auto pq = PQParams::standard(4, 4);
    auto forest = connecting_forest(gen_standard(4, 3), pq);
    CHECK(forest.edges.empty());
    CHECK(forest.trees.empty());
}

TEST_CASE("forest for one defect is a shortest path") {
    auto pq = PQParams::standard(4, 4);
    auto m = perturb_defects(gen_standard(4, 3), pq, 1, 3).map;
    auto cls = classify_flat(m, pq);
    REQUIRE(cls.non_flat_interior_vertices.size() == 1);
    VertexId w = cls.non_flat_interior_vertices[0];
    std::vector<VertexId> ext;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.is_exterior_vertex(v)) ext.push_back(v);
    int k = bfs_distances(m, ext)[w];
    auto forest = connecting_forest(m, pq);
    CHECK(forest.edge_budget() == k);
    REQUIRE(forest.trees.size() == 1);
    CHECK(forest.edge_budget() <= (pq.p() - 1) * m.perimeter());
}

TEST_CASE("forest bound holds on perturbed corpora") {
    auto pq = PQParams::standard(4, 4);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto m = perturb_defects(gen_standard(4, 4), pq, 1 + seed % 3, seed).map;
        auto forest = connecting_forest(m, pq);  // invariants asserted inside
        CHECK(forest.edge_budget() <= 3 * m.perimeter());
        for (VertexId a : forest.anchors) CHECK(m.is_exterior_vertex(a));
    }
}

TEST_CASE("cutting along an empty forest is the identity") {
    auto pq = PQParams::standard(4, 4);
    auto m = gen_standard(4, 2);
    auto result = cut_along_forest(m, connecting_forest(m, pq));
    CHECK(result.cuts == 0);
    CHECK(result.map == m);
}

TEST_CASE("cutting a single path raises the perimeter by 2k") {
    auto pq = PQParams::standard(4, 4);
    auto m = perturb_defects(gen_standard(4, 3), pq, 1, 3).map;
    auto forest = connecting_forest(m, pq);
    int k = forest.edge_budget();
    REQUIRE(k > 0);
    auto result = cut_along_forest(m, forest);
    CHECK(result.cuts == k);
    CHECK(result.map.perimeter() == m.perimeter() + 2 * k);
    CHECK(result.map.face_count() == m.face_count());
}

TEST_CASE("after cutting, every defect touches the boundary and the interior is flat") {
    auto pq = PQParams::standard(4, 4);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto m = perturb_defects(gen_standard(4, 4), pq, 1 + seed % 2, seed * 3 + 1).map;
        auto cut = cut_along_forest(m, connecting_forest(m, pq));
        const auto& barred = cut.map;
        auto cls = classify_flat(barred, pq);
        CHECK(cls.non_flat_interior_vertices.empty());
        for (FaceId f : cls.non_flat_faces) {
            bool weakly_exterior = false;
            for (DartId d : barred.face_walk(f))
                if (barred.is_exterior_vertex(barred.origin(d))) weakly_exterior = true;
            CHECK(weakly_exterior);
        }
        for (const auto& comp : interior(barred).components) {
            bool flat = true;
            for (FaceId f : comp.faces)
                if (barred.face_degree(f) != pq.p()) flat = false;
            for (VertexId v : comp.vertices) {
                bool interior_in_comp = true;
                for (const auto& walk : comp.boundary_walks)
                    for (DartId d : walk)
                        if (barred.origin(d) == v) interior_in_comp = false;
                if (interior_in_comp && barred.vertex_degree(v) != pq.q()) flat = false;
            }
            CHECK(flat);
        }
    }
}

TEST_CASE("full pipeline: adjust, trim, forest, cut") {
    for (auto [p, q] : {std::pair{3, 6}, std::pair{4, 4}, std::pair{6, 3}}) {
        auto pq = PQParams::standard(p, q);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto m = gen_random_pq(pq, 60, seed);
            auto adjusted = adjust_to_condition_B(m, pq);
            CHECK(condition_B(adjusted, pq));
            CHECK(is_pq_map(adjusted, pq).ok);
            CHECK(adjusted.perimeter() == m.perimeter());
            CHECK(adjusted.face_count() >= m.face_count());

            auto trimmed = trim_to_condition_D(adjusted, pq);
            if (trimmed.emptied) continue;
            CHECK(is_pq_star_map(trimmed.map, pq));

            auto forest = connecting_forest(trimmed.map, pq);
            auto cut = cut_along_forest(trimmed.map, forest);
            CHECK(cut.map.perimeter() == trimmed.map.perimeter() + 2 * forest.edge_budget());
            for (const auto& comp : interior(cut.map).components) {
                for (FaceId f : comp.faces) CHECK(cut.map.face_degree(f) == p);
            }
        }
    }
}
