#include "pqmap/generators.hpp"

#include "doctest.h"
#include "pqmap/submap.hpp"

using namespace pqmap;

TEST_CASE("standard square maps") {
    for (int n = 1; n <= 3; ++n) {
        auto m = gen_standard(4, n);
        CHECK(m.vertex_count() == (2 * n + 1) * (2 * n + 1));
        CHECK(m.face_count() == 4 * n * n);
        CHECK(m.perimeter() == 8 * n);
        CHECK(radius(m) == n);
        CHECK(is_pq_map(m, PQParams::standard(4, 4)).ok);
    }
    CHECK(gen_standard(4, 0).vertex_count() == 1);
}

TEST_CASE("standard triangular maps") {
    auto m = gen_standard(3, 1);
    CHECK(m.vertex_count() == 7);
    CHECK(m.edge_count() == 12);
    CHECK(m.face_count() == 6);
    CHECK(m.perimeter() == 6);
    int degree6 = 0;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.vertex_degree(v) == 6) ++degree6;
    CHECK(degree6 == 1);

    for (int n = 1; n <= 3; ++n) {
        auto mn = gen_standard(3, n);
        CHECK(mn.face_count() == 6 * n * n);
        CHECK(mn.perimeter() == 6 * n);
        CHECK(is_pq_map(mn, PQParams::standard(3, 6)).ok);
        auto cls = classify_flat(mn, PQParams::standard(3, 6));
        CHECK(cls.non_flat_faces.empty());
        CHECK(cls.non_flat_interior_vertices.empty());
    }
}

TEST_CASE("standard hexagonal maps via the weak dual") {
    auto m1 = gen_standard(6, 1);
    CHECK(m1.face_count() == 3);
    for (FaceId f = 0; f < m1.face_count(); ++f) CHECK(m1.face_degree(f) == 6);
    auto pq = PQParams::standard(6, 3);
    for (int n = 1; n <= 2; ++n) {
        auto m = gen_standard(6, n);
        CHECK(is_pq_map(m, pq).ok);
        auto cls = classify_flat(m, pq);
        CHECK(cls.non_flat_faces.empty());
        CHECK(cls.non_flat_interior_vertices.empty());
        for (FaceId f = 0; f < m.face_count(); ++f) CHECK(m.face_degree(f) == 6);
    }
    CHECK(gen_standard(6, 0).vertex_count() == 1);
}

TEST_CASE("random maps are valid (p,q)*-maps, deterministically") {
    for (auto [p, q] : {std::pair{3, 6}, std::pair{4, 4}, std::pair{6, 3}}) {
        auto pq = PQParams::standard(p, q);
        auto a = gen_random_pq(pq, 0, 5);
        CHECK(a == gen_standard(p, 2));
        auto b = gen_random_pq(pq, 120, 1);
        CHECK(is_pq_map(b, pq).ok);
        CHECK(condition_B(b, pq));
        CHECK(condition_D(b, pq));
        auto c = gen_random_pq(pq, 120, 1);
        CHECK(serialize_pqm(b) == serialize_pqm(c));
        auto d = gen_random_pq(pq, 120, 2);
        CHECK(serialize_pqm(b) != serialize_pqm(d));
    }
}

TEST_CASE("local moves preserve validity") {
    auto m = gen_standard(4, 1);
    auto pq = PQParams::standard(4, 4);

    auto attached = attach_boundary_face(m, m.outer_dart(), 4);
    CHECK(attached.face_count() == m.face_count() + 1);
    CHECK(attached.perimeter() == m.perimeter() + 2);
    CHECK(is_pq_map(attached, pq).ok);

    auto split = split_boundary_edge_at(m, m.outer_dart());
    CHECK(split.vertex_count() == m.vertex_count() + 1);
    CHECK(split.perimeter() == m.perimeter() + 1);
    CHECK(is_pq_map(split, pq).ok);
}

TEST_CASE("defect injection drops the flat-ball radius") {
    auto pq = PQParams::standard(4, 4);
    auto m = gen_standard(4, 4);
    auto result = perturb_defects(m, pq, 1, 3);
    CHECK(result.flat_ball_radius_before == 3);
    CHECK(result.flat_ball_radius_after < 3);
    auto cls = classify_flat(result.map, pq);
    CHECK(cls.non_flat_faces.size() + cls.non_flat_interior_vertices.size() == 1);
    // The identity still holds on the perturbed map.
    auto rep = pq_curvatures(result.map, pq);
    CHECK(rep.I_v + rep.I_f == 4);

    auto many = perturb_defects(gen_standard(4, 6), pq, 5, 11);
    CHECK(many.flat_ball_radius_after < 5);
    auto cls5 = classify_flat(many.map, pq);
    CHECK(cls5.non_flat_faces.size() + cls5.non_flat_interior_vertices.size() == 5);
}

TEST_CASE("defect injection for the triangular and hexagonal families") {
    {
        auto pq = PQParams::standard(3, 6);
        auto result = perturb_defects(gen_standard(3, 3), pq, 1, 9);
        auto cls = classify_flat(result.map, pq);
        CHECK(cls.non_flat_faces.size() + cls.non_flat_interior_vertices.size() == 1);
        CHECK(is_pq_map(result.map, pq).ok);
        CHECK(condition_B(result.map, pq));
    }
    {
        auto pq = PQParams::standard(6, 3);
        auto result = perturb_defects(gen_standard(6, 3), pq, 1, 9);
        auto cls = classify_flat(result.map, pq);
        CHECK(cls.non_flat_faces.size() + cls.non_flat_interior_vertices.size() == 1);
        CHECK(is_pq_map(result.map, pq).ok);
        CHECK(condition_B(result.map, pq));
    }
}

TEST_CASE("perturbation refuses hopeless inputs") {
    auto pq = PQParams::standard(4, 4);
    // A single square has no interior at all.
    std::vector<std::vector<DartId>> rotations{{0, 7}, {2, 1}, {4, 3}, {6, 5}};
    auto square = PlanarMap::build(std::move(rotations), 1);
    CHECK_THROWS_AS((void)perturb_defects(square, pq, 1, 1), MapError);
}

TEST_CASE("generator specs parse and run deterministically") {
    auto spec = parse_gen_spec("random:4,4,30");
    CHECK(spec.kind == GenSpec::Kind::Random);
    CHECK(spec.steps == 30);
    auto a = run_gen_spec(spec, 17);
    auto b = run_gen_spec(spec, 17);
    CHECK(serialize_pqm(a) == serialize_pqm(b));

    CHECK_THROWS_AS(parse_gen_spec("nonsense:1"), MapError);
    auto std_spec = parse_gen_spec("standard:3,2");
    CHECK(run_gen_spec(std_spec, 0) == gen_standard(3, 2));
}
