#include "pqmap/analysis.hpp"

#include "doctest.h"
#include "fixtures.hpp"
#include "pqmap/generators.hpp"

using namespace pqmap;
using fixtures::single_polygon;

TEST_CASE("single square report: radius-0 equality and the anomaly skips") {
    auto report = bounds_report(single_polygon(4), PQParams::standard(4, 4));
    CHECK(report.n == 4);
    CHECK(report.area_faces == 1);
    CHECK(report.r_flatball == 0);

    const auto* radius0 = report.find("area_radius0");
    REQUIRE(radius0);
    CHECK(radius0->preconditions_met);
    CHECK(radius0->holds);
    CHECK(radius0->bound == 1);  // q(n-2)/(2p) = 1: equality

    // The weakly-exterior-face bounds evaluate to 0 against an actual count
    // of 1 on a single face; the entries must skip, not fail.
    for (const char* name : {"weakly_exterior_qp", "weakly_exterior_degree"}) {
        const auto* entry = report.find(name);
        REQUIRE(entry);
        CHECK(!entry->preconditions_met);
        CHECK(entry->skip_reason == "Area < 2 (single-face anomaly)");
    }
    CHECK(report.all_hold());
}

TEST_CASE("the single-face bound really is violated without the precondition") {
    // Reproduce the anomaly by hand: sum d(o_i) - 2m = 0 < 1.
    auto m = single_polygon(4);
    long sum_d = 0, count = 0;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.is_exterior_vertex(v)) {
            sum_d += m.vertex_degree(v);
            ++count;
        }
    CHECK(sum_d - 2 * count == 0);
    CHECK(m.face_count() == 1);  // 1 weakly exterior face > bound 0
}

TEST_CASE("2x2 grid: weakly exterior equality") {
    auto report = bounds_report(gen_standard(4, 1), PQParams::standard(4, 4));
    const auto* qp = report.find("weakly_exterior_qp");
    REQUIRE(qp);
    CHECK(qp->preconditions_met);
    CHECK(qp->actual == 4);
    CHECK(qp->bound == 4);
    CHECK(qp->holds);
}

TEST_CASE("main area bound on standard grids") {
    auto report = bounds_report(gen_standard(4, 3), PQParams::standard(4, 4));
    CHECK(report.r_flatball == 2);
    const auto* main = report.find("area_main");
    REQUIRE(main);
    CHECK(main->preconditions_met);
    CHECK(main->actual == 36);
    // (3/2)(p-1)(q+1)(r+p) n = 22.5 * 6 * 24.
    CHECK(main->bound == Rational(3240));
    CHECK(main->holds);
    const auto* star = report.find("area_pq_star");
    REQUIRE(star);
    CHECK(star->preconditions_met);
    CHECK(star->bound == Rational(7) * 6 * 24);
    CHECK(star->holds);
    const auto* bc = report.find("boundary_curvature");
    REQUIRE(bc);
    CHECK(bc->holds);  // I_v^b >= p
}

TEST_CASE("reports hold corpus-wide for all three families") {
    for (auto [p, q] : {std::pair{3, 6}, std::pair{4, 4}, std::pair{6, 3}}) {
        auto pq = PQParams::standard(p, q);
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            auto m = gen_random_pq(pq, 50, seed);
            auto report = bounds_report(m, pq);
            CHECK(report.all_hold());
        }
    }
}

TEST_CASE("corpus runner finds no violations and is byte-deterministic") {
    auto a = corpus_check("random:4,4,40", 25, 9, true);
    CHECK(a.ok());
    CHECK(a.checked == 25);
    auto b = corpus_check("random:4,4,40", 25, 9, true);
    CHECK(a.text == b.text);
    auto c = corpus_check("random:4,4,40", 25, 10, true);
    CHECK(a.text != c.text);

    auto perturbed = corpus_check("perturb:4,4,2", 6, 3, true);
    CHECK(perturbed.ok());

    CHECK_THROWS_AS((void)corpus_check("bogus:1,2", 1, 1, false), MapError);
}

TEST_CASE("report text is stable and carries the entries") {
    auto report = bounds_report(gen_standard(4, 2), PQParams::standard(4, 4));
    auto text = bounds_report_text(report);
    CHECK(text.find("area_main holds") != std::string::npos);
    CHECK(text.find("r_flatball 1") != std::string::npos);
    CHECK(text == bounds_report_text(report));
}
