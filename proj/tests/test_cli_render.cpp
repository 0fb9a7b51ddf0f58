#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "pqmap/generators.hpp"
#include "pqmap/render.hpp"
#include "pqmap/submap.hpp"

using namespace pqmap;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
    int count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

#ifdef PQM_BINARY
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_pqm(const std::string& args, const std::string& out_file) {
    std::string cmd = std::string(PQM_BINARY) + " " + args + " > " + out_file + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("DOT rendering lists every edge and highlights defects") {
    auto pq = PQParams::standard(4, 4);
    auto m = perturb_defects(gen_standard(4, 3), pq, 1, 3).map;
    // Turn the vertex defect into a face defect by hand for the face
    // highlight: merging is only possible at exterior endpoints, so just
    // highlight the degree-5 vertex instead.
    auto dot = render_dot(m, pq);
    CHECK(count_occurrences(dot, " -- ") == m.edge_count());
    CHECK(dot.find("fillcolor=red") != std::string::npos);

    auto plain = render_dot(gen_standard(4, 1), std::nullopt);
    CHECK(plain.find("red") == std::string::npos);
}

TEST_CASE("SVG rendering of the grid has the right element counts") {
    auto m = gen_standard(4, 2);
    auto result = render_svg(m, std::nullopt);
    REQUIRE(result.is_svg);
    CHECK(count_occurrences(result.content, "<circle") == 25);
    CHECK(count_occurrences(result.content, "<line") == 40);

    // Two runs are byte-identical.
    CHECK(render_svg(m, std::nullopt).content == result.content);
}

TEST_CASE("SVG highlights non-flat faces") {
    // A (4,4)-map with a hexagonal face: merge the two squares of a strip.
    auto pq = PQParams::standard(4, 4);
    auto m = fixtures::square_region({{0, 0}, {1, 0}});
    EdgeId e = -1;
    for (EdgeId cand = 0; cand < m.edge_count() && e == -1; ++cand)
        if (!m.is_exterior_edge(cand)) e = cand;
    REQUIRE(e != -1);
    auto merged = merge_faces_at(m, e);
    auto result = render_svg(merged, pq);
    REQUIRE(result.is_svg);
    CHECK(result.content.find("class=\"nonflat\"") != std::string::npos);

    auto dot = render_dot(merged, pq);
    CHECK(dot.find("(non-flat)") != std::string::npos);
}

TEST_CASE("SVG requires a simple boundary") {
    // Two squares joined at one vertex: the boundary pinches.
    std::vector<std::vector<DartId>> rotations{
        {0, 7, 8, 15}, {2, 1}, {4, 3}, {6, 5}, {10, 9}, {12, 11}, {14, 13}};
    auto bowtie = PlanarMap::build(std::move(rotations), 0);
    REQUIRE(bowtie.face_count() == 2);
    CHECK_THROWS_AS((void)render_svg(bowtie, std::nullopt), MapError);
}

#ifdef PQM_BINARY

TEST_CASE("CLI round trip: gen, validate, stats, check") {
    std::string dir = "cli_tmp";
    std::system(("mkdir -p " + dir).c_str());
    std::string map_file = dir + "/s42.pqm";
    CHECK(run_pqm("gen --standard 4 2 -o " + map_file, dir + "/gen.out") == 0);
    CHECK(run_pqm("validate " + map_file, dir + "/validate.out") == 0);
    CHECK(slurp(dir + "/validate.out").find("euler pass") != std::string::npos);

    CHECK(run_pqm("stats " + map_file, dir + "/stats.out") == 0);
    auto stats = slurp(dir + "/stats.out");
    CHECK(stats.find("vertices 25") != std::string::npos);
    CHECK(stats.find("perimeter 16") != std::string::npos);

    CHECK(run_pqm("check --all --p 4 --q 4 " + map_file, dir + "/check.out") == 0);
    CHECK(slurp(dir + "/check.out").find("area_main holds") != std::string::npos);

    CHECK(run_pqm("curvature --p 4 --q 4 " + map_file, dir + "/curv.out") == 0);
    CHECK(slurp(dir + "/curv.out").find("identity I_v+I_f 4") != std::string::npos);

    // Usage errors exit 2; violations exit 1.
    CHECK(run_pqm("stats " + dir + "/missing.pqm", dir + "/err.out") == 2);
    std::ofstream bad(dir + "/bad.pqm");
    bad << "pqm 1\nvertices 1\nedges 2\nrot 0: 0 1 3 3\nouter 0\n";
    bad.close();
    CHECK(run_pqm("validate " + dir + "/bad.pqm", dir + "/bad.out") == 1);
}

TEST_CASE("CLI corpus determinism and exit codes") {
    std::string dir = "cli_tmp";
    std::system(("mkdir -p " + dir).c_str());
    CHECK(run_pqm("corpus --gen random:4,4 --count 12 --seed 9 -o " + dir + "/c1.txt",
                  dir + "/o1.out") == 0);
    CHECK(run_pqm("corpus --gen random:4,4 --count 12 --seed 9 -o " + dir + "/c2.txt",
                  dir + "/o2.out") == 0);
    CHECK(slurp(dir + "/c1.txt") == slurp(dir + "/c2.txt"));
    CHECK(!slurp(dir + "/c1.txt").empty());
}

TEST_CASE("CLI surgery pipeline runs end to end") {
    std::string dir = "cli_tmp";
    std::system(("mkdir -p " + dir).c_str());
    CHECK(run_pqm("gen --standard 4 3 -o " + dir + "/base.pqm", dir + "/g.out") == 0);
    CHECK(run_pqm("gen --perturb " + dir + "/base.pqm --defects 1 --seed 3 --p 4 --q 4 -o " +
                      dir + "/pert.pqm",
                  dir + "/p.out") == 0);
    CHECK(run_pqm("forest --p 4 --q 4 " + dir + "/pert.pqm", dir + "/forest.out") == 0);
    CHECK(run_pqm("cut --p 4 --q 4 " + dir + "/pert.pqm -o " + dir + "/cut.pqm",
                  dir + "/c.out") == 0);
    CHECK(run_pqm("validate " + dir + "/cut.pqm", dir + "/v.out") == 0);
    CHECK(run_pqm("dual " + dir + "/base.pqm -o " + dir + "/dual.pqm", dir + "/d.out") == 0);
    CHECK(run_pqm("render --format svg " + dir + "/base.pqm", dir + "/svg.out") == 0);
    CHECK(slurp(dir + "/svg.out").find("<svg") != std::string::npos);
    CHECK(run_pqm("gauss-bonnet " + dir + "/pert.pqm", dir + "/gb.out") == 0);
    CHECK(slurp(dir + "/gb.out").find("identity 2 pi") != std::string::npos);
}

#endif  // PQM_BINARY
