// pqm: command-line front end for the planar (p,q)-map toolkit.  Every
// subcommand is a thin shell over a library call; exit code 0 means all
// checks passed, 1 means a check was violated, 2 means a usage or input
// error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pqmap/analysis.hpp"
#include "pqmap/angles.hpp"
#include "pqmap/corridor.hpp"
#include "pqmap/curvature.hpp"
#include "pqmap/generators.hpp"
#include "pqmap/map.hpp"
#include "pqmap/render.hpp"
#include "pqmap/submap.hpp"
#include "pqmap/surgery.hpp"

namespace {

using namespace pqmap;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MapError(MapErrorKind::BadLine, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MapError(MapErrorKind::BadLine, "cannot write '" + path + "'");
    out << content;
}

ParsedFile load(const std::string& path) { return parse_pqm(read_file(path)); }

PQParams params_of(int p, int q) { return PQParams::standard(p, q); }

std::string curvature_text(const PlanarMap& m, const CurvatureReport& r) {
    std::ostringstream out;
    out << "I_f " << rational_str(r.I_f) << "\n";
    out << "I_v " << rational_str(r.I_v) << "\n";
    out << "I_v_interior " << rational_str(r.I_v_interior) << "\n";
    out << "I_v_boundary " << rational_str(r.I_v_boundary) << "\n";
    out << "J " << rational_str(r.J) << "\n";
    out << "identity I_v+I_f " << rational_str(r.I_v + r.I_f) << "\n";
    for (FaceId f = 0; f < m.face_count(); ++f)
        out << "face " << f << " degree " << m.face_degree(f) << " irr "
            << rational_str(r.face_curvature[f]) << "\n";
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        out << "vertex " << v << " degree " << m.vertex_degree(v) << " mu "
            << m.boundary_multiplicity(v) << " irr " << rational_str(r.vertex_curvature[v])
            << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar (p,q)-map toolkit"};
    app.require_subcommand(1);

    std::string input, output;
    int p = 4, q = 4;
    auto add_common = [&](CLI::App* cmd, bool with_pq) {
        cmd->add_option("file", input, "input .pqm file")->required();
        cmd->add_option("-o,--output", output, "output path (default stdout)");
        if (with_pq) {
            cmd->add_option("--p", p, "face parameter p");
            cmd->add_option("--q", q, "vertex parameter q");
        }
        return cmd;
    };

    auto* cmd_validate = add_common(app.add_subcommand("validate", "structural checks"), false);
    auto* cmd_stats = add_common(app.add_subcommand("stats", "counts and degrees"), false);
    auto* cmd_curvature =
        add_common(app.add_subcommand("curvature", "exact (p,q)-curvature report"), true);
    auto* cmd_flatrad =
        add_common(app.add_subcommand("flat-radius", "flat-ball radius witness"), true);
    auto* cmd_interior =
        add_common(app.add_subcommand("interior", "interior components and y-length"), false);
    auto* cmd_shell = add_common(app.add_subcommand("shell", "shell submap around a vertex"), false);
    int shell_center = 0, shell_r = 1;
    cmd_shell->add_option("--center", shell_center, "center vertex")->required();
    cmd_shell->add_option("--r", shell_r, "shell radius")->required();
    auto* cmd_adjust =
        add_common(app.add_subcommand("adjust", "subdivide faces / split vertices to (B)"), true);
    auto* cmd_trim = add_common(app.add_subcommand("trim", "cut exterior faces to (D)"), true);
    auto* cmd_forest = add_common(app.add_subcommand("forest", "connecting forest"), true);
    auto* cmd_cut = add_common(app.add_subcommand("cut", "cut along the connecting forest"), true);
    auto* cmd_corridor = add_common(app.add_subcommand("corridor", "build a corridor"), false);
    int corridor_edge = 0, corridor_reduce = -1;
    bool corridor_collapse = false;
    cmd_corridor->add_option("--edge", corridor_edge, "starting edge id")->required();
    cmd_corridor->add_flag("--collapse", corridor_collapse, "collapse the corridor");
    cmd_corridor->add_option("--reduce", corridor_reduce, "reduce face degree at index");
    auto* cmd_subdivide7 =
        add_common(app.add_subcommand("subdivide7", "distance-preserving subdivision"), false);
    int subdivide_center = 0;
    cmd_subdivide7->add_option("--center", subdivide_center, "marked vertex")->required();
    auto* cmd_angles = add_common(app.add_subcommand("angles", "attach an angle function"), false);
    bool angles_regular = false;
    cmd_angles->add_flag("--regular", angles_regular, "assign the regular angles");
    auto* cmd_gb =
        add_common(app.add_subcommand("gauss-bonnet", "angle curvature report"), false);
    auto* cmd_db = add_common(app.add_subcommand("delta-b", "(delta,b) parameters"), false);
    auto* cmd_dense =
        add_common(app.add_subcommand("dense-check", "area bound for (delta,b)-maps"), false);
    int dense_r = -1;
    cmd_dense->add_option("--r", dense_r, "claimed defect radius (report recomputes)");
    auto* cmd_check = add_common(app.add_subcommand("check", "full bounds report"), true);
    bool check_all = false;
    cmd_check->add_flag("--all", check_all, "run every check (default)");
    auto* cmd_dual = add_common(app.add_subcommand("dual", "weak dual"), false);
    auto* cmd_render = add_common(app.add_subcommand("render", "DOT or SVG rendering"), true);
    std::string render_format = "dot";
    cmd_render->add_option("--format", render_format, "dot or svg");
    bool render_plain = false;
    cmd_render->add_flag("--no-highlight", render_plain, "skip non-flat highlighting");

    auto* cmd_gen = app.add_subcommand("gen", "generate maps");
    std::string gen_standard_spec, gen_perturb_file;
    std::vector<int> gen_standard_args, gen_random_args;
    int gen_steps = 40, gen_defects = 1;
    std::uint64_t gen_seed = 1;
    cmd_gen->add_option("--standard", gen_standard_args, "p n")->expected(2);
    cmd_gen->add_option("--random", gen_random_args, "p q")->expected(2);
    cmd_gen->add_option("--perturb", gen_perturb_file, "input map to perturb");
    cmd_gen->add_option("--steps", gen_steps, "random move count");
    cmd_gen->add_option("--defects", gen_defects, "defect count");
    cmd_gen->add_option("--seed", gen_seed, "seed");
    cmd_gen->add_option("--p", p, "face parameter p");
    cmd_gen->add_option("--q", q, "vertex parameter q");
    cmd_gen->add_option("-o,--output", output, "output path (default stdout)");

    auto* cmd_corpus = app.add_subcommand("corpus", "seeded corpus property check");
    std::string corpus_gen = "random:4,4";
    int corpus_count = 100;
    std::uint64_t corpus_seed = 1;
    bool corpus_angles = true;
    std::string corpus_fail_out;
    cmd_corpus->add_option("--gen", corpus_gen, "generator spec, e.g. random:4,4");
    cmd_corpus->add_option("--count", corpus_count, "number of maps");
    cmd_corpus->add_option("--seed", corpus_seed, "seed");
    cmd_corpus->add_flag("!--no-angles", corpus_angles, "skip angle checks");
    cmd_corpus->add_option("--fail-out", corpus_fail_out, "where to write a failing map");
    cmd_corpus->add_option("-o,--output", output, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_validate->parsed()) {
            // Report all structural checks even when construction would fail.
            std::string text = read_file(input);
            std::ostringstream out;
            try {
                auto file = parse_pqm(text);
                auto report =
                    validate_rotation_system(file.map.rotations(), file.map.outer_dart());
                for (const auto& c : report.checks)
                    out << c.name << " " << (c.pass ? "pass" : "FAIL")
                        << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
                write_output(output, out.str());
                return report.ok() ? kOk : kViolation;
            } catch (const MapError& err) {
                out << map_error_kind_name(err.kind) << " FAIL (" << err.what();
                if (err.line > 0) out << " at line " << err.line;
                out << ")\n";
                write_output(output, out.str());
                return kViolation;
            }
        }
        if (cmd_stats->parsed()) {
            auto file = load(input);
            const auto& m = file.map;
            std::ostringstream out;
            out << "vertices " << m.vertex_count() << "\n";
            out << "edges " << m.edge_count() << "\n";
            out << "faces " << m.face_count() << "\n";
            out << "perimeter " << m.perimeter() << "\n";
            out << "radius " << radius(m) << "\n";
            write_output(output, out.str());
            return kOk;
        }
        if (cmd_curvature->parsed()) {
            auto file = load(input);
            auto rep = pq_curvatures(file.map, params_of(p, q));
            write_output(output, curvature_text(file.map, rep));
            return kOk;
        }
        if (cmd_flatrad->parsed()) {
            auto file = load(input);
            auto pqp = params_of(p, q);
            std::ostringstream out;
            out << "flat_ball_radius " << flat_ball_radius(file.map, pqp) << "\n";
            out << "r_defect " << defect_distance(file.map, pqp).r_defect << "\n";
            write_output(output, out.str());
            return kOk;
        }
        if (cmd_interior->parsed()) {
            auto file = load(input);
            auto dec = interior(file.map);
            std::ostringstream out;
            out << "components " << dec.components.size() << "\n";
            out << "y_length " << dec.y_length << "\n";
            for (std::size_t i = 0; i < dec.components.size(); ++i) {
                out << "component " << i << " faces " << dec.components[i].faces.size()
                    << " boundary " << dec.components[i].boundary_length() << "\n";
            }
            write_output(output, out.str());
            return kOk;
        }
        if (cmd_shell->parsed()) {
            auto file = load(input);
            auto sub = shell_submap(file.map, shell_center, shell_r);
            auto standalone = submap_to_map(sub);
            write_output(output, serialize_pqm(standalone.map));
            return kOk;
        }
        if (cmd_adjust->parsed()) {
            auto file = load(input);
            auto pqp = params_of(p, q);
            auto before = file.map;
            auto result = adjust_to_condition_B(file.map, pqp);
            std::cerr << "perimeter " << before.perimeter() << " -> " << result.perimeter()
                      << ", area " << before.face_count() << " -> " << result.face_count()
                      << "\n";
            write_output(output, serialize_pqm(result));
            return kOk;
        }
        if (cmd_trim->parsed()) {
            auto file = load(input);
            auto pqp = params_of(p, q);
            auto result = trim_to_condition_D(file.map, pqp);
            std::cerr << "removed " << result.removed_faces << " faces, perimeter "
                      << file.map.perimeter() << " -> " << result.map.perimeter() << ", area "
                      << file.map.face_count() << " -> " << result.map.face_count()
                      << (result.emptied ? ", emptied" : "") << "\n";
            write_output(output, serialize_pqm(result.map));
            return kOk;
        }
        if (cmd_forest->parsed()) {
            auto file = load(input);
            auto forest = connecting_forest(file.map, params_of(p, q));
            std::ostringstream out;
            out << "edges " << forest.edge_budget() << "\n";
            out << "trees " << forest.trees.size() << "\n";
            for (std::size_t t = 0; t < forest.trees.size(); ++t) {
                out << "tree " << t << " anchor " << forest.anchors[t] << " edges";
                for (EdgeId e : forest.trees[t]) out << " " << e;
                out << "\n";
            }
            write_output(output, out.str());
            return kOk;
        }
        if (cmd_cut->parsed()) {
            auto file = load(input);
            auto pqp = params_of(p, q);
            auto forest = connecting_forest(file.map, pqp);
            auto result = cut_along_forest(file.map, forest);
            std::cerr << "cuts " << result.cuts << ", perimeter " << file.map.perimeter()
                      << " -> " << result.map.perimeter() << "\n";
            write_output(output, serialize_pqm(result.map));
            return kOk;
        }
        if (cmd_corridor->parsed()) {
            auto file = load(input);
            auto corridor = build_corridor(file.map, corridor_edge);
            if (corridor_collapse) {
                auto result = collapse_corridor(file.map, corridor);
                write_output(output, serialize_pqm(result.map));
                return kOk;
            }
            if (corridor_reduce >= 0) {
                auto result = reduce_face_degree(file.map, corridor, corridor_reduce);
                write_output(output, serialize_pqm(result));
                return kOk;
            }
            std::ostringstream out;
            out << "length " << corridor.length() << "\n";
            out << "gluing";
            for (DartId d : corridor.gluing) out << " " << edge_of(d);
            out << "\nside_a";
            for (DartId d : corridor.side_a()) out << " " << file.map.origin(d);
            out << "\nside_b";
            for (DartId d : corridor.side_b()) out << " " << file.map.origin(d);
            out << "\n";
            write_output(output, out.str());
            return kOk;
        }
        if (cmd_subdivide7->parsed()) {
            auto file = load(input);
            auto result = distance_preserving_subdivision(file.map, subdivide_center);
            write_output(output, serialize_pqm(result));
            return kOk;
        }
        if (cmd_angles->parsed()) {
            auto file = load(input);
            AngleFunction a = angles_regular
                                  ? AngleFunction::regular(file.map)
                                  : AngleFunction::from_lines(file.map, file.angle_lines);
            write_output(output, serialize_pqm(file.map, a.lines()));
            return kOk;
        }
        if (cmd_gb->parsed()) {
            auto file = load(input);
            AngleFunction a = file.angle_lines.empty()
                                  ? AngleFunction::regular(file.map)
                                  : AngleFunction::from_lines(file.map, file.angle_lines);
            auto rep = angle_curvatures(file.map, a);
            std::ostringstream out;
            out << "I_f " << rational_str(rep.I_f) << " pi\n";
            out << "I_v " << rational_str(rep.I_v) << " pi\n";
            out << "I_v_interior " << rational_str(rep.I_v_interior) << " pi\n";
            out << "I_v_boundary " << rational_str(rep.I_v_boundary) << " pi\n";
            out << "identity " << rational_str(rep.I_f + rep.I_v) << " pi\n";
            write_output(output, out.str());
            return kOk;
        }
        if (cmd_db->parsed()) {
            auto file = load(input);
            AngleFunction a = file.angle_lines.empty()
                                  ? AngleFunction::regular(file.map)
                                  : AngleFunction::from_lines(file.map, file.angle_lines);
            auto dbp = delta_b_params(file.map, a);
            std::ostringstream out;
            out << "b " << dbp.b << "\n";
            out << "delta " << (dbp.flat ? "flat" : rational_str(dbp.delta) + " pi") << "\n";
            write_output(output, out.str());
            return kOk;
        }
        if (cmd_dense->parsed()) {
            auto file = load(input);
            AngleFunction a = file.angle_lines.empty()
                                  ? AngleFunction::regular(file.map)
                                  : AngleFunction::from_lines(file.map, file.angle_lines);
            auto rep = dense_bound_check(file.map, a);
            std::ostringstream out;
            out << "r " << rep.r << "\n";
            if (dense_r >= 0 && dense_r != rep.r)
                out << "note claimed r " << dense_r << " differs; using computed value\n";
            out << "area " << rep.area << " bound " << rational_str(rep.area_bound_pi)
                << " pi: " << (rep.area_holds ? "holds" : "VIOLATED") << "\n";
            out << "defect_vertices " << rep.defect_vertices << " bound "
                << rational_str(rep.defect_bound_pi)
                << " pi: " << (rep.defect_holds ? "holds" : "VIOLATED") << "\n";
            write_output(output, out.str());
            return rep.area_holds && rep.defect_holds ? kOk : kViolation;
        }
        if (cmd_check->parsed()) {
            auto file = load(input);
            auto report = bounds_report(file.map, params_of(p, q));
            write_output(output, bounds_report_text(report));
            return report.all_hold() ? kOk : kViolation;
        }
        if (cmd_dual->parsed()) {
            auto file = load(input);
            write_output(output, serialize_pqm(weak_dual(file.map)));
            return kOk;
        }
        if (cmd_render->parsed()) {
            auto file = load(input);
            std::optional<PQParams> pqp;
            if (!render_plain) pqp = params_of(p, q);
            if (render_format == "svg") {
                auto result = render_svg(file.map, pqp);
                if (!result.warning.empty()) std::cerr << "warning: " << result.warning << "\n";
                write_output(output, result.content);
            } else if (render_format == "dot") {
                write_output(output, render_dot(file.map, pqp));
            } else {
                std::cerr << "unknown format '" << render_format << "'\n";
                return kUsage;
            }
            return kOk;
        }
        if (cmd_gen->parsed()) {
            PlanarMap m = [&]() -> PlanarMap {
                if (!gen_standard_args.empty())
                    return gen_standard(gen_standard_args[0], gen_standard_args[1]);
                if (!gen_random_args.empty())
                    return gen_random_pq(
                        params_of(gen_random_args[0], gen_random_args[1]), gen_steps, gen_seed);
                if (!gen_perturb_file.empty()) {
                    auto file = load(gen_perturb_file);
                    auto result =
                        perturb_defects(file.map, params_of(p, q), gen_defects, gen_seed);
                    std::cerr << "flat_ball_radius " << result.flat_ball_radius_before << " -> "
                              << result.flat_ball_radius_after << "\n";
                    return result.map;
                }
                throw MapError(MapErrorKind::InvalidArgument,
                               "gen needs --standard, --random or --perturb");
            }();
            write_output(output, serialize_pqm(m));
            return kOk;
        }
        if (cmd_corpus->parsed()) {
            auto report = corpus_check(corpus_gen, corpus_count, corpus_seed, corpus_angles);
            write_output(output, report.text);
            if (!report.ok() && !corpus_fail_out.empty() && report.failing_map)
                write_output(corpus_fail_out, *report.failing_map);
            return report.ok() ? kOk : kViolation;
        }
    } catch (const MapError& err) {
        std::cerr << "error (" << map_error_kind_name(err.kind) << "): " << err.what();
        if (err.line > 0) std::cerr << " at line " << err.line;
        std::cerr << "\n";
        return err.kind == MapErrorKind::TheoremViolation ? kViolation : kUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
