#include "pqmap/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "pqmap/angles.hpp"
#include "pqmap/generators.hpp"
#include "pqmap/submap.hpp"

namespace pqmap {

namespace {

LemmaEntry skipped(const std::string& name, const std::string& reason) {
    LemmaEntry e;
    e.name = name;
    e.preconditions_met = false;
    e.skip_reason = reason;
    return e;
}

LemmaEntry evaluated(const std::string& name, const Rational& actual, const Rational& bound) {
    LemmaEntry e;
    e.name = name;
    e.preconditions_met = true;
    e.actual = actual;
    e.bound = bound;
    e.holds = actual <= bound;
    return e;
}

int weakly_exterior_face_count(const PlanarMap& m) {
    int count = 0;
    for (FaceId f = 0; f < m.face_count(); ++f) {
        bool touches = false;
        for (DartId d : m.face_walk(f))
            if (m.is_exterior_vertex(m.origin(d))) touches = true;
        if (touches) ++count;
    }
    return count;
}

}  // namespace

BoundsReport bounds_report(const PlanarMap& m, const PQParams& pq) {
    require_pq_map(m, pq);
    const Rational p = pq.p_rat();
    const Rational q = pq.q_rat();

    BoundsReport report;
    report.n = m.perimeter();
    report.area_faces = m.face_count();
    report.area_vertices = m.vertex_count();
    report.r_defect = defect_distance(m, pq).r_defect;
    report.r_flatball = flat_ball_radius(m, pq);
    report.pq_star = is_pq_star_map(m, pq);

    const int map_radius = radius(m);
    const bool cond_d = condition_D(m, pq);
    const Rational n(report.n);
    const Rational area(report.area_faces);

    // (a) main area bound, r = flat-ball radius.
    report.entries.push_back(evaluated(
        "area_main", area,
        Rational(3) / 2 * (p - 1) * (q + 1) * (report.r_flatball + p) * n));

    // (b) sharpened bound for (p,q)*-maps.
    if (report.pq_star) {
        report.entries.push_back(evaluated(
            "area_pq_star", area, (Rational(3) * q / 2 + 1) * (report.r_flatball + p) * n));
    } else {
        report.entries.push_back(skipped("area_pq_star", "not a (p,q)*-map"));
    }

    // (c) radius-based area bound: Area <= (q/p) r n with radius <= r-1.
    if (cond_d && report.n > 0) {
        report.entries.push_back(
            evaluated("area_radius", area, q / p * (map_radius + 1) * n));
    } else {
        report.entries.push_back(
            skipped("area_radius", cond_d ? "perimeter 0" : "face of degree < p present"));
    }

    // (d) weakly exterior faces <= (q/p) n - q; fails on the single p-gon,
    // hence the Area >= 2 precondition.
    if (cond_d && report.n > 0 && report.area_faces >= 2) {
        report.entries.push_back(evaluated("weakly_exterior_qp", Rational(weakly_exterior_face_count(m)),
                                           q / p * n - q));
    } else {
        report.entries.push_back(skipped(
            "weakly_exterior_qp",
            !cond_d ? "face of degree < p present"
                    : (report.n == 0 ? "perimeter 0" : "Area < 2 (single-face anomaly)")));
    }

    // (e) radius-0 area bound: Area <= q(n-2)/(2p).
    if (cond_d && map_radius == 0 && report.n > 0) {
        report.entries.push_back(
            evaluated("area_radius0", area, q * (n - 2) / (2 * p)));
    } else {
        report.entries.push_back(skipped(
            "area_radius0", cond_d ? "radius > 0 or perimeter 0" : "face of degree < p present"));
    }

    // (f) weakly exterior faces <= sum d(o_i) - 2m over exterior vertices;
    // same single-face anomaly.
    if (report.n > 0 && report.area_faces >= 2) {
        long sum_d = 0;
        long m_count = 0;
        for (VertexId v = 0; v < m.vertex_count(); ++v) {
            if (m.is_exterior_vertex(v)) {
                sum_d += m.vertex_degree(v);
                ++m_count;
            }
        }
        report.entries.push_back(evaluated("weakly_exterior_degree",
                                           Rational(weakly_exterior_face_count(m)),
                                           Rational(sum_d - 2 * m_count)));
    } else {
        report.entries.push_back(skipped(
            "weakly_exterior_degree",
            report.n == 0 ? "perimeter 0" : "Area < 2 (single-face anomaly)"));
    }

    // (g) boundary curvature: I_v^b >= p (stored negated to fit the <=
    // comparison).
    if (cond_d) {
        auto curv = pq_curvatures(m, pq);
        report.entries.push_back(evaluated("boundary_curvature", p, curv.I_v_boundary));
    } else {
        report.entries.push_back(skipped("boundary_curvature", "face of degree < p present"));
    }

    // (h) vertex-count ratio area_vertices / n^2; tracked, not bounded.
    if (report.n > 0) {
        LemmaEntry e;
        e.name = "vertex_ratio";
        e.preconditions_met = true;
        e.actual = Rational(report.area_vertices) / (n * n);
        e.bound = e.actual;
        e.holds = true;
        report.entries.push_back(e);
    } else {
        report.entries.push_back(skipped("vertex_ratio", "perimeter 0"));
    }

    return report;
}

std::string bounds_report_text(const BoundsReport& report) {
    std::ostringstream out;
    out << "n " << report.n << "\n";
    out << "area_faces " << report.area_faces << "\n";
    out << "area_vertices " << report.area_vertices << "\n";
    out << "r_defect " << report.r_defect << "\n";
    out << "r_flatball " << report.r_flatball << "\n";
    out << "pq_star " << (report.pq_star ? "yes" : "no") << "\n";
    for (const auto& e : report.entries) {
        out << "check " << e.name << " ";
        if (!e.preconditions_met) {
            out << "skipped (" << e.skip_reason << ")\n";
        } else {
            out << (e.holds ? "holds" : "VIOLATED") << " actual " << rational_str(e.actual)
                << " bound " << rational_str(e.bound) << "\n";
        }
    }
    return out.str();
}

CorpusReport corpus_check(const std::string& gen_spec, int count, std::uint64_t seed,
                          bool with_angles) {
    GenSpec spec = parse_gen_spec(gen_spec);
    PQParams pq = PQParams::standard(spec.p, spec.q);
    CorpusReport report;
    report.count = count;

    std::ostringstream text;
    text << "corpus " << gen_spec << " count " << count << " seed " << seed << "\n";
    int smallest_failing = -1;
    std::string smallest_serialized;

    for (int i = 0; i < count; ++i) {
        std::uint64_t item_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
        PlanarMap m = run_gen_spec(spec, item_seed);
        ++report.checked;
        auto note_violation = [&](const std::string& check, const std::string& detail) {
            report.violations.push_back({i, check, detail});
            if (smallest_failing == -1 || m.vertex_count() < smallest_failing) {
                smallest_failing = m.vertex_count();
                smallest_serialized = serialize_pqm(m);
            }
        };

        auto validation = validate_rotation_system(m.rotations(), m.outer_dart());
        if (!validation.ok()) note_violation("validate", "structural check failed");

        try {
            pq_curvatures(m, pq);
        } catch (const MapError& err) {
            note_violation("curvature_identity", err.what());
        }
        try {
            contraction_check(m, pq);
        } catch (const MapError& err) {
            if (err.kind == MapErrorKind::TheoremViolation)
                note_violation("contraction", err.what());
        }
        try {
            auto bounds = bounds_report(m, pq);
            for (const auto& e : bounds.entries)
                if (e.preconditions_met && !e.holds)
                    note_violation(e.name, "actual " + rational_str(e.actual) + " > bound " +
                                               rational_str(e.bound));
            if (bounds.n > 0) {
                Rational ratio = Rational(bounds.area_vertices) / (Rational(bounds.n) * bounds.n);
                if (ratio > report.max_vertex_ratio) report.max_vertex_ratio = ratio;
            }
        } catch (const MapError& err) {
            note_violation("bounds_report", err.what());
        }
        if (ball_growth_violation(m, 4)) note_violation("ball_growth", "|B(d,o)| > b^d + 1");

        if (with_angles) {
            try {
                auto regular = AngleFunction::regular(m);
                angle_curvatures(m, regular);
                try {
                    lemma_A_check(m, regular);
                } catch (const MapError& err) {
                    if (err.kind == MapErrorKind::TheoremViolation)
                        note_violation("lemma_A", err.what());
                }
                // A second, randomised angle function: Gauss-Bonnet holds for
                // any assignment.
                Rng rng(mix_seed(item_seed, 1));
                auto random_angles = AngleFunction::regular(m);
                for (FaceId f = 0; f < m.face_count(); ++f)
                    for (DartId d : m.face_walk(f))
                        random_angles.set(
                            d, make_rational(static_cast<long>(rng.below(12)), 6));
                angle_curvatures(m, random_angles);
            } catch (const MapError& err) {
                note_violation("gauss_bonnet", err.what());
            }
        }
    }

    text << "checked " << report.checked << "\n";
    text << "violations " << report.violations.size() << "\n";
    for (const auto& v : report.violations)
        text << "violation item " << v.index << " " << v.check << ": " << v.detail << "\n";
    text << "max_vertex_ratio " << rational_str(report.max_vertex_ratio) << "\n";
    report.text = text.str();
    if (smallest_failing != -1) report.failing_map = smallest_serialized;
    return report;
}

}  // namespace pqmap
