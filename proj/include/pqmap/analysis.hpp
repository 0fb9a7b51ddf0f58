#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqmap/curvature.hpp"
#include "pqmap/map.hpp"
#include "pqmap/rational.hpp"

namespace pqmap {

struct LemmaEntry {
    std::string name;
    bool preconditions_met = false;
    std::string skip_reason;
    Rational bound;
    Rational actual;
    bool holds = false;  // evaluated only when preconditions_met
};

struct BoundsReport {
    int n = 0;
    int area_faces = 0;
    int area_vertices = 0;
    int r_defect = 0;
    int r_flatball = 0;
    bool pq_star = false;
    std::vector<LemmaEntry> entries;

    [[nodiscard]] bool all_hold() const {
        for (const auto& e : entries)
            if (e.preconditions_met && !e.holds) return false;
        return true;
    }
    [[nodiscard]] const LemmaEntry* find(const std::string& name) const {
        for (const auto& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }
};

// Evaluates the area and boundary bounds with exact arithmetic:
// the main area bound with r = flat-ball radius, its (p,q)* sharpening,
// the radius-based area bounds, the weakly-exterior-face counts, the
// boundary curvature lower bound, and the vertex/perimeter^2 ratio.
BoundsReport bounds_report(const PlanarMap& m, const PQParams& pq);

std::string bounds_report_text(const BoundsReport& report);

struct CorpusViolation {
    int index = 0;
    std::string check;
    std::string detail;
};

struct CorpusReport {
    int count = 0;
    int checked = 0;
    std::vector<CorpusViolation> violations;
    Rational max_vertex_ratio;  // max area_vertices / n^2
    std::string text;           // deterministic rendering
    std::optional<std::string> failing_map;  // serialization of the smallest offender

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

// Generates `count` maps from the spec and seed, runs the validation,
// curvature, contraction, bound and angle checks on each, and aggregates.
// Deterministic: identical inputs give byte-identical text.
CorpusReport corpus_check(const std::string& gen_spec, int count, std::uint64_t seed,
                          bool with_angles);

}  // namespace pqmap
