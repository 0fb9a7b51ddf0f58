#include "pqmap/angles.hpp"

#include <algorithm>

namespace pqmap {

AngleFunction::AngleFunction(const PlanarMap& m) : coeff_(m.dart_count()) {}

AngleFunction AngleFunction::regular(const PlanarMap& m) {
    AngleFunction a(m);
    for (FaceId f = 0; f < m.face_count(); ++f) {
        int d = m.face_degree(f);
        Rational corner = make_rational(d - 2, d);
        for (DartId dart : m.face_walk(f)) a.coeff_[dart] = corner;
    }
    return a;
}

AngleFunction AngleFunction::uniform(const PlanarMap& m, const Rational& coeff) {
    AngleFunction a(m);
    for (FaceId f = 0; f < m.face_count(); ++f)
        for (DartId dart : m.face_walk(f)) a.coeff_[dart] = coeff;
    return a;
}

AngleFunction AngleFunction::from_lines(const PlanarMap& m,
                                        const std::vector<std::pair<DartId, Rational>>& lines) {
    AngleFunction a(m);
    for (const auto& [dart, coeff] : lines) {
        if (dart < 0 || dart >= m.dart_count() || m.on_outer(dart))
            throw MapError(MapErrorKind::BadAngle,
                           "angle dart " + std::to_string(dart) + " is not a corner");
        if (coeff < 0)
            throw MapError(MapErrorKind::BadAngle, "angles must be non-negative");
        a.coeff_[dart] = coeff;
    }
    for (FaceId f = 0; f < m.face_count(); ++f)
        for (DartId dart : m.face_walk(f))
            if (!a.coeff_[dart])
                throw MapError(MapErrorKind::BadAngle,
                               "corner at dart " + std::to_string(dart) + " has no angle");
    return a;
}

const Rational& AngleFunction::at(DartId corner) const {
    if (corner < 0 || corner >= static_cast<int>(coeff_.size()) || !coeff_[corner])
        throw MapError(MapErrorKind::BadAngle,
                       "dart " + std::to_string(corner) + " is not a corner");
    return *coeff_[corner];
}

void AngleFunction::set(DartId corner, const Rational& coeff) {
    if (corner < 0 || corner >= static_cast<int>(coeff_.size()) || !coeff_[corner])
        throw MapError(MapErrorKind::BadAngle,
                       "dart " + std::to_string(corner) + " is not a corner");
    if (coeff < 0) throw MapError(MapErrorKind::BadAngle, "angles must be non-negative");
    coeff_[corner] = coeff;
}

std::vector<std::pair<DartId, Rational>> AngleFunction::lines() const {
    std::vector<std::pair<DartId, Rational>> out;
    for (DartId d = 0; d < static_cast<int>(coeff_.size()); ++d)
        if (coeff_[d]) out.emplace_back(d, *coeff_[d]);
    return out;
}

AngleCurvatureReport angle_curvatures(const PlanarMap& m, const AngleFunction& a) {
    if (m.edge_count() == 0)
        throw MapError(MapErrorKind::PreconditionFailed,
                       "Gauss-Bonnet needs at least one edge");
    AngleCurvatureReport report;
    report.face_curvature.resize(m.face_count());
    report.vertex_curvature.resize(m.vertex_count());

    std::vector<Rational> vertex_sum(m.vertex_count());
    for (FaceId f = 0; f < m.face_count(); ++f) {
        Rational face_sum;
        for (DartId dart : m.face_walk(f)) {
            const Rational& c = a.at(dart);
            face_sum += c;
            vertex_sum[m.origin(dart)] += c;
        }
        report.face_curvature[f] = face_sum - (m.face_degree(f) - 2);
        report.I_f += report.face_curvature[f];
    }
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        report.vertex_curvature[v] =
            Rational(2 - m.boundary_multiplicity(v)) - vertex_sum[v];
        report.I_v += report.vertex_curvature[v];
        if (m.is_exterior_vertex(v))
            report.I_v_boundary += report.vertex_curvature[v];
        else
            report.I_v_interior += report.vertex_curvature[v];
    }
    if (report.I_f + report.I_v != 2)
        throw MapError(MapErrorKind::TheoremViolation,
                       "Gauss-Bonnet identity failed: I_f + I_v = " +
                           rational_str(report.I_f + report.I_v) + " (pi units)");
    return report;
}

Rational lemma_A_check(const PlanarMap& m, const AngleFunction& a) {
    if (m.perimeter() < 1)
        throw MapError(MapErrorKind::PreconditionFailed, "perimeter must be at least 1");
    auto report = angle_curvatures(m, a);
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (report.face_curvature[f] > 0)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "face " + std::to_string(f) + " has positive curvature");
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (!m.is_exterior_vertex(v) && report.vertex_curvature[v] > 0)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "interior vertex " + std::to_string(v) + " has positive curvature");
    Rational slack = Rational(m.perimeter()) + report.I_f + report.I_v_interior - 2;
    if (slack < 0)
        throw MapError(MapErrorKind::TheoremViolation,
                       "boundary curvature inequality violated: slack " + rational_str(slack) +
                           " (pi units)");
    return slack;
}

DeltaBParams delta_b_params(const PlanarMap& m, const AngleFunction& a) {
    auto report = angle_curvatures(m, a);
    DeltaBParams params;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        params.b = std::max(params.b, m.vertex_degree(v));
    for (FaceId f = 0; f < m.face_count(); ++f)
        params.b = std::max(params.b, m.face_degree(f));

    bool have_non_flat = false;
    Rational min_neg;
    auto feed = [&](const Rational& kappa, const std::string& what) {
        if (kappa == 0) return;
        if (kappa > 0)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "not a (delta,b)-map: " + what + " has curvature " +
                               rational_str(kappa) + " pi > 0");
        Rational neg = -kappa;
        if (!have_non_flat || neg < min_neg) min_neg = neg;
        have_non_flat = true;
    };
    for (FaceId f = 0; f < m.face_count(); ++f)
        feed(report.face_curvature[f], "face " + std::to_string(f));
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (!m.is_exterior_vertex(v))
            feed(report.vertex_curvature[v], "interior vertex " + std::to_string(v));

    params.flat = !have_non_flat;
    if (have_non_flat) params.delta = min_neg;
    return params;
}

bool leq_pi_multiple(const Rational& value, const Rational& coeff) {
    // 3.14159265358979323 < pi < 3.14159265358979324
    static const Rational pi_lo = make_rational(314159265358979323LL, 100000000000000000LL);
    static const Rational pi_hi = make_rational(314159265358979324LL, 100000000000000000LL);
    if (coeff >= 0 && value <= pi_lo * coeff) return true;
    if (value > pi_hi * coeff) return false;
    throw MapError(MapErrorKind::InvalidArgument,
                   "comparison with pi too tight to decide at 1e-17 precision");
}

DenseBoundReport dense_bound_check(const PlanarMap& m, const AngleFunction& a) {
    auto report = angle_curvatures(m, a);
    DenseBoundReport out;
    out.params = delta_b_params(m, a);
    out.flat = out.params.flat;
    out.area = m.face_count();

    // Defect vertex set: exterior, non-flat, or lying on a non-flat face.
    std::vector<char> in_defect(m.vertex_count(), 0);
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        if (m.is_exterior_vertex(v) || report.vertex_curvature[v] != 0) in_defect[v] = 1;
    }
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (report.face_curvature[f] != 0)
            for (DartId d : m.face_walk(f)) in_defect[m.origin(d)] = 1;
    std::vector<VertexId> defect;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (in_defect[v]) defect.push_back(v);
    out.defect_vertices = static_cast<int>(defect.size());

    if (defect.empty()) {
        out.r = 0;
    } else {
        auto dist = bfs_distances(m, defect);
        out.r = *std::max_element(dist.begin(), dist.end());
    }

    const int n = m.perimeter();
    const int b = out.params.b;
    Rational b_pow_r(pow_int(BigInt(b), static_cast<unsigned>(out.r)));
    Rational factor = out.flat ? Rational(1)
                               : Rational(1) + Rational(b) / out.params.delta;
    out.area_bound_pi = Rational(b) * factor * (b_pow_r + 1) * n;
    out.defect_bound_pi =
        (out.flat ? Rational(1) : Rational(b) / out.params.delta + 1) * n;
    out.area_holds = leq_pi_multiple(Rational(out.area), out.area_bound_pi);
    out.defect_holds = leq_pi_multiple(Rational(out.defect_vertices), out.defect_bound_pi);
    return out;
}

}  // namespace pqmap
