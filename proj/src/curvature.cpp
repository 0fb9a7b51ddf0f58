#include "pqmap/curvature.hpp"

#include <algorithm>

namespace pqmap {

PQParams PQParams::standard(int p, int q) {
    bool ok = (p == 3 && q == 6) || (p == 4 && q == 4) || (p == 6 && q == 3);
    if (!ok)
        throw MapError(MapErrorKind::InvalidArgument,
                       "standard (p,q) must be (3,6), (4,4) or (6,3); got (" +
                           std::to_string(p) + "," + std::to_string(q) + ")");
    return PQParams(Rational(p), Rational(q), true);
}

PQParams PQParams::relaxed(const Rational& p, const Rational& q) {
    if (p == 0 || q == 0)
        throw MapError(MapErrorKind::InvalidArgument, "relaxed p, q must be nonzero");
    if (Rational(1) / p + Rational(1) / q != make_rational(1, 2))
        throw MapError(MapErrorKind::InvalidArgument,
                       "relaxed parameters must satisfy 1/p + 1/q = 1/2");
    return PQParams(p, q, false);
}

int PQParams::p() const {
    if (!standard_) throw MapError(MapErrorKind::InvalidArgument, "relaxed params have no integer p");
    return static_cast<int>(numerator(p_));
}

int PQParams::q() const {
    if (!standard_) throw MapError(MapErrorKind::InvalidArgument, "relaxed params have no integer q");
    return static_cast<int>(numerator(q_));
}

CurvatureReport pq_curvatures(const PlanarMap& m, const PQParams& pq) {
    CurvatureReport report;
    const Rational& p = pq.p_rat();
    const Rational& q = pq.q_rat();
    const Rational p_over_q = p / q;

    report.face_curvature.resize(m.face_count());
    for (FaceId f = 0; f < m.face_count(); ++f) {
        report.face_curvature[f] = p - m.face_degree(f);
        report.I_f += report.face_curvature[f];
    }
    report.vertex_curvature.resize(m.vertex_count());
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        int mu = m.boundary_multiplicity(v);
        report.vertex_curvature[v] = p_over_q * (q - m.vertex_degree(v)) - mu;
        report.I_v += report.vertex_curvature[v];
        if (mu > 0)
            report.I_v_boundary += report.vertex_curvature[v];
        else
            report.I_v_interior += report.vertex_curvature[v];
    }
    report.J = -report.I_f - 2 * report.I_v_interior;

    if (report.I_v + report.I_f != p)
        throw MapError(MapErrorKind::TheoremViolation,
                       "curvature identity I_v + I_f = p failed: got " +
                           rational_str(report.I_v + report.I_f) + ", expected " +
                           rational_str(p));
    return report;
}

PqVerdict is_pq_map(const PlanarMap& m, const PQParams& pq) {
    const int p = pq.p();
    const int q = pq.q();
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.vertex_degree(v) == 1 && m.edge_count() > 0)
            throw MapError(MapErrorKind::PreconditionFailed,
                           "vertex " + std::to_string(v) + " has degree 1");
    PqVerdict verdict;
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (!m.is_exterior_face(f) && m.face_degree(f) < p) {
            verdict.ok = false;
            verdict.witness = PqWitness{PqWitness::Kind::Face, f, m.face_degree(f)};
            return verdict;
        }
    }
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        if (!m.is_exterior_vertex(v) && m.vertex_degree(v) < q) {
            verdict.ok = false;
            verdict.witness = PqWitness{PqWitness::Kind::Vertex, v, m.vertex_degree(v)};
            return verdict;
        }
    }
    verdict.ok = true;
    return verdict;
}

void require_pq_map(const PlanarMap& m, const PQParams& pq) {
    auto verdict = is_pq_map(m, pq);
    if (!verdict.ok) {
        const auto& w = *verdict.witness;
        throw MapError(MapErrorKind::PreconditionFailed,
                       std::string("not a (p,q)-map: interior ") +
                           (w.kind == PqWitness::Kind::Face ? "face " : "vertex ") +
                           std::to_string(w.id) + " has degree " + std::to_string(w.degree));
    }
}

FlatClassification classify_flat(const PlanarMap& m, const PQParams& pq) {
    require_pq_map(m, pq);
    const int p = pq.p();
    const int q = pq.q();
    FlatClassification out;
    std::vector<char> defect(m.vertex_count(), 0);
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.is_exterior_vertex(v)) defect[v] = 1;

    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (m.face_degree(f) == p) {
            out.flat_faces.push_back(f);
        } else {
            out.non_flat_faces.push_back(f);
            for (DartId d : m.face_walk(f)) defect[m.origin(d)] = 1;
        }
    }
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        if (m.is_exterior_vertex(v)) continue;
        if (m.vertex_degree(v) == q) {
            out.flat_interior_vertices.push_back(v);
        } else {
            out.non_flat_interior_vertices.push_back(v);
            defect[v] = 1;
        }
    }
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (defect[v]) out.defect_vertices.push_back(v);
    return out;
}

bool condition_B(const PlanarMap& m, const PQParams& pq) {
    const int p = pq.p();
    const int q = pq.q();
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (m.face_degree(f) >= 2 * p) return false;
    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.vertex_degree(v) >= 2 * q) return false;
    return true;
}

bool condition_D(const PlanarMap& m, const PQParams& pq) {
    const int p = pq.p();
    for (FaceId f = 0; f < m.face_count(); ++f)
        if (m.face_degree(f) < p) return false;
    return true;
}

bool is_pq_star_map(const PlanarMap& m, const PQParams& pq) {
    return is_pq_map(m, pq).ok && condition_B(m, pq) && condition_D(m, pq);
}

}  // namespace pqmap
