#pragma once

#include <optional>
#include <vector>

#include "pqmap/map.hpp"
#include "pqmap/rational.hpp"

namespace pqmap {

// Curvature parameters (p, q) with 1/p + 1/q = 1/2.  Standard mode forces
// the three integer tessellation pairs; relaxed mode admits arbitrary
// nonzero rationals satisfying the identity and is only meaningful for the
// total-curvature identity.
class PQParams {
  public:
    static PQParams standard(int p, int q);
    static PQParams relaxed(const Rational& p, const Rational& q);

    [[nodiscard]] bool is_standard() const { return standard_; }
    [[nodiscard]] const Rational& p_rat() const { return p_; }
    [[nodiscard]] const Rational& q_rat() const { return q_; }

    // Integer accessors; only valid for standard parameters.
    [[nodiscard]] int p() const;
    [[nodiscard]] int q() const;

  private:
    PQParams(Rational p, Rational q, bool std_mode)
        : p_(std::move(p)), q_(std::move(q)), standard_(std_mode) {}
    Rational p_, q_;
    bool standard_;
};

// irr(face) = p - d(face); irr(vertex) = (p/q)(q - d) - mu.  The report
// carries exact rationals and the Lemma identity I_v + I_f = p is asserted
// at construction time: it holds for every valid map, so a failure means a
// face-tracing bug, not bad input.
struct CurvatureReport {
    std::vector<Rational> face_curvature;    // by bounded face id
    std::vector<Rational> vertex_curvature;  // by vertex id
    Rational I_f;
    Rational I_v;
    Rational I_v_interior;
    Rational I_v_boundary;
    Rational J;  // -I_f - 2*I_v_interior
};

CurvatureReport pq_curvatures(const PlanarMap& m, const PQParams& pq);

struct PqWitness {
    enum class Kind { Face, Vertex };
    Kind kind;
    int id;
    int degree;
};

struct PqVerdict {
    bool ok = false;
    std::optional<PqWitness> witness;
};

// True iff every interior face has degree >= p and every interior vertex
// degree >= q.  Degree-1 vertices are a precondition error, not a verdict.
PqVerdict is_pq_map(const PlanarMap& m, const PQParams& pq);

void require_pq_map(const PlanarMap& m, const PQParams& pq);

struct FlatClassification {
    std::vector<FaceId> flat_faces;
    std::vector<FaceId> non_flat_faces;
    std::vector<VertexId> flat_interior_vertices;
    std::vector<VertexId> non_flat_interior_vertices;
    // Exterior vertices, non-flat interior vertices, and all vertices of
    // non-flat faces; sorted ascending.
    std::vector<VertexId> defect_vertices;
};

FlatClassification classify_flat(const PlanarMap& m, const PQParams& pq);

// Condition (B): every face degree < 2p and every vertex degree < 2q.
bool condition_B(const PlanarMap& m, const PQParams& pq);
// Condition (D): every face, exterior included, has degree >= p.
bool condition_D(const PlanarMap& m, const PQParams& pq);
// A (p,q)*-map satisfies (B) and (D) on top of the (p,q) conditions.
bool is_pq_star_map(const PlanarMap& m, const PQParams& pq);

}  // namespace pqmap
