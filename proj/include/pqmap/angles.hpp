#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqmap/map.hpp"
#include "pqmap/rational.hpp"

namespace pqmap {

// Angles are exact rational coefficients of pi, keyed by the corner's
// dart: the unique dart of the bounded face walk whose origin is the
// corner vertex.  Every corner of every bounded face carries an angle,
// nothing else does.
class AngleFunction {
  public:
    static AngleFunction regular(const PlanarMap& m);
    static AngleFunction from_lines(const PlanarMap& m,
                                    const std::vector<std::pair<DartId, Rational>>& lines);
    static AngleFunction uniform(const PlanarMap& m, const Rational& coeff);

    [[nodiscard]] const Rational& at(DartId corner) const;
    void set(DartId corner, const Rational& coeff);

    [[nodiscard]] std::vector<std::pair<DartId, Rational>> lines() const;

  private:
    explicit AngleFunction(const PlanarMap& m);
    std::vector<std::optional<Rational>> coeff_;
};

// kappa(face) = Sigma_face - pi(d-2); kappa(vertex) = (2 - mu) pi - Sigma_o.
// All values are coefficients of pi; I_f + I_v = 2 is asserted at
// construction (the Gauss-Bonnet identity holds unconditionally).
struct AngleCurvatureReport {
    std::vector<Rational> face_curvature;
    std::vector<Rational> vertex_curvature;
    Rational I_f;
    Rational I_v;
    Rational I_v_interior;
    Rational I_v_boundary;
};

AngleCurvatureReport angle_curvatures(const PlanarMap& m, const AngleFunction& a);

// n pi >= -I_f - I_v^i + 2 pi for non-positively curved angle maps; returns
// the slack in units of pi.  Hypothesis violations throw
// PreconditionFailed, a negative slack throws TheoremViolation.
Rational lemma_A_check(const PlanarMap& m, const AngleFunction& a);

struct DeltaBParams {
    bool flat = false;         // no non-flat face or interior vertex
    Rational delta;            // min over non-flat elements of -kappa, in pi units
    int b = 0;                 // max vertex/face degree
};

// Throws (with a witness) when some non-flat face or interior vertex has
// positive curvature, i.e. the map is not a (delta,b)-map.
DeltaBParams delta_b_params(const PlanarMap& m, const AngleFunction& a);

struct DenseBoundReport {
    int r = 0;  // recomputed defect radius
    int area = 0;
    int defect_vertices = 0;      // |V|: exterior, non-flat, or on non-flat faces
    Rational area_bound_pi;       // Area <= pi * area_bound_pi
    Rational defect_bound_pi;     // |V| <= pi * defect_bound_pi
    bool area_holds = false;
    bool defect_holds = false;
    bool flat = false;
    DeltaBParams params;
};

// Theorem bound Area <= pi b (1 + b/delta)(b^r + 1) n and the intermediate
// defect-vertex bound |V| <= (b/delta + 1) n pi; flat maps use the
// degenerate form without the delta term.  r is recomputed from the map,
// never trusted from the caller.
DenseBoundReport dense_bound_check(const PlanarMap& m, const AngleFunction& a);

// Exact comparison value <= pi * coeff through interval bounds on pi.
bool leq_pi_multiple(const Rational& value, const Rational& coeff);

}  // namespace pqmap
