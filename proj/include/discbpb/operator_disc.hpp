#pragma once

#include <functional>

#include "discbpb/disc_poly.hpp"
#include "discbpb/functional.hpp"

namespace bpb {

/// Bounded linear map from (C^n, ||.||_p) into degree-d polynomials on the
/// disc; column j holds the Taylor coefficients of T e_j.
struct OperatorIntoDisc {
  LpSpace domain;
  int degree = 0;
  std::vector<DiscPoly> cols;  // cols[j] = T e_j, each of degree <= degree

  DiscPoly apply(std::span<const Cplx> x) const;

  /// The functional x -> (Tx)(z): vector of column values at z.
  CVec row_functional(Cplx z) const;

  nlohmann::json to_json() const;
  static OperatorIntoDisc from_json(const nlohmann::json& j);
};

struct OpNorm {
  double value = 0.0;  // boundary sweep of the dual norm, refined at the argmax
  double upper = 0.0;  // Bernstein bracket grid_max / (1 - pi*d/M)
};

/// sup_{|z|=1} dual-norm of the row functional; equals the operator norm
/// because sup_x sup_z |l_z(x)| = sup_z ||l_z||.
OpNorm operator_norm_full(const OperatorIntoDisc& t, int m = 0);
double operator_norm(const OperatorIntoDisc& t, int m = 0);

/// Psi x = (Tx)~(e^{i theta0}), the evaluation functional at the boundary point.
Functional point_functional(const OperatorIntoDisc& t, double theta0);

struct Delta2Result {
  double delta2 = 0.0;
  double cap_sup = 0.0;  // sup of Delta over the returned cap
  bool capped = false;   // Delta < eps on the whole disc, delta2 = 2
};

/// Largest delta2 (bisection, then a 10% safety shrink) such that
/// Delta(z) = || (row(z) - row(e^{i theta0})) . T || < eps on the closed cap
/// {|z - e^{i theta0}| <= delta2}. Delta is a supremum of moduli of functions
/// analytic in z, hence subharmonic, so the cap supremum is computed on the
/// cap's boundary arcs only. Throws when no positive delta2 exists at this eps.
Delta2Result equicontinuity_delta2(const OperatorIntoDisc& t, double theta0,
                                   double eps, int arc_pts = 0);

/// sup of g over the boundary of the cap {z in closed disc : |z-P| <= delta},
/// P = e^{i theta0}: the arc of the unit circle inside the cap plus the arc of
/// the circle |z-P| = delta inside the disc.
double cap_boundary_sup(double theta0, double delta,
                        const std::function<double(Cplx)>& g, int arc_pts);

/// Same sweep over the complement boundary: the unit circle outside the cap
/// plus the shared interior arc.
double off_cap_boundary_sup(double theta0, double delta,
                            const std::function<double(Cplx)>& g, int arc_pts);

}  // namespace bpb
