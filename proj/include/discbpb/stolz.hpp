#pragma once

#include <nlohmann/json.hpp>

#include "discbpb/common.hpp"

namespace bpb {

/// |z| + (1-eps)|1-z|; membership in the Stolz region iff the value is <= 1.
double stolz_value(double eps, Cplx z);

/// Polar radius of the Stolz boundary: the unique r in (0,1] with
/// stolz_value(eps, r e^{i theta}) = 1, found by bisection. The value is
/// strictly increasing along each ray, so the root is unique.
double boundary_radius(double eps, double theta);

/// Certificate for eps^2 * closed disc being contained in the region:
/// max over a boundary grid of stolz_value(eps, eps^2 e^{i t}) - 1, which
/// must be <= 0. The exact maximum is -eps(1-eps)^2, attained at t = pi.
double eps2_disc_check(double eps, int grid = 4096);

/// Interior angle of the boundary corner at z = 1, as a fraction of pi:
/// alpha = 2*acos(1-eps)/pi in (0,1).
double corner_exponent(double eps);

/// Conformal homeomorphism psi of the closed unit disc onto the Stolz region,
/// normalized by psi(0) = 0 and psi(1) = 1.
///
/// The map is evaluated in closed form. Writing u = 1/(1-z), the boundary
/// |z| + (1-eps)|1-z| = 1 becomes the hyperbola branch |u| - |u-1| = 1-eps
/// with foci 0 and 1, and the convex region bounded by a hyperbola branch is
/// a classical elementary image of a half plane. Composing Moebius maps with
/// the fractional-degree Chebyshev map cos(alpha*arccos(.)) gives
///
///   psi(w) = 1 - 2 / (1 + cos(alpha * arccos((1+w)/(1-w)))),
///
/// which sends 0 -> 0 and 1 -> 1 with no further normalization needed
/// (rotation = 1). psi'(0) = alpha^2.
///
/// The boundary correspondence table, Taylor coefficients, and residuals are
/// computed from the closed form on a uniform grid. The corner at z = 1 makes
/// the Taylor tail decay like k^{-1-alpha}, so the truncated series is kept
/// only as a serialization artifact with its own reported fidelity
/// (taylor_residual); eval() always uses the closed form.
class ConformalMap {
 public:
  static ConformalMap solve(double eps, int m);

  /// Closed-form evaluation; requires |w| <= 1 + 1e-12.
  Cplx eval(Cplx w) const;

  /// Truncated Taylor evaluation (diagnostic; accurate away from the corner).
  Cplx eval_taylor(Cplx w) const;

  double eps() const { return eps_; }
  double alpha() const { return alpha_; }
  int grid() const { return grid_; }
  Cplx rotation() const { return rotation_; }
  double residual() const { return residual_; }
  double taylor_residual() const { return taylor_residual_; }
  const std::vector<double>& correspondence() const { return theta_; }
  const CVec& taylor() const { return taylor_; }  // c_1..c_K, c_0 = 0

  nlohmann::json to_json() const;
  /// CSV rows phi,theta,rho,psi_re,psi_im,defect for plotting.
  std::string correspondence_csv() const;

 private:
  double eps_ = 0.0;
  double alpha_ = 0.0;
  int grid_ = 0;
  Cplx rotation_ = 1.0;
  std::vector<double> theta_;
  CVec taylor_;
  double residual_ = 0.0;
  double taylor_residual_ = 0.0;
};

/// max_{|w|=r} |psi(w)| with a golden-section refinement of the grid argmax.
double circle_max_abs(const ConformalMap& map, double r, int npts = 1024);

/// Largest radius delta1 < eps with max_{|w|=delta1} |psi(w)| < eps^2, found
/// by bisection and shrunk by a 10% safety margin. Requires residual < 1e-6.
double delta1(const ConformalMap& map, double eps);

}  // namespace bpb
