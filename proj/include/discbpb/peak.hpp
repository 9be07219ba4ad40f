#pragma once

#include <limits>

#include "discbpb/disc_poly.hpp"
#include "discbpb/stolz.hpp"

namespace bpb {

/// Affine peak function g1(z) = (e^{-i theta0} z - 1)/2 for the boundary
/// point e^{i theta0}: g1 vanishes there and Re g1 < 0 on the rest of the
/// closed disc.
struct PeakFunction {
  double theta0 = 0.0;

  Cplx eval_g1(Cplx z) const {
    return (std::polar(1.0, -theta0) * z - 1.0) / 2.0;
  }
};

PeakFunction make_g1(double theta0);

/// Exact minimum of -Re g1 over the closed disc minus the boundary cap of
/// chordal radius delta2 around the peak point: gamma = delta2^2/4.
/// Cross-checked against a dense grid minimum unless validate is false.
double gamma_min(const PeakFunction& peak, double delta2, bool validate = true);

/// Constants of the bump construction. eps1 can underflow double precision
/// for small gamma, so its logarithm is the authoritative field.
struct BumpData {
  double gamma = 0.0;
  double eps1 = 0.0;      // (delta1/2)^(1/gamma); 0.0 if underflowed
  double log_eps1 = 0.0;  // ln(delta1/2)/gamma, always finite
  long n0 = 0;            // floor(-log_eps1) + 1, so e^{-n0} < eps1
  double delta1 = 0.0;
  double delta2 = 0.0;
  double theta0 = 0.0;
};

/// Picks eps1 = (delta1/2)^(1/gamma) and the smallest integer n0 with
/// e^{-n0} < eps1. Refuses when n0 would exceed the guard (weak
/// equicontinuity makes the construction explode).
BumpData choose_eps1_n0(double gamma, double delta1, long n0_guard = 1000000);

/// h(z) = exp(n0 * g1(z)), evaluated in log space so large n0 underflows
/// gracefully to 0. Inputs within 1e-14 of the peak point return exactly 1;
/// the corner of the Stolz map downstream would otherwise amplify one-ulp
/// input noise past the certification tolerances.
Cplx eval_h(const BumpData& bump, const PeakFunction& peak, Cplx z);

/// The analytic bump eta = psi_eps(h(z)): 1 at the peak point, with
/// |eta| < eps^2 off the cap U and |eta| + (1-eps)|1-eta| <= 1 everywhere.
class EtaFunction {
 public:
  EtaFunction() = default;
  EtaFunction(BumpData bump, PeakFunction peak, ConformalMap map)
      : bump_(std::move(bump)), peak_(std::move(peak)), map_(std::move(map)) {}

  Cplx eval(Cplx z) const;

  const BumpData& bump() const { return bump_; }
  const PeakFunction& peak() const { return peak_; }
  const ConformalMap& map() const { return map_; }
  double eps() const { return map_.eps(); }

  /// Validation sweep; returns the worst margins found.
  struct Validation {
    double peak_error = 0.0;  // |eta(peak) - 1|
    // maxima over the sweep, so they start at -inf
    double stolz_excess = -std::numeric_limits<double>::infinity();
    double off_cap_excess = -std::numeric_limits<double>::infinity();
    double sup_abs = 0.0;  // max |eta| seen
  };
  Validation validate(int boundary_pts = 4096, int interior_pts = 10000,
                      std::uint64_t seed = 20240901) const;

  /// CSV rows phi,eta_re,eta_im,eta_abs,stolz_lhs over a boundary grid.
  std::string boundary_csv(int m = 2048) const;

  /// L2 boundary projection onto polynomials of the given degree, with the
  /// sup defect over the sampling grid reported through sup_err.
  DiscPoly project(int degree, int m, double* sup_err = nullptr) const;

 private:
  BumpData bump_;
  PeakFunction peak_;
  ConformalMap map_;
};

}  // namespace bpb
