#include "discbpb/peak.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bpb {

PeakFunction make_g1(double theta0) { return PeakFunction{theta0}; }

double gamma_min(const PeakFunction& peak, double delta2, bool validate) {
  if (!(delta2 > 0.0 && delta2 <= 2.0)) {
    throw Error("peak.gamma_min", "delta2 must lie in (0, 2]");
  }
  // Minimize (1 - Re w)/2 over |w| <= 1, |w - 1| >= delta2:
  // |w-1|^2 = 1 - 2 Re w + |w|^2 >= delta2^2 gives 2(1 - Re w) >= delta2^2
  // with equality on the unit circle at the cap edge.
  const double gamma = delta2 * delta2 / 4.0;
  if (validate) {
    double grid_min = std::numeric_limits<double>::infinity();
    const Cplx p = std::polar(1.0, peak.theta0);
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Cplx z = std::polar(static_cast<double>(i) / n, kTwoPi * j / n);
        if (std::abs(z - p) < delta2) continue;
        grid_min = std::min(grid_min, -peak.eval_g1(z).real());
      }
    }
    // include the exact cap-edge point on the circle, where the minimum sits
    const double half_angle = 2.0 * std::asin(std::min(1.0, delta2 / 2.0));
    grid_min = std::min(grid_min,
                        -peak.eval_g1(std::polar(1.0, peak.theta0 + half_angle)).real());
    if (gamma > grid_min + 1e-9) {
      throw Error("peak.gamma_min", "closed form exceeds the grid minimum");
    }
  }
  return gamma;
}

BumpData choose_eps1_n0(double gamma, double delta1, long n0_guard) {
  if (!(gamma > 0.0)) throw Error("peak.choose_eps1_n0", "gamma must be positive");
  if (!(delta1 > 0.0 && delta1 < 1.0)) {
    throw Error("peak.choose_eps1_n0", "delta1 must lie in (0,1)");
  }
  BumpData b;
  b.gamma = gamma;
  b.delta1 = delta1;
  b.log_eps1 = std::log(delta1 / 2.0) / gamma;  // < 0
  b.eps1 = std::exp(b.log_eps1);                // may underflow to 0
  const double n0_real = std::floor(-b.log_eps1) + 1.0;
  if (n0_real > static_cast<double>(n0_guard)) {
    throw Error("peak.choose_eps1_n0",
                "equicontinuity cap too small: n0 = " + std::to_string(n0_real) +
                    " exceeds the guard " + std::to_string(n0_guard));
  }
  b.n0 = static_cast<long>(n0_real);
  return b;
}

Cplx eval_h(const BumpData& bump, const PeakFunction& peak, Cplx z) {
  if (std::abs(z) > 1.0 + 1e-12) {
    throw Error("peak.eval_h", "evaluation point outside the closed unit disc");
  }
  const Cplx u = std::polar(1.0, -peak.theta0) * z;
  if (std::abs(u - 1.0) <= 1e-14) return 1.0;  // exact peak
  // n0 * g1 = n0 (u-1)/2; Re <= 0 mathematically, clamp away rounding so the
  // magnitude never exceeds 1.
  const double log_mag = std::min(0.0, 0.5 * bump.n0 * (u.real() - 1.0));
  const double phase = 0.5 * bump.n0 * u.imag();
  const double mag = std::exp(log_mag);  // underflows to 0 for large n0, correctly
  return std::polar(mag, phase);
}

Cplx EtaFunction::eval(Cplx z) const {
  return map_.eval(eval_h(bump_, peak_, z));
}

EtaFunction::Validation EtaFunction::validate(int boundary_pts, int interior_pts,
                                              std::uint64_t seed) const {
  Validation v;
  const double eps = map_.eps();
  const double eps2 = eps * eps;
  const Cplx p = std::polar(1.0, peak_.theta0);
  v.peak_error = std::abs(eval(p) - 1.0);

  auto visit = [&](Cplx z) {
    const Cplx e = eval(z);
    const double a = std::abs(e);
    v.sup_abs = std::max(v.sup_abs, a);
    v.stolz_excess = std::max(v.stolz_excess, a + (1.0 - eps) * std::abs(1.0 - e) - 1.0);
    if (std::abs(z - p) >= bump_.delta2) {
      v.off_cap_excess = std::max(v.off_cap_excess, a - eps2);
    }
  };
  for (int j = 0; j < boundary_pts; ++j) visit(unit_circle_point(j, boundary_pts));
  Rng rng(seed);
  for (int j = 0; j < interior_pts; ++j) visit(rng.in_disc());
  return v;
}

std::string EtaFunction::boundary_csv(int m) const {
  std::ostringstream os;
  os.precision(15);
  os << "phi,eta_re,eta_im,eta_abs,stolz_lhs\n";
  const double eps = map_.eps();
  for (int j = 0; j < m; ++j) {
    const double phi = kTwoPi * j / m;
    const Cplx e = eval(std::polar(1.0, phi));
    os << phi << ',' << e.real() << ',' << e.imag() << ',' << std::abs(e) << ','
       << std::abs(e) + (1.0 - eps) * std::abs(1.0 - e) << '\n';
  }
  return os.str();
}

DiscPoly EtaFunction::project(int degree, int m, double* sup_err) const {
  if (!is_power_of_two(m) || m < 2 * (degree + 1)) {
    throw Error("peak.project", "grid must be a power of two with M >= 2(degree+1)");
  }
  CVec samples(m);
  for (int j = 0; j < m; ++j) samples[j] = eval(unit_circle_point(j, m));
  CVec coeffs(degree + 1);
  for (int k = 0; k <= degree; ++k) coeffs[k] = dft_coefficient(samples, k);
  DiscPoly poly(std::move(coeffs));
  if (sup_err) {
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
      worst = std::max(worst,
                       std::abs(eval(unit_circle_point(j, m)) -
                                bpb::eval(poly, unit_circle_point(j, m))));
    }
    *sup_err = worst;
  }
  return poly;
}

}  // namespace bpb
