#include "discbpb/stolz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bpb {

double stolz_value(double eps, Cplx z) {
  return std::abs(z) + (1.0 - eps) * std::abs(1.0 - z);
}

double boundary_radius(double eps, double theta) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error("stolz.boundary_radius", "eps must lie in (0,1)");
  }
  const Cplx dir = std::polar(1.0, theta);
  auto value = [&](double r) { return stolz_value(eps, r * dir); };
  double lo = 0.0, hi = 1.0;
  if (value(hi) <= 1.0) return 1.0;  // only happens on the ray theta = 0
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (value(mid) < 1.0 ? lo : hi) = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

double eps2_disc_check(double eps, int grid) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error("stolz.eps2_disc_check", "eps must lie in (0,1)");
  }
  const double r = eps * eps;
  double worst = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    worst = std::max(worst, stolz_value(eps, r * unit_circle_point(j, grid)) - 1.0);
  }
  return worst;
}

double corner_exponent(double eps) { return 2.0 * std::acos(1.0 - eps) / kPi; }

namespace {

Cplx closed_form_eval(double alpha, Cplx w) {
  if (std::abs(w - 1.0) <= 1e-15) return 1.0;
  if (std::abs(w) <= 1e-300) return 0.0;
  // cos(alpha * acos(.)) is single valued on the closed right half plane:
  // the two principal-branch values across the cut [1, inf) differ only in
  // sign, and cos is even.
  const Cplx chi = (1.0 + w) / (1.0 - w);
  const Cplx phi = std::cos(alpha * std::acos(chi));
  return 1.0 - 2.0 / (phi + 1.0);
}

Cplx checked_eval(double alpha, Cplx w, const char* where) {
  double aw = std::abs(w);
  if (aw > 1.0 + 1e-12) {
    throw Error(where, "evaluation point outside the closed unit disc");
  }
  if (aw > 1.0) w /= aw;  // the map is only defined on the closed disc
  return closed_form_eval(alpha, w);
}

}  // namespace

ConformalMap ConformalMap::solve(double eps, int m) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error("stolz.solve", "eps must lie in (0,1)");
  }
  if (!is_power_of_two(m) || m < 256) {
    throw Error("stolz.solve", "grid must be a power of two >= 256");
  }
  ConformalMap out;
  out.eps_ = eps;
  out.alpha_ = corner_exponent(eps);
  out.grid_ = m;
  out.rotation_ = 1.0;

  // Boundary trace, correspondence and on-curve defect.
  CVec boundary(m);
  out.theta_.resize(m);
  double worst = 0.0;
  double prev = 0.0;
  for (int j = 0; j < m; ++j) {
    const Cplx z = closed_form_eval(out.alpha_, unit_circle_point(j, m));
    boundary[j] = z;
    double th = std::arg(z);
    if (j > 0) {
      while (th < prev) th += kTwoPi;  // unwrap; correspondence is increasing
    }
    out.theta_[j] = th;
    prev = th;
    const double rho = boundary_radius(eps, th);
    worst = std::max(worst, std::abs(z - std::polar(rho, th)));
  }
  out.residual_ = worst;

  // Taylor coefficients c_1..c_{M/2} by Fourier analysis of the boundary
  // trace. The corner at z = 1 limits their accuracy; the sup defect of the
  // truncated series is reported separately.
  const int k_max = m / 2;
  out.taylor_.resize(k_max);
  for (int k = 1; k <= k_max; ++k) {
    out.taylor_[k - 1] = dft_coefficient(boundary, k);
  }
  double tworst = 0.0;
  for (int j = 0; j < m; ++j) {
    tworst = std::max(tworst, std::abs(out.eval_taylor(unit_circle_point(j, m)) - boundary[j]));
  }
  out.taylor_residual_ = tworst;
  return out;
}

Cplx ConformalMap::eval(Cplx w) const { return checked_eval(alpha_, w, "stolz.map_eval"); }

Cplx ConformalMap::eval_taylor(Cplx w) const {
  double aw = std::abs(w);
  if (aw > 1.0 + 1e-12) {
    throw Error("stolz.map_eval", "evaluation point outside the closed unit disc");
  }
  const Cplx lw = rotation_ * w;
  Cplx acc = 0.0;
  for (auto it = taylor_.rbegin(); it != taylor_.rend(); ++it) {
    acc = (acc + *it) * lw;
  }
  return acc;
}

nlohmann::json ConformalMap::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Cplx& c : taylor_) coeffs.push_back({c.real(), c.imag()});
  return nlohmann::json{{"eps", eps_},
                        {"corner_exponent", alpha_},
                        {"grid", grid_},
                        {"rotation", {rotation_.real(), rotation_.imag()}},
                        {"residual", residual_},
                        {"taylor_residual", taylor_residual_},
                        {"coefficients", coeffs}};
}

std::string ConformalMap::correspondence_csv() const {
  std::ostringstream os;
  os.precision(15);
  os << "phi,theta,rho,psi_re,psi_im,defect\n";
  for (int j = 0; j < grid_; ++j) {
    const double phi = kTwoPi * j / grid_;
    const double th = theta_[j];
    const double rho = boundary_radius(eps_, th);
    const Cplx z = closed_form_eval(alpha_, unit_circle_point(j, grid_));
    os << phi << ',' << th << ',' << rho << ',' << z.real() << ',' << z.imag() << ','
       << std::abs(z - std::polar(rho, th)) << '\n';
  }
  return os.str();
}

double circle_max_abs(const ConformalMap& map, double r, int npts) {
  double best = 0.0;
  int argmax = 0;
  for (int j = 0; j < npts; ++j) {
    double v = std::abs(map.eval(std::polar(r, kTwoPi * j / npts)));
    if (v > best) {
      best = v;
      argmax = j;
    }
  }
  const double step = kTwoPi / npts;
  double refined = golden_max(
      [&](double t) { return std::abs(map.eval(std::polar(r, t))); },
      step * (argmax - 1), step * (argmax + 1));
  return std::max(best, refined);
}

double delta1(const ConformalMap& map, double eps) {
  if (map.residual() > 1e-6) {
    throw Error("stolz.delta1", "conformal map residual too large");
  }
  const double target = eps * eps;
  double hi = eps * (1.0 - 1e-9);  // delta1 < eps by definition
  if (circle_max_abs(map, hi) < target) {
    return 0.9 * hi;
  }
  // max_{|w|=r}|psi| <= r by the Schwarz inequality, so r = target is inside.
  double lo = std::min(target, hi);
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (circle_max_abs(map, mid) < target ? lo : hi) = mid;
  }
  return 0.9 * lo;
}

}  // namespace bpb
