#include "discbpb/disc_poly.hpp"

#include <algorithm>
#include <cmath>

namespace bpb {

int default_grid(int degree) {
  return std::max(4096, next_power_of_two(4 * (degree + 1)));
}

Cplx eval(const DiscPoly& p, Cplx z) {
  if (std::abs(z) > 1.0 + 1e-12) {
    throw Error("disc_poly.eval", "evaluation point outside the closed unit disc");
  }
  Cplx acc = 0.0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

BoundaryGrid boundary_samples(const DiscPoly& p, int m) {
  if (!is_power_of_two(m) || m < 2 * (p.degree() + 1)) {
    throw Error("disc_poly.boundary_samples",
                "grid must be a power of two with M >= 2(degree+1)");
  }
  BoundaryGrid g;
  g.size = m;
  g.samples.resize(m);
  for (int k = 0; k < m; ++k) {
    g.samples[k] = eval(p, unit_circle_point(k, m));
  }
  return g;
}

SupNorm sup_norm_full(const DiscPoly& p, int m) {
  const int d = p.degree();
  if (m == 0) m = default_grid(d);
  if (m < 2 * (d + 1)) {
    throw Error("disc_poly.sup_norm", "grid must satisfy M >= 2(degree+1)");
  }
  // The Bernstein bracket needs M > pi*d; refine internally if the caller's
  // grid is too coarse for it.
  int meff = m;
  while (meff < 4 * (d + 1)) meff *= 2;

  double grid_max = 0.0;
  int argmax = 0;
  for (int k = 0; k < meff; ++k) {
    double v = std::abs(eval(p, unit_circle_point(k, meff)));
    if (v > grid_max) {
      grid_max = v;
      argmax = k;
    }
  }
  const double step = kTwoPi / meff;
  const double lo = step * (argmax - 1);
  const double hi = step * (argmax + 1);
  double refined = golden_max(
      [&](double t) { return std::abs(eval(p, std::polar(1.0, t))); }, lo, hi);
  refined = std::max(refined, grid_max);

  SupNorm out;
  out.value = refined;
  // max |p| <= grid_max / (1 - pi*d/M): the derivative of |p(e^{i t})| in t is
  // bounded by max|p'| <= d * max|p|, so between grid nodes the value can grow
  // by at most (pi/M) * d * max|p|.
  const double q = kPi * d / static_cast<double>(meff);
  out.upper = q < 1.0 ? grid_max / (1.0 - q) : std::numeric_limits<double>::infinity();
  out.upper = std::max(out.upper, out.value);
  return out;
}

double sup_norm(const DiscPoly& p, int m) { return sup_norm_full(p, m).value; }

double hardy2_norm(const DiscPoly& p) {
  double s = 0.0;
  for (const Cplx& a : p.coeffs) s += std::norm(a);
  return std::sqrt(s);
}

double bernstein_bound(const DiscPoly& p, int m) {
  return static_cast<double>(p.degree()) * sup_norm(p, m);
}

DiscPoly operator+(const DiscPoly& a, const DiscPoly& b) {
  CVec c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
  for (size_t k = 0; k < a.coeffs.size(); ++k) c[k] += a.coeffs[k];
  for (size_t k = 0; k < b.coeffs.size(); ++k) c[k] += b.coeffs[k];
  return DiscPoly(std::move(c));
}

DiscPoly operator*(const DiscPoly& a, const DiscPoly& b) {
  CVec c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return DiscPoly(std::move(c));
}

DiscPoly operator*(Cplx c, const DiscPoly& p) {
  CVec out = p.coeffs;
  for (auto& a : out) a *= c;
  return DiscPoly(std::move(out));
}

nlohmann::json to_json(const DiscPoly& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const Cplx& a : p.coeffs) j.push_back({a.real(), a.imag()});
  return j;
}

DiscPoly discpoly_from_json(const nlohmann::json& j) {
  CVec c;
  for (const auto& pair : j) c.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  return DiscPoly(std::move(c));
}

}  // namespace bpb
