#include "discbpb/operator_disc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bpb {

DiscPoly OperatorIntoDisc::apply(std::span<const Cplx> x) const {
  CVec out(degree + 1, 0.0);
  for (size_t j = 0; j < cols.size(); ++j) {
    const CVec& c = cols[j].coeffs;
    for (size_t k = 0; k < c.size(); ++k) out[k] += x[j] * c[k];
  }
  return DiscPoly(std::move(out));
}

CVec OperatorIntoDisc::row_functional(Cplx z) const {
  CVec v(cols.size());
  for (size_t j = 0; j < cols.size(); ++j) v[j] = eval(cols[j], z);
  return v;
}

nlohmann::json OperatorIntoDisc::to_json() const {
  nlohmann::json jcols = nlohmann::json::array();
  for (const auto& c : cols) jcols.push_back(bpb::to_json(c));
  return nlohmann::json{{"n", domain.n},
                        {"p", std::isinf(domain.p) ? nlohmann::json("inf") : nlohmann::json(domain.p)},
                        {"degree", degree},
                        {"columns", jcols}};
}

OperatorIntoDisc OperatorIntoDisc::from_json(const nlohmann::json& j) {
  OperatorIntoDisc t;
  t.domain.n = j.at("n").get<int>();
  const auto& p = j.at("p");
  t.domain.p = p.is_string() ? std::numeric_limits<double>::infinity() : p.get<double>();
  t.degree = j.at("degree").get<int>();
  for (const auto& c : j.at("columns")) t.cols.push_back(discpoly_from_json(c));
  if (static_cast<int>(t.cols.size()) != t.domain.n) {
    throw Error("operator.from_json", "column count must equal the domain dimension");
  }
  return t;
}

OpNorm operator_norm_full(const OperatorIntoDisc& t, int m) {
  const int d = t.degree;
  if (m == 0) m = default_grid(d);
  if (m < 2 * (d + 1)) {
    throw Error("operator.norm", "grid must satisfy M >= 2(degree+1)");
  }
  int meff = m;
  while (meff < 4 * (d + 1)) meff *= 2;

  const double p = t.domain.p;
  auto row_norm = [&](double phi) {
    CVec v = t.row_functional(std::polar(1.0, phi));
    return dual_norm(v, p);
  };
  double grid_max = 0.0;
  int argmax = 0;
  for (int k = 0; k < meff; ++k) {
    double v = row_norm(kTwoPi * k / meff);
    if (v > grid_max) {
      grid_max = v;
      argmax = k;
    }
  }
  const double step = kTwoPi / meff;
  double refined = std::max(grid_max, golden_max(row_norm, step * (argmax - 1), step * (argmax + 1)));

  OpNorm out;
  out.value = refined;
  // The row-functional norm in phi has derivative bounded by the dual norm of
  // the coefficient-wise derivative, itself <= d * sup by the vector-valued
  // Bernstein inequality, so the same bracket as for scalar polynomials holds.
  const double q = kPi * d / static_cast<double>(meff);
  out.upper = q < 1.0 ? grid_max / (1.0 - q) : std::numeric_limits<double>::infinity();
  out.upper = std::max(out.upper, out.value);
  return out;
}

double operator_norm(const OperatorIntoDisc& t, int m) {
  return operator_norm_full(t, m).value;
}

Functional point_functional(const OperatorIntoDisc& t, double theta0) {
  return Functional{t.domain, t.row_functional(std::polar(1.0, theta0))};
}

double cap_boundary_sup(double theta0, double delta,
                        const std::function<double(Cplx)>& g, int arc_pts) {
  const Cplx p = std::polar(1.0, theta0);
  double worst = g(p);
  // unit-circle arc: |e^{i th} - P| <= delta means |th - theta0| <= 2 asin(delta/2)
  const double half = 2.0 * std::asin(std::min(1.0, delta / 2.0));
  for (int j = 0; j <= arc_pts; ++j) {
    const double th = theta0 - half + 2.0 * half * j / arc_pts;
    worst = std::max(worst, g(std::polar(1.0, th)));
  }
  // interior arc: |P + delta e^{i b}| <= 1 means cos(b - theta0) <= -delta/2
  const double b0 = std::acos(std::clamp(-delta / 2.0, -1.0, 1.0));
  for (int j = 0; j <= arc_pts; ++j) {
    const double b = theta0 + b0 + (kTwoPi - 2.0 * b0) * j / arc_pts;
    const Cplx z = p + delta * std::polar(1.0, b);
    if (std::abs(z) <= 1.0 + 1e-12) worst = std::max(worst, g(z));
  }
  return worst;
}

double off_cap_boundary_sup(double theta0, double delta,
                            const std::function<double(Cplx)>& g, int arc_pts) {
  const Cplx p = std::polar(1.0, theta0);
  const double half = 2.0 * std::asin(std::min(1.0, delta / 2.0));
  double worst = -std::numeric_limits<double>::infinity();
  // unit circle outside the cap
  for (int j = 0; j <= arc_pts; ++j) {
    const double th = theta0 + half + (kTwoPi - 2.0 * half) * j / arc_pts;
    worst = std::max(worst, g(std::polar(1.0, th)));
  }
  // shared interior arc
  const double b0 = std::acos(std::clamp(-delta / 2.0, -1.0, 1.0));
  for (int j = 0; j <= arc_pts; ++j) {
    const double b = theta0 + b0 + (kTwoPi - 2.0 * b0) * j / arc_pts;
    const Cplx z = p + delta * std::polar(1.0, b);
    if (std::abs(z) <= 1.0 + 1e-12) worst = std::max(worst, g(z));
  }
  return worst;
}

Delta2Result equicontinuity_delta2(const OperatorIntoDisc& t, double theta0,
                                   double eps, int arc_pts) {
  if (!(eps > 0.0)) throw Error("operator.equicontinuity", "eps must be positive");
  if (arc_pts == 0) arc_pts = std::max(512, 16 * (t.degree + 1));

  const CVec row0 = t.row_functional(std::polar(1.0, theta0));
  const double p = t.domain.p;
  auto delta_fn = [&](Cplx z) {
    CVec v = t.row_functional(z);
    for (size_t j = 0; j < v.size(); ++j) v[j] -= row0[j];
    return dual_norm(v, p);
  };
  auto cap_sup = [&](double delta) {
    return cap_boundary_sup(theta0, delta, delta_fn, arc_pts);
  };

  Delta2Result out;
  if (cap_sup(2.0) < eps) {
    out.delta2 = 2.0;
    out.cap_sup = cap_sup(2.0);
    out.capped = true;
    return out;
  }
  const double floor = 1e-9;
  if (!(cap_sup(floor) < eps)) {
    throw Error("operator.equicontinuity",
                "the image modulus does not drop below eps near the point: "
                "the theorem hypothesis is unavailable at this eps");
  }
  double lo = floor, hi = 2.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (cap_sup(mid) < eps ? lo : hi) = mid;
  }
  out.delta2 = 0.9 * lo;  // safety margin for the strict inequalities downstream
  out.cap_sup = cap_sup(out.delta2);
  return out;
}

}  // namespace bpb
