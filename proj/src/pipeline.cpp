#include "discbpb/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace bpb {

Cplx PerturbedOperator::eval(std::span<const Cplx> x, Cplx z) const {
  return detail::eval_N_with(eta.eval(z), psi2(x), bpb::eval(base.apply(x), z), eps);
}

Cplx eval_N(const PerturbedOperator& n, std::span<const Cplx> x, Cplx z) {
  return n.eval(x, z);
}

namespace detail {

double diff_norm_with(const OperatorIntoDisc& t, const Functional& psi2,
                      double eps, const std::function<Cplx(Cplx)>& eta_fn,
                      double theta0, int m, double* refine_gap) {
  const double p = t.domain.p;
  // For fixed z the difference is the functional
  //   x -> eta(z) psi2(x) - (eps + (1-eps) eta(z)) (row(z) x).
  auto value_at = [&](double phi) {
    const Cplx z = std::polar(1.0, phi);
    const Cplx e = eta_fn(z);
    const Cplx w = eps + (1.0 - eps) * e;
    CVec v = t.row_functional(z);
    for (size_t j = 0; j < v.size(); ++j) v[j] = e * psi2.v[j] - w * v[j];
    return dual_norm(v, p);
  };
  auto sweep = [&](int grid) {
    double best = value_at(theta0);  // always include the peak point
    int argmax = -1;
    for (int j = 0; j < grid; ++j) {
      double v = value_at(kTwoPi * j / grid);
      if (v > best) {
        best = v;
        argmax = j;
      }
    }
    if (argmax >= 0) {
      const double step = kTwoPi / grid;
      best = std::max(best, golden_max(value_at, step * (argmax - 1), step * (argmax + 1)));
    }
    return best;
  };
  double prev = sweep(m);
  double cur = prev;
  for (int doubling = 0; doubling < 4; ++doubling) {
    m *= 2;
    cur = sweep(m);
    if (std::abs(cur - prev) <= 1e-4) break;
    prev = cur;
  }
  if (refine_gap) *refine_gap = std::abs(cur - prev);
  return std::max(cur, prev);
}

}  // namespace detail

double diff_norm(const OperatorIntoDisc& t, const PerturbedOperator& n, int m,
                 double* refine_gap) {
  if (m == 0) m = default_grid(t.degree);
  return detail::diff_norm_with(
      t, n.psi2, n.eps, [&](Cplx z) { return n.eta.eval(z); },
      n.eta.peak().theta0, m, refine_gap);
}

nlohmann::json to_json(const CheckEntry& c) {
  return nlohmann::json{{"name", c.name}, {"value", c.value},   {"target", c.target},
                        {"slack", c.slack}, {"pass", c.pass}, {"note", c.note}};
}

namespace {

CheckEntry strict_check(std::string name, double value, double target, std::string note = {}) {
  CheckEntry c;
  c.name = std::move(name);
  c.value = value;
  c.target = target;
  c.slack = target - value;
  c.pass = value < target;
  c.note = std::move(note);
  return c;
}

CheckEntry tol_check(std::string name, double value, double want, double tol,
                     std::string note = {}) {
  CheckEntry c;
  c.name = std::move(name);
  c.value = value;
  c.target = want;
  c.slack = tol - std::abs(value - want);
  c.pass = std::abs(value - want) <= tol;
  c.note = std::move(note);
  return c;
}

}  // namespace

BpbOperatorResult bpb_operator(const OperatorIntoDisc& t, std::span<const Cplx> x0,
                               double theta0, double eps, const PipelineOptions& opt) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error("pipeline.preconditions", "eps must lie in (0,1)");
  }
  const double tnorm = operator_norm(t);
  if (std::abs(tnorm - 1.0) > 1e-6) {
    throw Error("pipeline.preconditions",
                "operator must be normalized: ||T|| = " + std::to_string(tnorm));
  }
  if (std::abs(p_norm(x0, t.domain.p) - 1.0) > 1e-8) {
    throw Error("pipeline.preconditions", "x0 must be a unit vector");
  }

  // hypothesis |(T x0)~(e^{i theta0})| > 1 - eps/3
  Functional psi = point_functional(t, theta0);
  const double hyp = std::abs(psi(x0));
  if (!(hyp > 1.0 - eps / 3.0)) {
    throw Error("pipeline.hypothesis",
                "|T~x0(e^{i theta0})| = " + std::to_string(hyp) +
                    " does not exceed 1 - eps/3");
  }

  BpbOperatorResult res;
  res.x0.assign(x0.begin(), x0.end());
  res.theta0 = theta0;
  res.eps = eps;

  // (1) equicontinuity modulus
  Delta2Result d2 = equicontinuity_delta2(t, theta0, eps);
  res.delta2 = d2.delta2;

  // (2) conformal map of the Stolz region, (3) delta1
  ConformalMap map = ConformalMap::solve(eps, opt.map_grid);
  res.delta1 = delta1(map, eps);

  // (4) peak function and bump constants
  PeakFunction g1 = make_g1(theta0);
  res.gamma = gamma_min(g1, res.delta2);
  BumpData bump = choose_eps1_n0(res.gamma, res.delta1, opt.n0_guard);
  bump.delta2 = res.delta2;
  bump.theta0 = theta0;
  res.eps1 = bump.eps1;
  res.log_eps1 = bump.log_eps1;
  res.n0 = bump.n0;
  EtaFunction eta(bump, g1, map);

  // (5) Psi1 = Psi / ||Psi||
  res.psi_norm = psi.norm();
  if (res.psi_norm <= 0.0) throw Error("pipeline.point_functional", "Psi vanished");
  Functional psi1 = psi;
  for (auto& c : psi1.v) c /= res.psi_norm;

  // (6) functional BPB step at level eps/3 (the hypothesis supplies exactly
  // |Psi1 x0| > 1 - eps/3, and sqrt(2 eps/3) <= sqrt(2 eps) keeps the stated
  // bounds)
  BpbFunctionalResult fb = bpb_functional(psi1, x0, eps / 3.0, opt.seed);
  if (!fb.verified) {
    throw Error("pipeline.functional_bpb",
                "functional step failed verification after restarts");
  }
  res.y0 = fb.y;

  // (7) the perturbed operator
  res.n = PerturbedOperator{eta, fb.g, t, eps};

  // (8) certification
  const Cplx peak_pt = std::polar(1.0, theta0);
  res.attain_at_peak = std::abs(res.n.eval(res.y0, peak_pt));

  // sup-norm of N y0 over the boundary (grid + refinement + the peak point);
  // N y0 is analytic so the boundary sweep is the norm
  auto ny0_at = [&](double phi) {
    return std::abs(res.n.eval(res.y0, std::polar(1.0, phi)));
  };
  double best = res.attain_at_peak;
  int argmax = -1;
  for (int j = 0; j < opt.sweep_grid; ++j) {
    double v = ny0_at(kTwoPi * j / opt.sweep_grid);
    if (v > best) {
      best = v;
      argmax = j;
    }
  }
  if (argmax >= 0) {
    const double step = kTwoPi / opt.sweep_grid;
    best = std::max(best, golden_max(ny0_at, step * (argmax - 1), step * (argmax + 1)));
  }
  res.norm_N_y0 = best;

  CVec dxy(res.x0.size());
  for (size_t k = 0; k < dxy.size(); ++k) dxy[k] = res.x0[k] - res.y0[k];
  res.dist_x0_y0 = p_norm(dxy, t.domain.p);

  res.op_distance = diff_norm(t, res.n, opt.sweep_grid);

  // ||N|| <= 1 is certified pointwise by the Stolz inequality of eta; the grid
  // norm below is a cross-check, not the certificate.
  auto nnorm_at = [&](double phi) {
    const Cplx z = std::polar(1.0, phi);
    const Cplx e = eta.eval(z);
    CVec v = t.row_functional(z);
    for (size_t j = 0; j < v.size(); ++j) {
      v[j] = e * fb.g.v[j] + (1.0 - eps) * (1.0 - e) * v[j];
    }
    return dual_norm(v, t.domain.p);
  };
  double nn = nnorm_at(theta0);
  for (int j = 0; j < opt.sweep_grid; ++j) nn = std::max(nn, nnorm_at(kTwoPi * j / opt.sweep_grid));
  res.norm_N = nn;

  // intermediate chain, each against its proof target
  const double sqrt2e = std::sqrt(2.0 * eps);
  CVec dfg(psi1.v.size());
  for (size_t k = 0; k < dfg.size(); ++k) dfg[k] = psi1.v[k] - fb.g.v[k];
  res.chain.push_back(strict_check("psi1_psi2_dist", dual_norm(dfg, t.domain.p), sqrt2e,
                                   "functional step ran at level eps/3"));
  {
    CheckEntry c;
    c.name = "psi_norm_gap";
    c.value = std::abs(1.0 - res.psi_norm);
    c.target = eps / 3.0;
    c.slack = c.target - c.value;
    c.pass = c.value <= c.target + 1e-12;
    res.chain.push_back(c);
  }
  auto eta_delta = [&](Cplx z) {
    CVec v = t.row_functional(z);
    for (size_t j = 0; j < v.size(); ++j) v[j] -= psi.v[j];
    return std::abs(eta.eval(z)) * dual_norm(v, t.domain.p);
  };
  const int arc_pts = std::max(512, 16 * (t.degree + 1));
  const double cap_term = cap_boundary_sup(theta0, res.delta2, eta_delta, arc_pts);
  const double off_cap_term = off_cap_boundary_sup(theta0, res.delta2, eta_delta, arc_pts);
  res.chain.push_back(strict_check("cap_term", cap_term, eps + 1e-6,
                                   "sup_U |eta| Delta, bounded by eps"));
  res.chain.push_back(strict_check("off_cap_term", off_cap_term, 2.0 * eps * eps + 1e-6,
                                   "sup off U of |eta| Delta, bounded by 2 eps^2"));
  res.chain.push_back(strict_check("norm_N", res.norm_N, 1.0 + 1e-6,
                                   "grid cross-check; pointwise Stolz bound is the certificate"));

  // the three conclusions
  res.conclusions.push_back(tol_check("norm_N_y0", res.norm_N_y0, 1.0, 1e-8, "||N y0|| = 1"));
  res.conclusions.push_back(strict_check("dist_x0_y0", res.dist_x0_y0, sqrt2e,
                                         "||x0 - y0|| < sqrt(2 eps)"));
  res.conclusions.push_back(strict_check("op_distance", res.op_distance, 8.0 * eps,
                                         "||T - N|| < 8 eps"));

  res.all_pass = true;
  for (const auto& c : res.conclusions) res.all_pass &= c.pass;
  for (const auto& c : res.chain) res.all_pass &= c.pass;
  return res;
}

nlohmann::json BpbOperatorResult::report(const nlohmann::json& provenance) const {
  nlohmann::json jc = nlohmann::json::array(), jch = nlohmann::json::array();
  for (const auto& c : conclusions) jc.push_back(to_json(c));
  for (const auto& c : chain) jch.push_back(to_json(c));
  auto cvec = [](const CVec& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const Cplx& c : v) j.push_back({c.real(), c.imag()});
    return j;
  };
  return nlohmann::json{
      {"schema_version", 1},
      {"eps", eps},
      {"theta0", theta0},
      {"constants",
       {{"delta1", delta1},
        {"delta2", delta2},
        {"gamma", gamma},
        {"eps1", eps1},
        {"log_eps1", log_eps1},
        {"n0", n0},
        {"psi_norm", psi_norm}}},
      {"conclusions", jc},
      {"chain", jch},
      {"distances",
       {{"dist_x0_y0", dist_x0_y0},
        {"op_distance", op_distance},
        {"norm_N_y0", norm_N_y0},
        {"attain_at_peak", attain_at_peak},
        {"norm_N", norm_N}}},
      {"witness", {{"x0", cvec(x0)}, {"y0", cvec(y0)}}},
      {"all_pass", all_pass},
      {"provenance", provenance}};
}

Cplx IdealParts::eval_N1(std::span<const Cplx> x, Cplx z) const {
  return eta.eval(z) * psi2(x);
}

Cplx IdealParts::eval_N2(std::span<const Cplx> x, Cplx z) const {
  return (1.0 - eps) * (1.0 - eta.eval(z)) * bpb::eval(base.apply(x), z);
}

IdealParts ideal_decompose(const PerturbedOperator& n) {
  return IdealParts{n.eta, n.psi2, n.base, n.eps};
}

}  // namespace bpb
