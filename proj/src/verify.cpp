#include "discbpb/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace bpb::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckEntry bound_check(std::string name, double value, double target, std::string note = {}) {
  CheckEntry c;
  c.name = std::move(name);
  c.value = value;
  c.target = target;
  c.slack = target - value;
  c.pass = value < target;
  c.note = std::move(note);
  return c;
}

CheckEntry near_check(std::string name, double value, double want, double tol,
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

DiscPoly peak_poly(double theta0, int k) {
  // ((1 + e^{-i theta0} z)/2)^k: binomial coefficients over 2^k, rotated
  CVec c(k + 1);
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    c[j] = binom * std::pow(0.5, k) * std::polar(1.0, -theta0 * j);
    binom = binom * (k - j) / (j + 1.0);
  }
  return DiscPoly(std::move(c));
}

SuiteResult suite_stolz() {
  SuiteResult s;
  s.suite = "stolz";
  const auto t0 = Clock::now();

  double worst_residual = 0.0, worst_psi0 = 0.0, worst_psi1 = 0.0;
  double worst_schwarz = -1.0, worst_member = -1.0, worst_d1_cert = -1.0, worst_d1_lt_eps = -1.0;
  for (double eps : {0.2, 0.5, 0.8}) {
    ConformalMap map = ConformalMap::solve(eps, 2048);
    worst_residual = std::max(worst_residual, map.residual());
    worst_psi0 = std::max(worst_psi0, std::abs(map.eval(0.0)));
    worst_psi1 = std::max(worst_psi1, std::abs(map.eval(1.0) - 1.0));
    for (int i = 1; i <= 9; ++i) {
      const double r = 0.1 * i;
      worst_schwarz = std::max(worst_schwarz, circle_max_abs(map, r) - r);
    }
    for (int j = 0; j < map.grid(); ++j) {
      worst_member = std::max(
          worst_member, stolz_value(eps, map.eval(unit_circle_point(j, map.grid()))) - 1.0);
    }
    const double d1 = delta1(map, eps);
    worst_d1_lt_eps = std::max(worst_d1_lt_eps, d1 - eps);
    worst_d1_cert = std::max(worst_d1_cert, circle_max_abs(map, d1) - eps * eps);
  }
  s.checks.push_back(bound_check("boundary_residual", worst_residual, 1e-6));
  s.checks.push_back(near_check("psi_at_0", worst_psi0, 0.0, 0.0, "must vanish exactly"));
  s.checks.push_back(bound_check("psi_at_1", worst_psi1, 1e-6));
  s.checks.push_back(bound_check("schwarz_excess", worst_schwarz, 1e-6,
                                 "max over r in {0.1..0.9} of circle max minus r"));
  s.checks.push_back(bound_check("membership_excess", worst_member, 1e-6));
  s.checks.push_back(bound_check("delta1_below_eps", worst_d1_lt_eps, 0.0));
  s.checks.push_back(bound_check("delta1_certificate", worst_d1_cert, 0.0,
                                 "max_{|w|=delta1}|psi| - eps^2 on a 1024-point circle"));
  s.seconds = seconds_since(t0);
  s.checks.push_back(bound_check("runtime_seconds", s.seconds, 10.0));
  s.pass = std::all_of(s.checks.begin(), s.checks.end(), [](auto& c) { return c.pass; });
  return s;
}

SuiteResult suite_eta() {
  SuiteResult s;
  s.suite = "eta";
  const auto t0 = Clock::now();

  double worst_peak = 0.0, worst_stolz = -1.0, worst_off_cap = -1.0;
  const struct { double eps, theta0, delta2; } cases[] = {
      {0.3, 0.7, 0.15}, {0.1, 2.0, 0.05}, {0.6, -1.1, 0.4}};
  for (const auto& c : cases) {
    ConformalMap map = ConformalMap::solve(c.eps, 2048);
    const double d1 = delta1(map, c.eps);
    PeakFunction g1 = make_g1(c.theta0);
    BumpData bump = choose_eps1_n0(gamma_min(g1, c.delta2), d1);
    bump.delta2 = c.delta2;
    bump.theta0 = c.theta0;
    EtaFunction eta(bump, g1, map);
    auto v = eta.validate(4096, 10000);
    worst_peak = std::max(worst_peak, v.peak_error);
    worst_stolz = std::max(worst_stolz, v.stolz_excess);
    worst_off_cap = std::max(worst_off_cap, v.off_cap_excess);
  }
  s.checks.push_back(near_check("eta_at_peak", worst_peak, 0.0, 1e-8, "|eta(e^{i theta0}) - 1|"));
  s.checks.push_back(bound_check("stolz_pointwise_excess", worst_stolz, 1e-6,
                                 "|eta| + (1-eps)|1-eta| - 1 over 4096 boundary + 1e4 interior points"));
  s.checks.push_back(bound_check("off_cap_excess", worst_off_cap, 0.0,
                                 "|eta| - eps^2 off the cap"));
  s.seconds = seconds_since(t0);
  s.pass = std::all_of(s.checks.begin(), s.checks.end(), [](auto& c) { return c.pass; });
  return s;
}

SuiteResult suite_functional_bpb() {
  SuiteResult s;
  s.suite = "functional-bpb";
  const auto t0 = Clock::now();

  Rng rng(424242);
  double worst_attain = 0.0, worst_dist = -1.0, worst_fg = 0.0, worst_closed_form = 0.0;
  const int trials = 10000;
  for (int it = 0; it < trials; ++it) {
    const int n = 1 + static_cast<int>(rng.uniform(0.0, 8.0));
    Functional f{LpSpace{n, 2.0}, rng.cgauss_vec(n)};
    double nf = p_norm(f.v, 2.0);
    if (nf == 0.0) continue;
    for (auto& c : f.v) c /= nf;
    const double eps = rng.uniform(1e-3, 0.9);
    const double level = 1.0 - eps * rng.uniform(0.0, 0.999);
    CVec vhat = norming_vector(f);
    CVec x(n, 0.0);
    if (n == 1) {
      x[0] = std::polar(1.0, rng.uniform(0.0, kTwoPi)) * vhat[0];
    } else {
      CVec w = rng.cgauss_vec(n);
      const Cplx fw = f(w), fv = f(vhat);
      for (int k = 0; k < n; ++k) w[k] -= (fw / fv) * vhat[k];
      double nw = p_norm(w, 2.0);
      if (nw < 1e-12) continue;
      const Cplx c1 = level * std::polar(1.0, rng.uniform(0.0, kTwoPi));
      const Cplx c2 = std::sqrt(std::max(0.0, 1.0 - level * level)) *
                      std::polar(1.0, rng.uniform(0.0, kTwoPi));
      for (int k = 0; k < n; ++k) x[k] = c1 * vhat[k] + c2 * w[k] / nw;
    }
    const double fx = std::abs(f(x));
    if (!(fx > 1.0 - eps)) continue;
    auto r = bpb_functional(f, x, eps);
    worst_attain = std::max(worst_attain, std::abs(r.attain - 1.0));
    worst_dist = std::max(worst_dist, r.dist_xy - std::sqrt(2.0 * eps));
    worst_fg = std::max(worst_fg, r.dist_fg);
    worst_closed_form = std::max(
        worst_closed_form, std::abs(r.dist_xy * r.dist_xy - (2.0 - 2.0 * fx)));
  }
  s.checks.push_back(near_check("attainment", worst_attain, 0.0, 1e-10, "| |g(y)| - 1 |"));
  s.checks.push_back(bound_check("distance_bound_excess", worst_dist, 0.0,
                                 "||x-y|| - sqrt(2 eps)"));
  s.checks.push_back(near_check("functional_distance", worst_fg, 0.0, 0.0, "||f-g|| must be 0"));
  s.checks.push_back(near_check("closed_form_distance", worst_closed_form, 0.0, 1e-10,
                                "||x-y||^2 = 2 - 2|f(x)|"));
  s.seconds = seconds_since(t0);
  s.checks.push_back(bound_check("runtime_seconds", s.seconds, 5.0));
  s.pass = std::all_of(s.checks.begin(), s.checks.end(), [](auto& c) { return c.pass; });
  return s;
}

SuiteResult suite_zoo() {
  SuiteResult s;
  s.suite = "zoo";
  const auto t0 = Clock::now();
  Rng rng(7);

  double worst_mult = 0.0;
  for (int it = 0; it < 50; ++it) {
    const int d = 1 + static_cast<int>(rng.uniform(0.0, 12.0));
    CVec c(d + 1);
    for (auto& a : c) a = rng.cgauss();
    DiscPoly phi(std::move(c));
    auto m = zoo::mult_operator(phi, 5);
    DiscPoly one{Cplx(1.0)};
    worst_mult = std::max(worst_mult, std::abs(sup_norm(m.apply(one)) - sup_norm(phi)));
  }
  s.checks.push_back(near_check("mult_norm_identity", worst_mult, 0.0, 1e-8,
                                "||M_phi 1|| = ||phi||_inf over 50 random phi"));

  DiscPoly half_z{Cplx(0.0), Cplx(0.5)};
  auto comp = zoo::comp_operator(half_z, 4);
  s.checks.push_back(near_check("comp_unit", sup_norm(comp.apply(DiscPoly{Cplx(1.0)})), 1.0,
                                1e-12, "||C_phi 1|| = 1"));

  double worst_rank_one = 0.0;
  for (int it = 0; it < 50; ++it) {
    const int n = 1 + static_cast<int>(rng.uniform(0.0, 8.0));
    const int d = 1 + static_cast<int>(rng.uniform(0.0, 16.0));
    Functional xstar{LpSpace{n, 2.0}, rng.cgauss_vec(n)};
    CVec c(d + 1);
    for (auto& a : c) a = rng.cgauss();
    DiscPoly h(std::move(c));
    auto t = zoo::rank_one(xstar, h);
    worst_rank_one = std::max(
        worst_rank_one, std::abs(operator_norm(t) - xstar.norm() * sup_norm(h)));
  }
  s.checks.push_back(near_check("rank_one_norm_product", worst_rank_one, 0.0, 1e-6,
                                "||x* (x) h|| = ||x*|| ||h||_inf over 50 random instances"));

  double worst_hardy = 0.0;
  for (int d : {1, 4, 9, 99}) {
    auto hd = zoo::hardy_diagonal(d);
    const double gap = 1.0 - hd.best_basis_ratio();
    worst_hardy = std::max(worst_hardy, std::abs(gap - 1.0 / (d + 1.0)));
  }
  s.checks.push_back(near_check("hardy_truncation_gap", worst_hardy, 0.0, 1e-10,
                                "gap to 1 equals 1/(d+1) for d in {1,4,9,99}"));
  s.seconds = seconds_since(t0);
  s.pass = std::all_of(s.checks.begin(), s.checks.end(), [](auto& c) { return c.pass; });
  return s;
}

SuiteResult suite_oracle() {
  SuiteResult s;
  s.suite = "oracle";
  const auto t0 = Clock::now();
  Rng rng(99);

  double worst_rel = 0.0;
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + static_cast<int>(rng.uniform(0.0, 8.0));
    const int d = 1 + static_cast<int>(rng.uniform(0.0, 32.0));
    OperatorIntoDisc t;
    t.domain = LpSpace{n, 2.0};
    t.degree = d;
    for (int j = 0; j < n; ++j) {
      CVec c(d + 1);
      for (int k = 0; k <= d; ++k) c[k] = rng.cgauss() / (1.0 + 0.3 * k);
      t.cols.emplace_back(std::move(c));
    }
    auto probe = zoo::attainment_probe(t, 10000, rng.gen());
    const double rel = std::abs(probe.op_norm - probe.best_value) /
                       std::max(1e-300, probe.op_norm);
    worst_rel = std::max(worst_rel, rel);
  }
  s.checks.push_back(bound_check("norm_oracle_relative_gap", worst_rel, 0.02,
                                 "dual-norm sweep vs multi-start search seeded with 1e4 "
                                 "random unit vectors, 200 operators"));
  s.seconds = seconds_since(t0);
  s.pass = std::all_of(s.checks.begin(), s.checks.end(), [](auto& c) { return c.pass; });
  return s;
}

std::vector<BpbOperatorResult> pipeline_runs(std::vector<double>* runtimes) {
  std::vector<BpbOperatorResult> out;
  std::uint64_t seed = 11;
  for (int n : {2, 8}) {
    for (double eps : {0.1, 0.3, 0.6}) {
      const double theta0 = 0.7 + 0.3 * n;
      auto c = make_rank_one_case(n, eps, theta0, seed++);
      const auto t0 = Clock::now();
      out.push_back(bpb_operator(c.t, c.x0, c.theta0, eps));
      if (runtimes) runtimes->push_back(seconds_since(t0));
    }
  }
  return out;
}

SuiteResult suite_pipeline() {
  SuiteResult s;
  s.suite = "pipeline";
  const auto t0 = Clock::now();

  std::vector<double> runtimes;
  auto runs = pipeline_runs(&runtimes);

  double worst_norm_ny0 = 0.0, worst_dist = -1.0, worst_opdist = -1.0;
  double worst_chain = -1.0;
  bool all_codes = true;
  for (const auto& r : runs) {
    all_codes &= r.all_pass;
    worst_norm_ny0 = std::max(worst_norm_ny0, std::abs(r.norm_N_y0 - 1.0));
    worst_dist = std::max(worst_dist, r.dist_x0_y0 - std::sqrt(2.0 * r.eps));
    worst_opdist = std::max(worst_opdist, r.op_distance - 8.0 * r.eps);
    for (const auto& c : r.chain) worst_chain = std::max(worst_chain, -c.slack);
  }
  s.checks.push_back(near_check("exit_status", all_codes ? 0.0 : 1.0, 0.0, 0.0,
                                "every run certified end to end"));
  s.checks.push_back(near_check("norm_N_y0", worst_norm_ny0, 0.0, 1e-8, "||N y0|| = 1"));
  s.checks.push_back(bound_check("dist_excess", worst_dist, 0.0,
                                 "||x0-y0|| - sqrt(2 eps), must be negative"));
  s.checks.push_back(bound_check("op_distance_excess", worst_opdist, 0.0,
                                 "||T-N|| - 8 eps, must be negative"));
  s.checks.push_back(bound_check("chain_worst_margin", worst_chain, 0.0,
                                 "every intermediate inequality holds with positive slack"));
  s.checks.push_back(bound_check("runtime_seconds_per_run",
                                 *std::max_element(runtimes.begin(), runtimes.end()), 30.0));
  s.seconds = seconds_since(t0);
  s.pass = std::all_of(s.checks.begin(), s.checks.end(), [](auto& c) { return c.pass; });
  return s;
}

SuiteResult suite_ideal() {
  SuiteResult s;
  s.suite = "ideal";
  const auto t0 = Clock::now();

  auto c = make_rank_one_case(4, 0.3, 1.1, 5);
  auto r = bpb_operator(c.t, c.x0, c.theta0, 0.3);
  auto parts = ideal_decompose(r.n);

  Rng rng(17);
  double worst_sum = 0.0;
  for (int it = 0; it < 100; ++it) {
    CVec x = rng.cgauss_vec(c.t.domain.n);
    double nx = p_norm(x, 2.0);
    for (auto& v : x) v /= nx;
    const Cplx z = rng.in_disc();
    const Cplx lhs = parts.eval_N1(x, z) + parts.eval_N2(x, z);
    worst_sum = std::max(worst_sum, std::abs(lhs - r.n.eval(x, z)));
  }
  s.checks.push_back(near_check("decomposition_sum", worst_sum, 0.0, 1e-12,
                                "N1 + N2 = N pointwise on 100 random probes"));

  // rank of N1: columns are psi2_j * eta, so all 2x2 minors of the sampled
  // column matrix vanish and at least one column is nonzero
  const int n = c.t.domain.n;
  std::vector<CVec> colvals(n);
  double scale = 0.0;
  for (int j = 0; j < n; ++j) {
    CVec e(n, 0.0);
    e[j] = 1.0;
    for (int i = 0; i < 8; ++i) {
      colvals[j].push_back(parts.eval_N1(e, std::polar(0.9, kTwoPi * i / 8.0)));
      scale = std::max(scale, std::abs(colvals[j].back()));
    }
  }
  double worst_minor = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int i = 0; i < 8; ++i) {
        for (int k = i + 1; k < 8; ++k) {
          worst_minor = std::max(worst_minor,
                                 std::abs(colvals[a][i] * colvals[b][k] -
                                          colvals[a][k] * colvals[b][i]));
        }
      }
    }
  }
  s.checks.push_back(bound_check("rank_one_minors", worst_minor, 1e-12 * std::max(1.0, scale * scale),
                                 "all 2x2 minors of sampled N1 columns vanish"));
  s.checks.push_back(bound_check("rank_one_nonzero", -scale, 0.0, "N1 is nonzero"));
  s.seconds = seconds_since(t0);
  s.pass = std::all_of(s.checks.begin(), s.checks.end(), [](auto& c) { return c.pass; });
  return s;
}

}  // namespace

RankOneCase make_rank_one_case(int n, double eps, double theta0, std::uint64_t seed,
                               int peak_power, double perturbation) {
  Rng rng(seed);
  DiscPoly h = peak_poly(theta0, peak_power);
  if (perturbation > 0.0) {
    CVec c(peak_power + 1);
    for (auto& a : c) a = perturbation * rng.cgauss() / 3.0;
    h = h + DiscPoly(std::move(c));
  }
  const double hs = sup_norm(h);
  const double ratio = std::abs(eval(h, std::polar(1.0, theta0))) / hs;

  CVec v = rng.cgauss_vec(n);
  const double scale = 1.0 / (p_norm(v, 2.0) * hs);
  for (auto& c : v) c *= scale;
  Functional xstar{LpSpace{n, 2.0}, v};
  OperatorIntoDisc t = zoo::rank_one(xstar, h);

  // x0 = level * vhat + sqrt(1-level^2) * w with f(w) = 0, so |Psi1 x0| = level
  RankOneCase out;
  out.t = std::move(t);
  out.theta0 = theta0;
  out.level = std::min(1.0, (1.0 - eps / 3.0 + eps / 15.0) / ratio);
  CVec vhat = norming_vector(xstar);
  CVec x0(n, 0.0);
  if (n == 1) {
    x0[0] = vhat[0];
  } else {
    CVec w = rng.cgauss_vec(n);
    const Cplx fw = xstar(w), fv = xstar(vhat);
    for (int k = 0; k < n; ++k) w[k] -= (fw / fv) * vhat[k];
    const double nw = p_norm(w, 2.0);
    const double level = out.level;
    for (int k = 0; k < n; ++k) {
      x0[k] = level * vhat[k] + std::sqrt(std::max(0.0, 1.0 - level * level)) * w[k] / nw;
    }
  }
  out.x0 = std::move(x0);
  return out;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& c : checks) jc.push_back(bpb::to_json(c));
  return nlohmann::json{{"suite", suite}, {"pass", pass}, {"seconds", seconds}, {"checks", jc}};
}

std::vector<std::string> suite_names() {
  return {"stolz", "eta", "functional-bpb", "zoo", "oracle", "pipeline", "ideal"};
}

std::vector<SuiteResult> run_suites(const std::string& name) {
  std::vector<SuiteResult> out;
  auto dispatch = [&](const std::string& s) -> SuiteResult {
    if (s == "stolz") return suite_stolz();
    if (s == "eta") return suite_eta();
    if (s == "functional-bpb") return suite_functional_bpb();
    if (s == "zoo") return suite_zoo();
    if (s == "oracle") return suite_oracle();
    if (s == "pipeline") return suite_pipeline();
    if (s == "ideal") return suite_ideal();
    throw Error("verify", "unknown suite: " + s);
  };
  if (name == "all") {
    for (const auto& s : suite_names()) out.push_back(dispatch(s));
  } else {
    out.push_back(dispatch(name));
  }
  return out;
}

}  // namespace bpb::verify
