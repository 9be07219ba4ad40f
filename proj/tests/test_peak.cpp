#include <doctest.h>

#include "discbpb/peak.hpp"
#include "test_util.hpp"

using namespace bpb;

TEST_CASE("affine peak function") {
  const double theta0 = 0.9;
  PeakFunction g1 = make_g1(theta0);
  const Cplx p = std::polar(1.0, theta0);
  CHECK(std::abs(g1.eval_g1(p)) < 1e-15);
  CHECK(std::abs(g1.eval_g1(-p) - Cplx(-1.0)) < 1e-15);
  CHECK(std::abs(g1.eval_g1(0.0) - Cplx(-0.5)) < 1e-15);

  // Re g1 < 0 away from the peak point
  Rng rng(2);
  for (int it = 0; it < 1000; ++it) {
    const Cplx z = rng.in_disc();
    if (std::abs(z - p) < 1e-6) continue;
    CHECK(g1.eval_g1(z).real() < 0.0);
  }
}

namespace {
// independent grid minimum of -Re g1 over the disc minus the cap
double grid_gamma(const PeakFunction& g1, double delta2) {
  const Cplx p = std::polar(1.0, g1.theta0);
  double worst = std::numeric_limits<double>::infinity();
  const int n = 600;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Cplx z = std::polar(static_cast<double>(i) / n, bpb::kTwoPi * j / n);
      if (std::abs(z - p) < delta2) continue;
      worst = std::min(worst, -g1.eval_g1(z).real());
    }
  }
  // the minimum sits at the cap edge on the circle; include it exactly
  const double half = 2.0 * std::asin(std::min(1.0, delta2 / 2.0));
  worst = std::min(worst, -g1.eval_g1(std::polar(1.0, g1.theta0 + half)).real());
  return worst;
}
}  // namespace

TEST_CASE("gamma closed form equals the grid minimum") {
  CHECK(gamma_min(make_g1(0.0), 2.0) == doctest::Approx(1.0));
  CHECK(gamma_min(make_g1(1.3), 0.2) == doctest::Approx(0.01));
  CHECK_THROWS_AS(gamma_min(make_g1(0.0), 0.0), Error);

  Rng rng(21);
  for (int it = 0; it < 20; ++it) {
    const double theta0 = rng.uniform(0.0, kTwoPi);
    const double delta2 = rng.uniform(0.05, 2.0);
    PeakFunction g1 = make_g1(theta0);
    const double closed = gamma_min(g1, delta2);
    CHECK(closed == doctest::Approx(grid_gamma(g1, delta2)).epsilon(1e-6));
    // defining property on a coarse grid
    const Cplx p = std::polar(1.0, theta0);
    for (int j = 0; j < 500; ++j) {
      const Cplx z = rng.in_disc();
      if (std::abs(z - p) < delta2) continue;
      CHECK(closed <= -g1.eval_g1(z).real() + 1e-12);
    }
  }
}

TEST_CASE("bump constants") {
  BumpData b = choose_eps1_n0(1.0, 0.5);
  CHECK(b.eps1 == doctest::Approx(0.25));
  CHECK(b.n0 == 2);  // ln 4 = 1.386..., floor + 1

  // construction invariants, checked in log space
  Rng rng(4);
  for (int it = 0; it < 50; ++it) {
    const double gamma = rng.uniform(0.01, 2.0);
    const double d1 = rng.uniform(0.001, 0.9);
    BumpData c = choose_eps1_n0(gamma, d1);
    CHECK(gamma * c.log_eps1 < std::log(d1));   // eps1^gamma < delta1
    CHECK(static_cast<double>(-c.n0) < c.log_eps1);  // e^{-n0} < eps1
  }

  CHECK_THROWS_AS(choose_eps1_n0(1e-9, 0.01), Error);  // n0 guard
  CHECK_THROWS_AS(choose_eps1_n0(-1.0, 0.5), Error);
  CHECK_THROWS_AS(choose_eps1_n0(1.0, 1.5), Error);
}

TEST_CASE("exponential bump h") {
  const double theta0 = 1.7;
  PeakFunction g1 = make_g1(theta0);
  BumpData b = choose_eps1_n0(0.04, 0.2);
  b.delta2 = 0.4;
  b.theta0 = theta0;

  const Cplx p = std::polar(1.0, theta0);
  CHECK(eval_h(b, g1, p) == Cplx(1.0));  // exact at the peak

  Rng rng(6);
  for (int it = 0; it < 2000; ++it) {
    const Cplx z = rng.in_disc();
    CHECK(std::abs(eval_h(b, g1, z)) <= 1.0);
    if (std::abs(z - p) >= b.delta2) {
      CHECK(std::abs(eval_h(b, g1, z)) < b.delta1);
    }
  }

  // modulus of continuity |h(z) - h(z')| <= (n0/2) |z - z'|
  for (int it = 0; it < 500; ++it) {
    const Cplx z1 = rng.in_disc(), z2 = rng.in_disc();
    CHECK(std::abs(eval_h(b, g1, z1) - eval_h(b, g1, z2)) <=
          0.5 * b.n0 * std::abs(z1 - z2) + 1e-12);
  }
}

TEST_CASE("eta bump certification") {
  const double eps = 0.3, theta0 = 0.7, delta2 = 0.15;
  ConformalMap map = ConformalMap::solve(eps, 512);
  PeakFunction g1 = make_g1(theta0);
  BumpData b = choose_eps1_n0(gamma_min(g1, delta2), delta1(map, eps));
  b.delta2 = delta2;
  b.theta0 = theta0;
  EtaFunction eta(b, g1, map);

  CHECK(eta.eval(std::polar(1.0, theta0)) == Cplx(1.0));
  auto v = eta.validate(1024, 2000);
  CHECK(v.peak_error == 0.0);
  CHECK(v.stolz_excess <= 1e-6);
  CHECK(v.off_cap_excess < 0.0);
  CHECK(v.sup_abs <= 1.0 + 1e-9);

  // csv export has a header and one row per grid point
  auto csv = eta.boundary_csv(64);
  CHECK(csv.find("phi,eta_re") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);
}

TEST_CASE("eta polynomial projection reports its sup defect") {
  const double eps = 0.5, theta0 = 0.0, delta2 = 0.6;
  ConformalMap map = ConformalMap::solve(eps, 512);
  PeakFunction g1 = make_g1(theta0);
  BumpData b = choose_eps1_n0(gamma_min(g1, delta2), delta1(map, eps));
  b.delta2 = delta2;
  b.theta0 = theta0;
  EtaFunction eta(b, g1, map);

  double err_lo = 0.0, err_hi = 0.0;
  (void)eta.project(16, 1024, &err_lo);
  (void)eta.project(64, 1024, &err_hi);
  CHECK(err_hi <= err_lo + 1e-12);  // richer basis fits at least as well
  CHECK(err_lo < 1.0);
}
