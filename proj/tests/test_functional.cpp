#include <doctest.h>

#include "discbpb/functional.hpp"
#include "test_util.hpp"

using namespace bpb;

TEST_CASE("dual norms") {
  CVec v34 = {Cplx(3.0), Cplx(4.0)};
  CHECK(dual_norm(v34, 2.0) == doctest::Approx(5.0));

  CVec v = {Cplx(1.0), Cplx(0.0, -2.0)};
  CHECK(dual_norm(v, 1.0) == doctest::Approx(2.0));  // q = inf
  CHECK(dual_norm(v, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(3.0));  // q = 1

  for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
    CVec e1 = {Cplx(1.0), Cplx(0.0), Cplx(0.0)};
    CHECK(dual_norm(e1, p) == doctest::Approx(1.0));
  }
}

TEST_CASE("norming vector attains the dual norm") {
  Rng rng(8);
  for (double p : {1.0, 1.5, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
    for (int it = 0; it < 20; ++it) {
      Functional f{LpSpace{5, p}, rng.cgauss_vec(5)};
      CVec y = norming_vector(f);
      CHECK(p_norm(y, p) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(f(y)) == doctest::Approx(f.norm()).epsilon(1e-10));
    }
  }
}

TEST_CASE("duality map returns a norming functional") {
  Rng rng(14);
  for (double p : {1.0, 1.5, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
    for (int it = 0; it < 20; ++it) {
      CVec y = test::random_unit(rng, 4, p);
      Functional toward{LpSpace{4, p}, rng.cgauss_vec(4)};
      Functional g = duality_map(y, LpSpace{4, p}, toward);
      CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(std::abs(g(y)) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("functional bpb, euclidean closed form") {
  // already attaining
  Functional e1{LpSpace{2, 2.0}, {Cplx(1.0), Cplx(0.0)}};
  CVec x = {Cplx(1.0), Cplx(0.0)};
  auto r = bpb_functional(e1, x, 0.1);
  CHECK(r.verified);
  CHECK(r.dist_xy == doctest::Approx(0.0));
  CHECK(r.dist_fg == 0.0);

  // x = (sqrt(1-t^2), t), t = 0.3: |f(x)| = sqrt(0.91) > 0.9, y = e1
  const double t = 0.3;
  CVec x2 = {Cplx(std::sqrt(1.0 - t * t)), Cplx(t)};
  auto r2 = bpb_functional(e1, x2, 0.1);
  CHECK(r2.verified);
  const double expected = std::sqrt(2.0 - 2.0 * std::sqrt(0.91));  // arithmetic oracle
  CHECK(r2.dist_xy == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r2.dist_xy < std::sqrt(0.2));
  CHECK(std::abs(r2.y[0] - Cplx(1.0)) < 1e-12);

  // phase alignment: x = (i sqrt(1-t^2), t) pulls y to i e1
  CVec x3 = {Cplx(0.0, std::sqrt(1.0 - t * t)), Cplx(t)};
  auto r3 = bpb_functional(e1, x3, 0.1);
  CHECK(r3.verified);
  CHECK(std::abs(r3.y[0] - Cplx(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(r3.attain - 1.0) < 1e-12);
}

TEST_CASE("functional bpb properties, p = 2 random instances") {
  Rng rng(77);
  for (int it = 0; it < 2000; ++it) {
    const int n = 1 + static_cast<int>(rng.uniform(0, 8));
    Functional f{LpSpace{n, 2.0}, test::random_unit(rng, n, 2.0)};
    CVec x = test::random_unit(rng, n, 2.0);
    const double fx = std::abs(f(x));
    if (fx <= 1e-4) continue;
    const double eps = std::min(0.9, (1.0 - fx) + rng.uniform(1e-3, 0.5));
    if (!(fx > 1.0 - eps) || eps >= 1.0) continue;
    auto r = bpb_functional(f, x, eps);
    CHECK(r.verified);
    CHECK(std::abs(r.attain - 1.0) <= 1e-10);
    CHECK(r.dist_xy < std::sqrt(2.0 * eps));
    CHECK(r.dist_fg == 0.0);
    CHECK(sqr(r.dist_xy) == doctest::Approx(2.0 - 2.0 * fx).epsilon(1e-10));
  }
}

TEST_CASE("functional bpb preconditions") {
  Functional f{LpSpace{2, 2.0}, {Cplx(1.0), Cplx(0.0)}};
  CVec x = {Cplx(0.0), Cplx(1.0)};  // f(x) = 0
  CHECK_THROWS_AS(bpb_functional(f, x, 0.5), Error);
  Functional bad{LpSpace{2, 2.0}, {Cplx(2.0), Cplx(0.0)}};
  CVec ex = {Cplx(1.0), Cplx(0.0)};
  CHECK_THROWS_AS(bpb_functional(bad, ex, 0.5), Error);
}

TEST_CASE("functional bpb verified search for general p") {
  Rng rng(31);
  for (double p : {1.5, 3.0, 1.0, std::numeric_limits<double>::infinity()}) {
    for (int it = 0; it < 25; ++it) {
      const int n = 2 + static_cast<int>(rng.uniform(0, 4));
      // construct a near-attained instance: f norms y*, x is y* slightly moved
      CVec ystar = test::random_unit(rng, n, p);
      Functional f = duality_map(ystar, LpSpace{n, p}, Functional{LpSpace{n, p}, CVec(n, 0.0)});
      double nf = f.norm();
      for (auto& c : f.v) c /= nf;
      CVec x = ystar;
      for (auto& c : x) c += 0.02 * rng.cgauss();
      double nx = p_norm(x, p);
      for (auto& c : x) c /= nx;
      const double fx = std::abs(f(x));
      const double eps = std::min(0.9, 1.2 * (1.0 - fx) + 0.05);
      if (!(fx > 1.0 - eps)) continue;
      auto r = bpb_functional(f, x, eps);
      CHECK(r.verified);
      CHECK(std::abs(r.attain - 1.0) <= 1e-10);
      CHECK(r.dist_xy < std::sqrt(2.0 * eps));
      CHECK(r.dist_fg < std::sqrt(2.0 * eps));
    }
  }
}
