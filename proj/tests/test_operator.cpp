#include <doctest.h>

#include "discbpb/operator_disc.hpp"
#include "discbpb/zoo.hpp"
#include "test_util.hpp"

using namespace bpb;

namespace {
OperatorIntoDisc random_operator(Rng& rng, int n, int d, double p = 2.0) {
  OperatorIntoDisc t;
  t.domain = LpSpace{n, p};
  t.degree = d;
  for (int j = 0; j < n; ++j) t.cols.push_back(test::random_poly(rng, d, 0.3));
  return t;
}
}  // namespace

TEST_CASE("apply and row functional agree") {
  Rng rng(40);
  OperatorIntoDisc t = random_operator(rng, 3, 6);
  CVec x = test::random_unit(rng, 3, 2.0);
  const Cplx z = rng.in_disc();
  // (Tx)(z) = row(z) . x
  CVec row = t.row_functional(z);
  Cplx dot = 0.0;
  for (int j = 0; j < 3; ++j) dot += row[j] * x[j];
  CHECK(std::abs(eval(t.apply(x), z) - dot) < 1e-12);
}

TEST_CASE("operator norm examples") {
  // rank one with xstar = e1*, h = 1: constant function, norm 1
  Functional e1{LpSpace{2, 2.0}, {Cplx(1.0), Cplx(0.0)}};
  auto t = zoo::rank_one(e1, DiscPoly{Cplx(1.0)});
  CHECK(operator_norm(t) == doctest::Approx(1.0).epsilon(1e-10));

  OperatorIntoDisc zero;
  zero.domain = LpSpace{2, 2.0};
  zero.degree = 3;
  zero.cols = {DiscPoly{CVec(4, 0.0)}, DiscPoly{CVec(4, 0.0)}};
  CHECK(operator_norm(zero) == doctest::Approx(0.0));

  Rng rng(41);
  OperatorIntoDisc r = random_operator(rng, 4, 8);
  const double base = operator_norm(r);
  for (int it = 0; it < 10; ++it) {
    const Cplx c = rng.cgauss();
    OperatorIntoDisc s = r;
    for (auto& col : s.cols) col = c * col;
    CHECK(operator_norm(s) == doctest::Approx(std::abs(c) * base).epsilon(1e-10));
  }
  CHECK(operator_norm_full(r).upper >= base);
}

TEST_CASE("operator norm equals the product for rank-one maps") {
  Rng rng(42);
  for (int it = 0; it < 20; ++it) {
    const int n = 1 + static_cast<int>(rng.uniform(0, 6));
    Functional xstar{LpSpace{n, 2.0}, rng.cgauss_vec(n)};
    DiscPoly h = test::random_poly(rng, 10);
    auto t = zoo::rank_one(xstar, h);
    CHECK(operator_norm(t) ==
          doctest::Approx(xstar.norm() * sup_norm(h)).epsilon(1e-8));
  }
}

TEST_CASE("point functional") {
  Rng rng(43);
  const double theta0 = 1.2;
  Functional xstar{LpSpace{3, 2.0}, rng.cgauss_vec(3)};
  DiscPoly h = test::random_poly(rng, 7);
  auto t = zoo::rank_one(xstar, h);
  Functional psi = point_functional(t, theta0);
  const Cplx hval = eval(h, std::polar(1.0, theta0));
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(psi.v[j] - hval * xstar.v[j]) < 1e-12);
  }

  OperatorIntoDisc zero;
  zero.domain = LpSpace{2, 2.0};
  zero.degree = 1;
  zero.cols = {DiscPoly{CVec(2, 0.0)}, DiscPoly{CVec(2, 0.0)}};
  CHECK(point_functional(zero, 0.3).norm() == doctest::Approx(0.0));

  // ||Psi|| <= ||T|| on random operators
  for (int it = 0; it < 50; ++it) {
    OperatorIntoDisc r = random_operator(rng, 3, 9);
    CHECK(point_functional(r, rng.uniform(0.0, kTwoPi)).norm() <=
          operator_norm(r) + 1e-8);
  }
}

TEST_CASE("equicontinuity modulus, degenerate cases") {
  // constant range: rows beyond the constant term vanish, Delta == 0
  OperatorIntoDisc c;
  c.domain = LpSpace{2, 2.0};
  c.degree = 0;
  c.cols = {DiscPoly{Cplx(0.4)}, DiscPoly{Cplx(0.3, 0.1)}};
  auto r = equicontinuity_delta2(c, 0.9, 0.25);
  CHECK(r.capped);
  CHECK(r.delta2 == doctest::Approx(2.0));

  OperatorIntoDisc zero;
  zero.domain = LpSpace{2, 2.0};
  zero.degree = 2;
  zero.cols = {DiscPoly{CVec(3, 0.0)}, DiscPoly{CVec(3, 0.0)}};
  CHECK(equicontinuity_delta2(zero, 0.1, 0.2).delta2 == doctest::Approx(2.0));
}

namespace {
// independent 2-d oracle: dense sampling of the whole cap region, not just
// its boundary, and plain scan over delta
double oracle_delta2(const OperatorIntoDisc& t, double theta0, double eps) {
  const Cplx p0 = std::polar(1.0, theta0);
  CVec row0 = t.row_functional(p0);
  auto delta_at = [&](Cplx z) {
    CVec v = t.row_functional(z);
    for (size_t j = 0; j < v.size(); ++j) v[j] -= row0[j];
    return dual_norm(v, t.domain.p);
  };
  double best = 0.0;
  for (double d = 1e-3; d <= 2.0; d += 1e-3) {
    double worst = 0.0;
    const int nr = 60, na = 120;
    for (int i = 0; i <= nr; ++i) {
      for (int j = 0; j <= na; ++j) {
        const Cplx z = p0 + (d * i / nr) * std::polar(1.0, kTwoPi * j / na);
        if (std::abs(z) > 1.0) continue;
        worst = std::max(worst, delta_at(z));
      }
    }
    if (worst < eps) {
      best = d;
    } else {
      break;
    }
  }
  return best;
}
}  // namespace

TEST_CASE("equicontinuity modulus matches a dense region oracle") {
  Rng rng(44);
  for (int it = 0; it < 5; ++it) {
    Functional xstar{LpSpace{3, 2.0}, rng.cgauss_vec(3)};
    DiscPoly h = test::random_poly(rng, 6);
    const double scale = 1.0 / (xstar.norm() * sup_norm(h));
    for (auto& v : xstar.v) v *= scale;
    auto t = zoo::rank_one(xstar, h);
    const double theta0 = rng.uniform(0.0, kTwoPi);
    const double eps = rng.uniform(0.1, 0.6);
    auto r = equicontinuity_delta2(t, theta0, eps);
    const double oracle = oracle_delta2(t, theta0, eps);
    // returned value is the bisection root shrunk by 10%; the oracle scan has
    // 1e-3 resolution
    CHECK(r.delta2 <= oracle + 1e-2);
    CHECK(r.delta2 >= 0.9 * oracle - 1e-2);
    CHECK(r.cap_sup < eps);
  }
}

TEST_CASE("equicontinuity refusal") {
  // a boundary row jump: T with huge derivative concentrated at the point is
  // still continuous, so instead force refusal with eps = 0 slack via an
  // operator whose modulus exceeds eps immediately: Delta(z) >= c > eps for
  // all z != p requires a discontinuity, impossible for polynomials; instead
  // check the documented floor: tiny eps against a steep operator refuses
  Rng rng(45);
  Functional xstar{LpSpace{2, 2.0}, {Cplx(1.0), Cplx(0.0)}};
  DiscPoly h = DiscPoly::monomial(64);
  const double scale = 1.0 / (xstar.norm() * sup_norm(h));
  Functional xs2{LpSpace{2, 2.0}, {Cplx(scale), Cplx(0.0)}};
  auto t = zoo::rank_one(xs2, h);
  CHECK_THROWS_AS(equicontinuity_delta2(t, 0.5, 1e-14), Error);
}

TEST_CASE("operator json round trip") {
  Rng rng(46);
  OperatorIntoDisc t = random_operator(rng, 3, 4);
  auto u = OperatorIntoDisc::from_json(t.to_json());
  CHECK(u.domain.n == t.domain.n);
  CHECK(u.degree == t.degree);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k <= 4; ++k) CHECK(u.cols[j].coeffs[k] == t.cols[j].coeffs[k]);
  }
}
