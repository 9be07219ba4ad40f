#include <doctest.h>

#include "discbpb/zoo.hpp"
#include "test_util.hpp"

using namespace bpb;

TEST_CASE("multiplication operator") {
  DiscPoly z{Cplx(0.0), Cplx(1.0)};
  auto m = zoo::mult_operator(z, 3);
  DiscPoly one{Cplx(1.0)};
  auto out = m.apply(one);
  CHECK(sup_norm(out) == doctest::Approx(1.0));
  CHECK(std::abs(out.coeffs[1] - Cplx(1.0)) < 1e-15);

  // identity symbol
  auto id = zoo::mult_operator(DiscPoly{Cplx(1.0)}, 4);
  Rng rng(60);
  DiscPoly f = test::random_poly(rng, 4);
  auto idf = id.apply(f);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(idf.coeffs[k] - f.coeffs[k]) < 1e-15);

  // ||M_phi 1|| = ||phi||_inf
  DiscPoly phi{Cplx(1.0), Cplx(1.0)};
  auto m2 = zoo::mult_operator(phi, 2);
  CHECK(sup_norm(m2.apply(one)) == doctest::Approx(2.0).epsilon(1e-10));

  for (int it = 0; it < 50; ++it) {
    DiscPoly r = test::random_poly(rng, 1 + static_cast<int>(rng.uniform(0, 10)));
    auto mr = zoo::mult_operator(r, 3);
    CHECK(sup_norm(mr.apply(one)) == doctest::Approx(sup_norm(r)).epsilon(1e-8));
  }
}

TEST_CASE("composition operator") {
  DiscPoly z{Cplx(0.0), Cplx(1.0)};
  auto cid = zoo::comp_operator(z, 3);
  Rng rng(61);
  DiscPoly f = test::random_poly(rng, 3);
  auto out = cid.apply(f);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(out.coeffs[k] - f.coeffs[k]) < 1e-14);

  DiscPoly one{Cplx(1.0)};
  CHECK(sup_norm(cid.apply(one)) == doctest::Approx(1.0));

  // phi = z^2, f = z -> z^2
  DiscPoly z2{Cplx(0.0), Cplx(0.0), Cplx(1.0)};
  auto c2 = zoo::comp_operator(z2, 2);
  auto img = c2.apply(z);
  CHECK(std::abs(img.coeffs[2] - Cplx(1.0)) < 1e-14);
  CHECK(std::abs(img.coeffs[0]) + std::abs(img.coeffs[1]) < 1e-14);

  // contraction up to truncation: ||C_phi f|| <= ||f||
  DiscPoly blend{Cplx(0.2), Cplx(0.5), Cplx(0.0), Cplx(0.3)};
  REQUIRE(sup_norm(blend) <= 1.0 + 1e-12);
  auto cb = zoo::comp_operator(blend, 4);
  for (int it = 0; it < 20; ++it) {
    DiscPoly g = test::random_poly(rng, 4);
    CHECK(sup_norm(cb.apply(g)) <= sup_norm(g) + 1e-9);
  }

  CHECK_THROWS_AS(zoo::comp_operator(DiscPoly{Cplx(2.0)}, 2), Error);  // not a self-map
}

TEST_CASE("rank one operator") {
  Functional zero{LpSpace{2, 2.0}, {Cplx(0.0), Cplx(0.0)}};
  auto t0 = zoo::rank_one(zero, DiscPoly{Cplx(1.0)});
  CHECK(operator_norm(t0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(zoo::rank_one(zero, DiscPoly{Cplx(0.0)}), Error);

  // evaluation functional realization: xstar from the row at z0, h = 1
  const Cplx z0(0.3, 0.2);
  Functional ev{LpSpace{1, 2.0}, {Cplx(1.0)}};
  auto tev = zoo::rank_one(ev, DiscPoly{Cplx(1.0)});
  CHECK(operator_norm(tev) == doctest::Approx(1.0));
  CVec one_vec = {Cplx(1.0)};
  CHECK(std::abs(eval(tev.apply(one_vec), z0) - 1.0) < 1e-14);
}

TEST_CASE("hardy diagonal truncations") {
  auto t4 = zoo::hardy_diagonal(4);
  // basis vector z^4: ||T z^4||_2 = 1 - 1/5 = 0.8
  CHECK(hardy2_norm(t4.apply(DiscPoly::monomial(4))) == doctest::Approx(0.8));
  // constant: multiplier 0
  CHECK(hardy2_norm(t4.apply(DiscPoly{Cplx(1.0)})) == doctest::Approx(0.0));

  // best basis ratio is 1 - 1/(d+1), increasing in d, with gap 1/(d+1)
  double prev = 0.0;
  for (int d : {1, 2, 4, 9, 99}) {
    auto t = zoo::hardy_diagonal(d);
    double best = 0.0;
    for (int n = 0; n <= d; ++n) {
      best = std::max(best, t.ratio(DiscPoly::monomial(n)));  // basis enumeration oracle
    }
    CHECK(best == doctest::Approx(1.0 - 1.0 / (d + 1.0)).epsilon(1e-12));
    CHECK(t.best_basis_ratio() == doctest::Approx(best).epsilon(1e-12));
    CHECK(best > prev);
    prev = best;
  }

  // strict inequality ||Tf||_2 < ||f||_inf for nonzero f
  Rng rng(62);
  auto t9 = zoo::hardy_diagonal(9);
  for (int it = 0; it < 50; ++it) {
    DiscPoly f = test::random_poly(rng, 9);
    CHECK(hardy2_norm(t9.apply(f)) < sup_norm(f));
  }
}

TEST_CASE("attainment probe") {
  Rng rng(63);
  // rank one, p = 2: the probe reaches the norm
  Functional xstar{LpSpace{4, 2.0}, rng.cgauss_vec(4)};
  DiscPoly h = test::random_poly(rng, 8);
  auto t = zoo::rank_one(xstar, h);
  auto rep = zoo::attainment_probe(t, 400, 1);
  CHECK(rep.attained);
  CHECK(rep.best_value == doctest::Approx(rep.op_norm).epsilon(1e-6));

  OperatorIntoDisc zero;
  zero.domain = LpSpace{2, 2.0};
  zero.degree = 1;
  zero.cols = {DiscPoly{CVec(2, 0.0)}, DiscPoly{CVec(2, 0.0)}};
  CHECK(zoo::attainment_probe(zero, 50, 1).best_value == doctest::Approx(0.0));
}

TEST_CASE("equicontinuity report") {
  Rng rng(64);
  Functional xstar{LpSpace{3, 2.0}, rng.cgauss_vec(3)};
  DiscPoly h = test::random_poly(rng, 5);
  const double scale = 1.0 / (xstar.norm() * sup_norm(h));
  for (auto& v : xstar.v) v *= scale;
  auto t = zoo::rank_one(xstar, h);

  const std::vector<double> thetas = {0.0, 1.0, 2.5};
  const std::vector<double> epss = {0.5, 0.25, 0.1};
  auto tab = zoo::equicontinuity_report(t, thetas, epss);
  REQUIRE(tab.rows.size() == 3);
  for (const auto& row : tab.rows) {
    REQUIRE(row.size() == 3);
    for (double v : row) CHECK(v > 0.0);  // rank-one family: finite delta2 everywhere
    // delta2 non-increasing as eps decreases
    CHECK(row[0] >= row[1] - 1e-12);
    CHECK(row[1] >= row[2] - 1e-12);
  }
  CHECK(tab.csv().find("theta0,eps=") == 0);

  OperatorIntoDisc zero;
  zero.domain = LpSpace{2, 2.0};
  zero.degree = 1;
  zero.cols = {DiscPoly{CVec(2, 0.0)}, DiscPoly{CVec(2, 0.0)}};
  auto ztab = zoo::equicontinuity_report(zero, thetas, epss);
  for (const auto& row : ztab.rows) {
    for (double v : row) CHECK(v == doctest::Approx(2.0));
  }
}
