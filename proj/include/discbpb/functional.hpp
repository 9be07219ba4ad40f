#pragma once

#include "discbpb/common.hpp"

namespace bpb {

/// Finite-dimensional complex domain (C^n, ||.||_p). p = inf is allowed.
struct LpSpace {
  int n = 1;
  double p = 2.0;

  double dual_p() const;
  bool valid() const { return n >= 1 && (p >= 1.0); }
};

double p_norm(std::span<const Cplx> x, double p);

/// Norm of the functional x -> sum v_k x_k on (C^n, ||.||_p): the dual q-norm
/// of v with 1/p + 1/q = 1.
double dual_norm(std::span<const Cplx> v, double p);

/// Linear functional acting by x -> sum v_k x_k (no conjugation).
struct Functional {
  LpSpace domain;
  CVec v;

  double norm() const { return dual_norm(v, domain.p); }
  Cplx operator()(std::span<const Cplx> x) const {
    Cplx acc = 0.0;
    for (size_t k = 0; k < v.size(); ++k) acc += v[k] * x[k];
    return acc;
  }
};

/// A unit vector where |f| attains its norm (Hoelder extremal point).
CVec norming_vector(const Functional& f);

/// A norm-one functional g with g(y) = ||y|| = 1 for unit y. For p in (1,inf)
/// the duality map is unique; for p = 1 and p = inf the free coordinates are
/// tie-broken toward the given functional (coordinate-wise projection for
/// p = 1, simplex weights fit by coordinate descent for p = inf).
Functional duality_map(std::span<const Cplx> y, const LpSpace& space,
                       const Functional& toward);

/// Output of the functional Bishop-Phelps-Bollobas step: a norm-attaining
/// pair (g, y) close to (f, x).
struct BpbFunctionalResult {
  Functional g;
  CVec y;
  double attain = 0.0;   // |g(y)|
  double dist_xy = 0.0;  // ||x - y||_p
  double dist_fg = 0.0;  // ||f - g|| (dual norm)
  bool verified = false;
  int restarts = 0;
};

/// Requires ||f|| = 1 and ||x||_p = 1 (within 1e-8) and |f(x)| > 1 - eps.
///
/// For p = 2 the solution is closed form: y is the norming vector of f
/// phase-aligned with f(x) and g = f, giving ||x-y||^2 = 2 - 2|f(x)| < 2 eps
/// and ||f-g|| = 0. For general p a projected ascent over the unit sphere
/// restricted to ||y-x|| <= sqrt(2 eps) is run, g is the duality map of the
/// best y, and all three conclusions are verified; on failure the best
/// candidate is returned with verified = false.
BpbFunctionalResult bpb_functional(const Functional& f, std::span<const Cplx> x,
                                   double eps, std::uint64_t seed = 1);

}  // namespace bpb
