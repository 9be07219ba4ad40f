#pragma once

#include <nlohmann/json.hpp>

#include "discbpb/common.hpp"

namespace bpb {

/// Truncated Taylor polynomial a_0 + a_1 z + ... + a_d z^d, the concrete
/// citizen of the disc algebra used throughout. The degree is
/// representational: trailing coefficients may be zero.
struct DiscPoly {
  CVec coeffs;  // coeffs[k] multiplies z^k

  DiscPoly() : coeffs{Cplx(0.0)} {}
  explicit DiscPoly(CVec c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.push_back(0.0);
  }
  DiscPoly(std::initializer_list<Cplx> c) : coeffs(c) {
    if (coeffs.empty()) coeffs.push_back(0.0);
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  static DiscPoly monomial(int power, Cplx a = 1.0) {
    CVec c(power + 1, 0.0);
    c[power] = a;
    return DiscPoly(std::move(c));
  }
};

/// Values of a polynomial at the M-th roots of unity, samples[k] = p(e^{2*pi*i*k/M}).
struct BoundaryGrid {
  int size = 0;
  CVec samples;
};

/// sup-norm estimate plus a rigorous upper bracket.
struct SupNorm {
  double value = 0.0;  // grid maximum refined by golden-section search
  double upper = 0.0;  // bracket grid_max / (1 - pi*d/M) from the Bernstein inequality
};

/// Default boundary grid for degree d: max(4096, next power of two >= 4(d+1)).
int default_grid(int degree);

/// Horner evaluation. Requires |z| <= 1 + 1e-12.
Cplx eval(const DiscPoly& p, Cplx z);

/// Requires M a power of two with M >= 2(degree+1).
BoundaryGrid boundary_samples(const DiscPoly& p, int m);

SupNorm sup_norm_full(const DiscPoly& p, int m = 0);
double sup_norm(const DiscPoly& p, int m = 0);

/// Coefficient form of the Hardy-space norm, (sum |a_k|^2)^(1/2).
double hardy2_norm(const DiscPoly& p);

/// Upper bound on |p'| over the closed disc: degree * sup_norm(p).
double bernstein_bound(const DiscPoly& p, int m = 0);

DiscPoly operator+(const DiscPoly& a, const DiscPoly& b);
DiscPoly operator*(const DiscPoly& a, const DiscPoly& b);
DiscPoly operator*(Cplx c, const DiscPoly& p);

/// JSON array of [re, im] pairs, index = power.
nlohmann::json to_json(const DiscPoly& p);
DiscPoly discpoly_from_json(const nlohmann::json& j);

}  // namespace bpb
