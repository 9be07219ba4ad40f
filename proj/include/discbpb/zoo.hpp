#pragma once

#include "discbpb/operator_disc.hpp"

namespace bpb::zoo {

/// Linear map between polynomial coefficient spaces whose domain carries the
/// sup norm of the input polynomial. Houses multiplication and composition
/// operators.
struct OperatorOnPoly {
  int d_in = 0;
  int d_out = 0;
  std::vector<CVec> cols;  // cols[k] = image coefficients of z^k

  DiscPoly apply(const DiscPoly& f) const;
};

/// M_phi f = phi * f on polynomials of degree <= d. The output degree is
/// d + deg(phi), so no truncation occurs and ||M_phi|| = ||phi||_inf = ||M_phi 1||.
OperatorOnPoly mult_operator(const DiscPoly& phi, int d);

/// C_phi f = f o phi for a polynomial self-map of the disc (sup_norm(phi) <= 1
/// required). Column k holds the coefficients of phi^k; output degree d*deg(phi).
OperatorOnPoly comp_operator(const DiscPoly& phi, int d);

/// T x = xstar(x) h, the rank-one operator with ||T|| = ||xstar|| ||h||_inf.
OperatorIntoDisc rank_one(const Functional& xstar, const DiscPoly& h);

/// Diagonal coefficient multiplier (Tf)(z) = sum (1 - 1/(n+1)) a_n z^n, the
/// truncation of the classical non-attaining map into the Hardy space.
struct HardyDiagonal {
  int degree = 0;
  std::vector<double> multipliers;  // 1 - 1/(n+1)

  DiscPoly apply(const DiscPoly& f) const;
  /// hardy2_norm(Tf) / sup_norm(f).
  double ratio(const DiscPoly& f) const;
  /// Best ratio over the monomial basis: 1 - 1/(degree+1).
  double best_basis_ratio() const;
};

HardyDiagonal hardy_diagonal(int d);

struct ProbeReport {
  CVec best_x;
  double best_value = 0.0;   // best ||T x||_inf found
  double op_norm = 0.0;      // dual-norm sweep value
  double gap = 0.0;          // op_norm - best_value
  bool attained = false;     // gap within tolerance
  int trials = 0;
  nlohmann::json to_json() const;
};

/// Multi-start maximization of ||T x||_inf over the unit sphere: random
/// starts, then projected ascent from the best candidates. Independent of the
/// dual-norm sweep, which it is used to cross-check.
ProbeReport attainment_probe(const OperatorIntoDisc& t, int trials,
                             std::uint64_t seed, double tol = 1e-6);

struct EquicontinuityTable {
  std::vector<double> thetas;
  std::vector<double> epss;
  // rows[i][j] = delta2 at (thetas[i], epss[j]); negative marks "unavailable"
  std::vector<std::vector<double>> rows;
  std::string csv() const;
};

EquicontinuityTable equicontinuity_report(const OperatorIntoDisc& t,
                                          std::span<const double> thetas,
                                          std::span<const double> epss);

}  // namespace bpb::zoo
