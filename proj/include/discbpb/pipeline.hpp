#pragma once

#include "discbpb/operator_disc.hpp"
#include "discbpb/peak.hpp"

namespace bpb {

/// The perturbed operator (Nx)(z) = eta(z) Psi2(x) + (1-eps)(1-eta(z)) (Tx)(z).
struct PerturbedOperator {
  EtaFunction eta;
  Functional psi2;
  OperatorIntoDisc base;
  double eps = 0.0;

  Cplx eval(std::span<const Cplx> x, Cplx z) const;
};

Cplx eval_N(const PerturbedOperator& n, std::span<const Cplx> x, Cplx z);

namespace detail {
/// The defining formula with eta supplied as a value, so tests can substitute
/// doubles (eta = 0 etc.) without building a full EtaFunction.
inline Cplx eval_N_with(Cplx eta_value, Cplx psi2_x, Cplx tx_z, double eps) {
  return eta_value * psi2_x + (1.0 - eps) * (1.0 - eta_value) * tx_z;
}

/// ||N - T|| as a boundary sweep with eta supplied as a callable.
double diff_norm_with(const OperatorIntoDisc& t, const Functional& psi2,
                      double eps, const std::function<Cplx(Cplx)>& eta_fn,
                      double theta0, int m, double* refine_gap);
}  // namespace detail

/// sup_z over the unit circle of the dual norm of x -> (Nx)(z) - (Tx)(z).
/// The grid is doubled until two sweeps agree within 1e-4; both values are
/// available through refine_gap.
double diff_norm(const OperatorIntoDisc& t, const PerturbedOperator& n, int m = 0,
                 double* refine_gap = nullptr);

/// One verified inequality of the proof chain.
struct CheckEntry {
  std::string name;
  double value = 0.0;
  double target = 0.0;  // the bound the proof requires (value must stay below)
  double slack = 0.0;   // target - value
  bool pass = false;
  std::string note;
};

nlohmann::json to_json(const CheckEntry& c);

struct PipelineOptions {
  int map_grid = 2048;       // conformal-map boundary grid
  int sweep_grid = 4096;     // norm sweeps
  long n0_guard = 1000000;   // refusal threshold for the bump exponent
  std::uint64_t seed = 1;    // functional-step search seed (used for p != 2)
};

/// Full output of the main construction: the operator N, the witness pair,
/// every constant, and the certified inequality chain.
struct BpbOperatorResult {
  PerturbedOperator n;
  CVec x0, y0;
  double theta0 = 0.0, eps = 0.0;

  double delta1 = 0.0, delta2 = 0.0, gamma = 0.0;
  double eps1 = 0.0, log_eps1 = 0.0;
  long n0 = 0;

  double psi_norm = 0.0;       // ||Psi||
  double norm_N_y0 = 0.0;      // sup-norm of N y0 (grid + the peak point)
  double attain_at_peak = 0.0; // |(N y0)~(e^{i theta0})|
  double dist_x0_y0 = 0.0;
  double op_distance = 0.0;    // measured ||T - N||
  double norm_N = 0.0;         // grid cross-check of ||N|| (certified <= 1 pointwise)

  std::vector<CheckEntry> conclusions;  // the three theorem conclusions
  std::vector<CheckEntry> chain;        // intermediate proof targets
  bool all_pass = false;

  nlohmann::json report(const nlohmann::json& provenance = {}) const;
};

/// Runs the construction end to end:
///  1. delta2 from the equicontinuity modulus of T at e^{i theta0};
///  2. the conformal map psi_eps of the Stolz region; 3. delta1;
///  4. peak function, gamma = delta2^2/4, eps1, n0, h, eta;
///  5. Psi and Psi1 = Psi/||Psi||; 6. the functional BPB step at level eps/3;
///  7. N by the defining formula; 8. certification of every inequality.
/// Preconditions: eps in (0,1), ||T|| = 1 within 1e-6, and
/// |(T x0)~(e^{i theta0})| > 1 - eps/3. Failures throw Error with the step name.
BpbOperatorResult bpb_operator(const OperatorIntoDisc& t, std::span<const Cplx> x0,
                               double theta0, double eps,
                               const PipelineOptions& opt = {});

/// N = N1 + N2 with N1 x = Psi2(x) eta (rank one) and
/// N2 x = (1-eps)(1-eta) Tx.
struct IdealParts {
  EtaFunction eta;
  Functional psi2;
  OperatorIntoDisc base;
  double eps = 0.0;

  Cplx eval_N1(std::span<const Cplx> x, Cplx z) const;
  Cplx eval_N2(std::span<const Cplx> x, Cplx z) const;
};

IdealParts ideal_decompose(const PerturbedOperator& n);

}  // namespace bpb
