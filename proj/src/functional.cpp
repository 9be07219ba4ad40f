#include "discbpb/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bpb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Cplx unit_phase(Cplx c) {
  double a = std::abs(c);
  return a > 0.0 ? c / a : Cplx(1.0);
}
}  // namespace

double LpSpace::dual_p() const {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double p_norm(std::span<const Cplx> x, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const Cplx& c : x) m = std::max(m, std::abs(c));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (const Cplx& c : x) s += std::abs(c);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (const Cplx& c : x) s += std::norm(c);
    return std::sqrt(s);
  }
  double s = 0.0;
  for (const Cplx& c : x) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0 / p);
}

double dual_norm(std::span<const Cplx> v, double p) {
  LpSpace sp{static_cast<int>(v.size()), p};
  return p_norm(v, sp.dual_p());
}

CVec norming_vector(const Functional& f) {
  const double p = f.domain.p;
  const int n = f.domain.n;
  CVec y(n, 0.0);
  if (p == 1.0) {
    int best = 0;
    for (int k = 1; k < n; ++k) {
      if (std::abs(f.v[k]) > std::abs(f.v[best])) best = k;
    }
    y[best] = std::conj(unit_phase(f.v[best]));
    return y;
  }
  if (std::isinf(p)) {
    for (int k = 0; k < n; ++k) y[k] = std::conj(unit_phase(f.v[k]));
    return y;
  }
  // 1 < p < inf: y_k proportional to conj(sgn v_k) |v_k|^{q-1}
  const double q = f.domain.dual_p();
  CVec t(n);
  for (int k = 0; k < n; ++k) {
    t[k] = std::conj(unit_phase(f.v[k])) * std::pow(std::abs(f.v[k]), q - 1.0);
  }
  double nt = p_norm(t, p);
  if (nt == 0.0) {
    y[0] = 1.0;
    return y;
  }
  for (int k = 0; k < n; ++k) y[k] = t[k] / nt;
  return y;
}

Functional duality_map(std::span<const Cplx> y, const LpSpace& space,
                       const Functional& toward) {
  const double p = space.p;
  const int n = space.n;
  Functional g{space, CVec(n, 0.0)};
  if (p == 1.0) {
    // forced conj(sgn y_k) on the support; elsewhere any |g_k| <= 1 works,
    // so take the disc projection of the target coordinates
    for (int k = 0; k < n; ++k) {
      if (std::abs(y[k]) > 1e-14) {
        g.v[k] = std::conj(unit_phase(y[k]));
      } else {
        Cplx t = toward.v.empty() ? Cplx(0.0) : toward.v[k];
        double a = std::abs(t);
        g.v[k] = a <= 1.0 ? t : t / a;
      }
    }
    return g;
  }
  if (std::isinf(p)) {
    // support restricted to coordinates with |y_k| = 1; nonnegative weights
    // summing to 1, fit to the target by coordinate descent on the simplex
    std::vector<int> active;
    for (int k = 0; k < n; ++k) {
      if (std::abs(y[k]) >= 1.0 - 1e-9) active.push_back(k);
    }
    if (active.empty()) throw Error("functional.duality_map", "vector is not unit in sup norm");
    std::vector<double> lam(active.size(), 0.0);
    std::vector<double> want(active.size(), 0.0);
    double total = 0.0;
    for (size_t i = 0; i < active.size(); ++i) {
      const int k = active[i];
      want[i] = std::max(0.0, (toward.v.empty() ? Cplx(0.0) : toward.v[k] * y[k]).real());
      total += want[i];
    }
    if (total > 0.0) {
      for (size_t i = 0; i < active.size(); ++i) lam[i] = want[i] / std::max(total, 1.0);
    }
    // coordinate descent: clip each weight to its unconstrained optimum, then
    // repair the simplex constraint
    for (int sweep = 0; sweep < 8; ++sweep) {
      double s = 0.0;
      for (size_t i = 0; i < active.size(); ++i) {
        lam[i] = std::clamp(want[i], 0.0, 1.0);
        s += lam[i];
      }
      if (s <= 0.0) {
        lam.assign(active.size(), 1.0 / active.size());
        break;
      }
      if (s > 1.0) {
        for (auto& l : lam) l /= s;
      } else {
        lam[0] += 1.0 - s;  // deficit is free to park on one coordinate
        break;
      }
    }
    double s = 0.0;
    for (double l : lam) s += l;
    if (std::abs(s - 1.0) > 1e-12) {
      for (auto& l : lam) l /= s;
    }
    for (size_t i = 0; i < active.size(); ++i) {
      g.v[active[i]] = lam[i] * std::conj(unit_phase(y[active[i]]));
    }
    return g;
  }
  // smooth case: unique duality map
  for (int k = 0; k < n; ++k) {
    g.v[k] = std::conj(unit_phase(y[k])) * std::pow(std::abs(y[k]), p - 1.0);
  }
  return g;
}

namespace {

/// Projection of y onto the ball {||y - x||_p <= r} followed by sphere
/// normalization; alternated a few times.
void project_feasible(CVec& y, std::span<const Cplx> x, double r, double p) {
  for (int it = 0; it < 12; ++it) {
    double np = p_norm(y, p);
    if (np > 0.0) {
      for (auto& c : y) c /= np;
    }
    CVec d(y.size());
    for (size_t k = 0; k < y.size(); ++k) d[k] = y[k] - x[k];
    double dist = p_norm(d, p);
    if (dist <= r) {
      if (std::abs(p_norm(y, p) - 1.0) < 1e-12) return;
      continue;
    }
    double t = r / dist;
    for (size_t k = 0; k < y.size(); ++k) y[k] = x[k] + t * d[k];
  }
  double np = p_norm(y, p);
  if (np > 0.0) {
    for (auto& c : y) c /= np;
  }
}

}  // namespace

BpbFunctionalResult bpb_functional(const Functional& f, std::span<const Cplx> x,
                                   double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error("functional.bpb", "eps must lie in (0,1)");
  }
  if (std::abs(f.norm() - 1.0) > 1e-8) {
    throw Error("functional.bpb", "functional must have unit norm");
  }
  if (std::abs(p_norm(x, f.domain.p) - 1.0) > 1e-8) {
    throw Error("functional.bpb", "point must have unit norm");
  }
  const Cplx fx = f(x);
  if (!(std::abs(fx) > 1.0 - eps)) {
    throw Error("functional.bpb", "|f(x)| > 1 - eps required");
  }

  BpbFunctionalResult out;
  const double bound = std::sqrt(2.0 * eps);

  if (f.domain.p == 2.0) {
    // closed form: align the Euclidean norming vector with the phase of f(x)
    const Cplx c = unit_phase(fx);
    out.y = norming_vector(f);
    for (auto& yk : out.y) yk *= c;
    out.g = f;
    out.attain = std::abs(f(out.y));
    CVec d(out.y.size());
    for (size_t k = 0; k < d.size(); ++k) d[k] = x[k] - out.y[k];
    out.dist_xy = p_norm(d, 2.0);
    out.dist_fg = 0.0;
    out.verified = std::abs(out.attain - 1.0) <= 1e-10 && out.dist_xy < bound;
    return out;
  }

  // general p: verified-output search
  const double p = f.domain.p;
  const int n = f.domain.n;
  const double r = bound * 0.999;
  Rng rng(seed);

  CVec best_y;
  double best_val = -1.0;
  auto consider = [&](CVec y) {
    project_feasible(y, x, r, p);
    // local ascent on |f(y)|: step toward the norming direction of f, stay feasible
    CVec dir = norming_vector(f);
    double step = 0.5;
    double cur = std::abs(f(y));
    for (int it = 0; it < 200 && step > 1e-12; ++it) {
      CVec cand(n);
      const Cplx phase = unit_phase(f(y));
      for (int k = 0; k < n; ++k) cand[k] = y[k] + step * phase * dir[k];
      project_feasible(cand, x, r, p);
      double val = std::abs(f(cand));
      if (val > cur + 1e-15) {
        y = std::move(cand);
        cur = val;
      } else {
        step *= 0.5;
      }
    }
    if (cur > best_val) {
      best_val = cur;
      best_y = y;
    }
  };

  consider(CVec(x.begin(), x.end()));
  consider(norming_vector(f));
  const int max_restarts = 20;
  for (int restart = 0; restart < max_restarts; ++restart) {
    // verify the current best
    Functional g = duality_map(best_y, f.domain, f);
    CVec d(n);
    for (int k = 0; k < n; ++k) d[k] = x[k] - best_y[k];
    CVec df(n);
    for (int k = 0; k < n; ++k) df[k] = f.v[k] - g.v[k];
    out.g = g;
    out.y = best_y;
    out.attain = std::abs(g(best_y));
    out.dist_xy = p_norm(d, p);
    out.dist_fg = dual_norm(df, p);
    out.restarts = restart;
    out.verified = std::abs(out.attain - 1.0) <= 1e-10 && out.dist_xy < bound &&
                   out.dist_fg < bound;
    if (out.verified) return out;
    // perturb and retry
    CVec y = best_y;
    for (auto& c : y) c += 0.1 * rng.cgauss();
    consider(std::move(y));
  }
  return out;  // best candidate with margins, verified = false
}

}  // namespace bpb
