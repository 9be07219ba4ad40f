#include "discbpb/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bpb::zoo {

DiscPoly OperatorOnPoly::apply(const DiscPoly& f) const {
  if (f.degree() > d_in) {
    throw Error("zoo.apply", "input degree exceeds the operator's domain degree");
  }
  CVec out(d_out + 1, 0.0);
  for (size_t k = 0; k < f.coeffs.size(); ++k) {
    const CVec& col = cols[k];
    for (size_t j = 0; j < col.size(); ++j) out[j] += f.coeffs[k] * col[j];
  }
  return DiscPoly(std::move(out));
}

OperatorOnPoly mult_operator(const DiscPoly& phi, int d) {
  OperatorOnPoly t;
  t.d_in = d;
  t.d_out = d + phi.degree();
  t.cols.resize(d + 1);
  for (int k = 0; k <= d; ++k) {
    CVec col(t.d_out + 1, 0.0);
    for (size_t j = 0; j < phi.coeffs.size(); ++j) col[k + j] = phi.coeffs[j];
    t.cols[k] = std::move(col);
  }
  return t;
}

OperatorOnPoly comp_operator(const DiscPoly& phi, int d) {
  if (sup_norm(phi) > 1.0 + 1e-9) {
    throw Error("zoo.comp_operator", "phi must be a self-map of the closed disc");
  }
  OperatorOnPoly t;
  t.d_in = d;
  t.d_out = std::max(1, d * std::max(1, phi.degree()));
  t.cols.resize(d + 1);
  DiscPoly power{Cplx(1.0)};  // phi^0
  for (int k = 0; k <= d; ++k) {
    CVec col(t.d_out + 1, 0.0);
    for (size_t j = 0; j < power.coeffs.size() && j < col.size(); ++j) {
      col[j] = power.coeffs[j];
    }
    t.cols[k] = std::move(col);
    power = power * phi;
  }
  return t;
}

OperatorIntoDisc rank_one(const Functional& xstar, const DiscPoly& h) {
  if (hardy2_norm(h) == 0.0) throw Error("zoo.rank_one", "h must be nonzero");
  OperatorIntoDisc t;
  t.domain = xstar.domain;
  t.degree = h.degree();
  t.cols.reserve(xstar.v.size());
  for (const Cplx& vj : xstar.v) t.cols.push_back(vj * h);
  return t;
}

DiscPoly HardyDiagonal::apply(const DiscPoly& f) const {
  if (f.degree() > degree) {
    throw Error("zoo.hardy_diagonal", "input degree exceeds the truncation degree");
  }
  CVec out = f.coeffs;
  for (size_t n = 0; n < out.size(); ++n) out[n] *= multipliers[n];
  return DiscPoly(std::move(out));
}

double HardyDiagonal::ratio(const DiscPoly& f) const {
  const double s = sup_norm(f);
  if (s == 0.0) throw Error("zoo.hardy_diagonal", "ratio of the zero polynomial");
  return hardy2_norm(apply(f)) / s;
}

double HardyDiagonal::best_basis_ratio() const {
  return multipliers.empty() ? 0.0 : multipliers.back();
}

HardyDiagonal hardy_diagonal(int d) {
  if (d < 0) throw Error("zoo.hardy_diagonal", "degree must be nonnegative");
  HardyDiagonal t;
  t.degree = d;
  t.multipliers.resize(d + 1);
  for (int n = 0; n <= d; ++n) t.multipliers[n] = 1.0 - 1.0 / (n + 1.0);
  return t;
}

nlohmann::json ProbeReport::to_json() const {
  nlohmann::json bx = nlohmann::json::array();
  for (const Cplx& c : best_x) bx.push_back({c.real(), c.imag()});
  return nlohmann::json{{"best_value", best_value}, {"op_norm", op_norm},
                        {"gap", gap},               {"attained", attained},
                        {"trials", trials},         {"best_x", bx}};
}

ProbeReport attainment_probe(const OperatorIntoDisc& t, int trials,
                             std::uint64_t seed, double tol) {
  ProbeReport rep;
  rep.trials = trials;
  rep.op_norm = operator_norm(t);
  const double p = t.domain.p;
  const int n = t.domain.n;
  const int coarse = std::max(64, next_power_of_two(2 * (t.degree + 1)));

  auto normalize = [&](CVec& x) {
    double np = p_norm(x, p);
    if (np > 0.0) {
      for (auto& c : x) c /= np;
    } else {
      x.assign(n, 0.0);
      x[0] = 1.0;
    }
  };

  // precomputed rows make each sample a plain inner-product scan
  std::vector<CVec> rows(coarse);
  for (int j = 0; j < coarse; ++j) rows[j] = t.row_functional(unit_circle_point(j, coarse));

  Rng rng(seed);
  std::vector<std::pair<double, CVec>> top;
  auto push = [&](double v, CVec x) {
    top.emplace_back(v, std::move(x));
    std::sort(top.begin(), top.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    if (top.size() > 16) top.pop_back();
  };
  // best sampled start per boundary argmax angle, so every basin the samples
  // saw gets a polish candidate
  std::vector<std::pair<double, CVec>> per_angle(coarse);
  for (int it = 0; it < trials; ++it) {
    CVec x = rng.cgauss_vec(n);
    normalize(x);
    double best = -1.0;
    int arg = 0;
    for (int j = 0; j < coarse; ++j) {
      Cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += rows[j][k] * x[k];
      const double a = std::abs(acc);
      if (a > best) {
        best = a;
        arg = j;
      }
    }
    if (best > per_angle[arg].first) per_angle[arg] = {best, x};
    push(best, std::move(x));
  }
  std::sort(per_angle.begin(), per_angle.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < 32 && i < coarse && per_angle[i].first > 0.0; ++i) {
    top.emplace_back(per_angle[i]);
  }
  // polish the best starts by alternating maximization: the boundary argmax
  // z* of |Tx| (refined by golden section on the polynomial values), then the
  // exact sphere maximizer of |l_{z*}| (Hoelder-extremal vector). Both half
  // steps are monotone, so the iteration climbs until a joint fixed point.
  auto arg_peak = [&](const DiscPoly& tx, double* val) {
    double bestv = -1.0;
    int arg = 0;
    for (int j = 0; j < coarse; ++j) {
      double a = std::abs(eval(tx, unit_circle_point(j, coarse)));
      if (a > bestv) {
        bestv = a;
        arg = j;
      }
    }
    const double step = kTwoPi / coarse;
    double lo = step * (arg - 1), hi = step * (arg + 1);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo), d2 = lo + inv_phi * (hi - lo);
    auto f = [&](double t_) { return std::abs(eval(tx, std::polar(1.0, t_))); };
    double fc = f(c), fd = f(d2);
    for (int i = 0; i < 50; ++i) {
      if (fc > fd) {
        hi = d2; d2 = c; fd = fc; c = hi - inv_phi * (hi - lo); fc = f(c);
      } else {
        lo = c; c = d2; fc = fd; d2 = lo + inv_phi * (hi - lo); fd = f(d2);
      }
    }
    const double mid = 0.5 * (lo + hi);
    if (val) *val = std::max({bestv, fc, fd});
    return std::polar(1.0, mid);
  };
  for (auto& [v0, x] : top) {
    double v = 0.0;
    Cplx zstar = arg_peak(t.apply(x), &v);
    for (int it = 0; it < 100; ++it) {
      CVec xn = norming_vector(Functional{t.domain, t.row_functional(zstar)});
      double vn = 0.0;
      Cplx zn = arg_peak(t.apply(xn), &vn);
      if (vn <= v + 1e-14) break;
      x = std::move(xn);
      v = vn;
      zstar = zn;
    }
    if (v > rep.best_value) {
      rep.best_value = v;
      rep.best_x = x;
    }
  }
  rep.gap = rep.op_norm - rep.best_value;
  rep.attained = std::abs(rep.gap) <= tol;
  return rep;
}

EquicontinuityTable equicontinuity_report(const OperatorIntoDisc& t,
                                          std::span<const double> thetas,
                                          std::span<const double> epss) {
  EquicontinuityTable tab;
  tab.thetas.assign(thetas.begin(), thetas.end());
  tab.epss.assign(epss.begin(), epss.end());
  for (double th : thetas) {
    std::vector<double> row;
    for (double e : epss) {
      try {
        row.push_back(equicontinuity_delta2(t, th, e).delta2);
      } catch (const Error&) {
        row.push_back(-1.0);  // unavailable
      }
    }
    tab.rows.push_back(std::move(row));
  }
  return tab;
}

std::string EquicontinuityTable::csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "theta0";
  for (double e : epss) os << ",eps=" << e;
  os << '\n';
  for (size_t i = 0; i < thetas.size(); ++i) {
    os << thetas[i];
    for (double v : rows[i]) {
      if (v < 0) {
        os << ",unavailable";
      } else {
        os << ',' << v;
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace bpb::zoo
