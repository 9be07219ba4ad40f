#pragma once

#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpb {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Error with the name of the pipeline step (or precondition) that failed.
class Error : public std::runtime_error {
 public:
  Error(std::string step, const std::string& what)
      : std::runtime_error("[" + step + "] " + what), step_(std::move(step)) {}
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

inline Cplx unit_circle_point(int j, int m) {
  return std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(m));
}

inline bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

inline int next_power_of_two(int m) {
  int p = 1;
  while (p < m) p <<= 1;
  return p;
}

inline double sqr(double x) { return x * x; }

/// Maximize a scalar function on [a, b] by golden-section search.
template <typename F>
double golden_max(F&& f, double a, double b, int iters = 60) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iters; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

/// Single DFT coefficient (1/M) * sum_j samples[j] e^{-2*pi*i*j*k/M}.
/// Direct summation; every DFT in this project is small enough that an FFT
/// library would be overkill.
inline Cplx dft_coefficient(std::span<const Cplx> samples, int k) {
  const int m = static_cast<int>(samples.size());
  Cplx acc = 0.0;
  for (int j = 0; j < m; ++j) {
    acc += samples[j] * std::polar(1.0, -kTwoPi * static_cast<double>(k) * j / m);
  }
  return acc / static_cast<double>(m);
}

/// Deterministic RNG helpers for tests and probes.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(gen);
  }
  double gauss() {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(gen);
  }
  Cplx cgauss() { return Cplx(gauss(), gauss()); }

  /// Uniform point in the closed unit disc.
  Cplx in_disc() {
    double r = std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, kTwoPi));
  }
  Cplx on_circle() { return std::polar(1.0, uniform(0.0, kTwoPi)); }

  CVec cgauss_vec(int n) {
    CVec v(n);
    for (auto& x : v) x = cgauss();
    return v;
  }
};

}  // namespace bpb
