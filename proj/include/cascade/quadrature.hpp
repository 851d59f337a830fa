#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace cascade::quad {

// 10-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr std::array<double, 10> kGLNodes = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
inline constexpr std::array<double, 10> kGLWeights = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

template <class Fn>
double gauss_legendre(Fn&& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t k = 0; k < kGLNodes.size(); ++k) s += kGLWeights[k] * f(mid + half * kGLNodes[k]);
  return s * half;
}

/// Composite Gauss-Legendre with `panels` equal panels.
template <class Fn>
double composite(Fn&& f, double a, double b, std::size_t panels) {
  double s = 0.0;
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) s += gauss_legendre(f, a + h * i, a + h * (i + 1));
  return s;
}

/// Composite Gauss-Legendre on geometrically graded panels; 0 < a < b.
/// Suited to integrands with power-law behaviour over several decades.
template <class Fn>
double graded(Fn&& f, double a, double b, std::size_t panels) {
  const double ratio = std::pow(b / a, 1.0 / static_cast<double>(panels));
  double s = 0.0, lo = a;
  for (std::size_t i = 0; i < panels; ++i) {
    const double hi = (i + 1 == panels) ? b : lo * ratio;
    s += gauss_legendre(f, lo, hi);
    lo = hi;
  }
  return s;
}

/// Exact  \int_a^b x^p dx  for 0 < a <= b, stable near p = -1.
inline double power_integral(double p, double a, double b) {
  const double q = p + 1.0;
  const double L = std::log(b / a);
  if (q == 0.0) return L;
  // a^q (exp(qL) - 1) / q
  return std::pow(a, q) * std::expm1(q * L) / q;
}

/// Exact \int_a^inf x^p dx for p < -1.
inline double power_tail(double p, double a) { return -std::pow(a, p + 1.0) / (p + 1.0); }

}  // namespace cascade::quad
