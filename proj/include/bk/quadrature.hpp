#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bk/support.hpp"

namespace bk {

// 5-point Gauss-Legendre nodes/weights on [-1, 1]; exact through degree 9.
inline constexpr std::array<double, 5> kGL5Nodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
    0.9061798459386640};
inline constexpr std::array<double, 5> kGL5Weights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

template <class F>
double gl5_panel(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) sum += kGL5Weights[i] * f(mid + half * kGL5Nodes[i]);
  return half * sum;
}

template <class F>
double composite_gl5(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i)
    sum += gl5_panel(f, a + i * h, a + (i + 1) * h);
  return sum;
}

/// Running integral of a T-valued integrand over `panels` equal panels.
/// out[i] = integral from a to a + i*h; T needs zero-init, += and double*.
template <class T, class F>
std::vector<T> cumulative_gl5(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  std::vector<T> out(static_cast<std::size_t>(panels) + 1);
  out[0] = T{};
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h, hi = a + (i + 1) * h;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    T panel{};
    for (int k = 0; k < 5; ++k)
      panel += (half * kGL5Weights[k]) * f(mid + half * kGL5Nodes[k]);
    out[static_cast<std::size_t>(i) + 1] = out[static_cast<std::size_t>(i)] + panel;
  }
  return out;
}

}  // namespace bk
