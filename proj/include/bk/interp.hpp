#pragma once

#include <span>
#include <vector>

#include "bk/curve.hpp"
#include "bk/vec4.hpp"

namespace bk {

/// Shape-preserving cubic interpolant (Fritsch-Carlson slopes). For strictly
/// monotone data the interpolant is strictly monotone, which is what the
/// tabulated parameter maps need for a safe inverse.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::size_t interval(double x) const;
  std::vector<double> x_, y_, m_;  // knots, values, knot slopes
};

/// Piecewise-cubic Hermite interpolant of a Vec4-valued function with
/// prescribed knot slopes. Reproduces samples and slopes exactly at knots.
class HermiteCurve {
 public:
  HermiteCurve() = default;
  HermiteCurve(std::vector<double> t, std::vector<Vec4> p, std::vector<Vec4> m);

  Vec4 value(double t) const;
  Vec4 derivative(double t) const;

 private:
  std::size_t interval(double t) const;
  std::vector<double> t_;
  std::vector<Vec4> p_, m_;
};

/// Taylor coefficients at x0 of the interpolating polynomial through
/// (xs, ys), returned as derivatives 0..order. Newton divided differences
/// followed by a Taylor shift.
std::vector<double> polynomial_derivatives(std::span<const double> xs,
                                           std::span<const double> ys,
                                           double x0, int order);

/// Jet of a sampled curve at u from a sliding window of `window` nearest
/// knots per component.
Jet window_jet(std::span<const double> params, std::span<const Vec4> positions,
               double u, int order, int window);

}  // namespace bk
