#pragma once

#include <cmath>

namespace bk {

/// Truncated Taylor value: a scalar with its first three parameter
/// derivatives. Enough to push speed functions like <g',g'>^(1/2) or
/// <g'',g''>^(1/4) through the chain rule to fourth order.
struct ScalarJet3 {
  double f = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;

  friend ScalarJet3 operator+(const ScalarJet3& a, const ScalarJet3& b) {
    return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
  }
  friend ScalarJet3 operator-(const ScalarJet3& a, const ScalarJet3& b) {
    return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
  }
  friend ScalarJet3 operator*(double s, const ScalarJet3& a) {
    return {s * a.f, s * a.d1, s * a.d2, s * a.d3};
  }
  // Leibniz to third order.
  friend ScalarJet3 operator*(const ScalarJet3& a, const ScalarJet3& b) {
    return {a.f * b.f,
            a.d1 * b.f + a.f * b.d1,
            a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
            a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3};
  }
};

/// p^alpha with derivatives, p.f > 0 required.
inline ScalarJet3 pow_jet(const ScalarJet3& p, double alpha) {
  const double pa = std::pow(p.f, alpha);
  const double pa1 = alpha * std::pow(p.f, alpha - 1.0);
  const double pa2 = alpha * (alpha - 1.0) * std::pow(p.f, alpha - 2.0);
  const double pa3 = alpha * (alpha - 1.0) * (alpha - 2.0) * std::pow(p.f, alpha - 3.0);
  ScalarJet3 out;
  out.f = pa;
  out.d1 = pa1 * p.d1;
  out.d2 = pa2 * p.d1 * p.d1 + pa1 * p.d2;
  out.d3 = pa3 * p.d1 * p.d1 * p.d1 + 3.0 * pa2 * p.d1 * p.d2 + pa1 * p.d3;
  return out;
}

}  // namespace bk
