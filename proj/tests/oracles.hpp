#pragma once

// Independent oracles and generators shared by the test suites. Everything
// here must stay independent of the library code paths it is used to check:
// the determinant oracle is a recursive cofactor expansion (the library uses
// a Leibniz sum and a first-row wedge), derivatives come from central
// differences, and reference curvature values from classical closed forms.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "bk/curve.hpp"
#include "bk/expr.hpp"
#include "bk/vec4.hpp"

namespace oracles {

// Recursive cofactor determinant of an n x n matrix (rows as vectors).
inline double det_recursive(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  double sum = 0.0;
  double sign = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<double>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t c2 = 0; c2 < n; ++c2)
        if (c2 != col) row.push_back(m[r][c2]);
      sub.push_back(std::move(row));
    }
    sum += sign * m[0][col] * det_recursive(sub);
    sign = -sign;
  }
  return sum;
}

inline double det4_oracle(const bk::Vec4& a, const bk::Vec4& b, const bk::Vec4& c,
                          const bk::Vec4& d) {
  return det_recursive({{a.x1, a.x2, a.x3, a.x4},
                        {b.x1, b.x2, b.x3, b.x4},
                        {c.x1, c.x2, c.x3, c.x4},
                        {d.x1, d.x2, d.x3, d.x4}});
}

// Central finite differences, step h, on a scalar function.
inline double central_diff(const std::function<double(double)>& f, double t,
                           double h = 1e-5) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

inline bk::Vec4 random_vec(std::mt19937_64& rng, double lo = -1.0,
                           double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  return {d(rng), d(rng), d(rng), d(rng)};
}

// Proper (det = +1) Lorentz transformation from signed Gram-Schmidt of a
// random frame: columns ordered timelike-first, then a spacelike column is
// negated when needed to fix the determinant.
inline bk::Mat4 random_proper_lorentz(std::mt19937_64& rng) {
  for (;;) {
    std::vector<bk::Vec4> vs = {random_vec(rng), random_vec(rng),
                                random_vec(rng), random_vec(rng)};
    bk::SignedFrame sf;
    try {
      sf = bk::signed_gram_schmidt(vs);
    } catch (const bk::error&) {
      continue;
    }
    int timelike = -1;
    for (int i = 0; i < 4; ++i)
      if (sf.signs[static_cast<std::size_t>(i)] < 0) timelike = i;
    if (timelike < 0) continue;
    std::swap(sf.frame[0], sf.frame[static_cast<std::size_t>(timelike)]);
    bk::Mat4 L;
    for (int col = 0; col < 4; ++col)
      for (int row = 0; row < 4; ++row)
        L.m[row][col] = sf.frame[static_cast<std::size_t>(col)][row];
    const bk::Vec4 c0{L.m[0][0], L.m[1][0], L.m[2][0], L.m[3][0]};
    const bk::Vec4 c1{L.m[0][1], L.m[1][1], L.m[2][1], L.m[3][1]};
    const bk::Vec4 c2{L.m[0][2], L.m[1][2], L.m[2][2], L.m[3][2]};
    const bk::Vec4 c3{L.m[0][3], L.m[1][3], L.m[2][3], L.m[3][3]};
    if (bk::det4(c0, c1, c2, c3) < 0.0)
      for (int row = 0; row < 4; ++row) L.m[row][3] = -L.m[row][3];
    return L;
  }
}

inline bk::Jet transform_jet(const bk::Mat4& L, const bk::Jet& j) {
  bk::Jet out;
  out.order = j.order;
  for (int k = 0; k <= j.order; ++k)
    out.d[static_cast<std::size_t>(k)] = L.apply(j.d[static_cast<std::size_t>(k)]);
  return out;
}

// --- Curve families -------------------------------------------------------

// Unit-speed spacelike curve on the unit pseudo-sphere:
// (a0 sinh(c s), a0 cosh(c s), b0 cos(d s), b0 sin(d s)) with a0^2+b0^2 = 1
// and b0^2 d^2 - a0^2 c^2 = 1. Constant kappa_g, tau_g.
inline bk::CurveDef spacelike_family(double a0, double b0, double c, double lo,
                                     double hi) {
  const double d = std::sqrt((1.0 + a0 * a0 * c * c) / (b0 * b0));
  std::map<std::string, double> k = {{"a0", a0}, {"b0", b0}, {"c", c}, {"d", d}};
  return bk::CurveDef(
      "spacelike-family",
      {bk::parse_expr("a0*sinh(c*t)", &k), bk::parse_expr("a0*cosh(c*t)", &k),
       bk::parse_expr("b0*cos(d*t)", &k), bk::parse_expr("b0*sin(d*t)", &k)},
      lo, hi, bk::CausalCharacter::Spacelike, true);
}

// Null curve on the unit pseudo-sphere with a0 c = b0 d. scale = 1 gives
// the pseudo-arc parametrization (<g'',g''> = 1); general scale gives
// <g'',g''> = scale^4.
inline bk::CurveDef null_family(double c_base, double scale, double lo,
                                double hi) {
  const double d_base = 1.0 / c_base;
  const double q = 1.0 / std::sqrt(c_base * c_base + d_base * d_base);
  const double a0 = q / c_base, b0 = q * c_base;
  const double c = c_base * scale, d = d_base * scale;
  std::map<std::string, double> k = {{"a0", a0}, {"b0", b0}, {"c", c}, {"d", d}};
  return bk::CurveDef(
      "null-family",
      {bk::parse_expr("a0*sinh(c*t)", &k), bk::parse_expr("a0*cosh(c*t)", &k),
       bk::parse_expr("b0*cos(d*t)", &k), bk::parse_expr("b0*sin(d*t)", &k)},
      lo, hi, bk::CausalCharacter::Lightlike, true);
}

// Closed-form invariants of the families (derived by hand; the derivations
// are in the test comments where they are used).
inline double family_kappa_g(double a0, double b0, double c) {
  const double d2 = (1.0 + a0 * a0 * c * c) / (b0 * b0);
  const double u = a0 * a0 * (c * c + 1.0) * (c * c + 1.0) +
                   b0 * b0 * (1.0 - d2) * (1.0 - d2);
  return std::sqrt(u);
}

inline double null_family_k1(double c_base) {
  const double d_base = 1.0 / c_base;
  return 0.5 * (d_base * d_base - c_base * c_base);
}

// Null Cartan curve that lies on no pseudo-sphere: a drifting circular null
// helix (t, r cos(w t), r sin(w t), h t) with r^2 w^2 + h^2 = 1 (null) and
// r^2 w^4 = 1 (pseudo-arc). k2 = 0 and no fixed point exists.
inline bk::CurveDef drifted_null_helix(double lo, double hi) {
  const double w = std::sqrt(2.0);
  const double r = 1.0 / (w * w);
  const double h = std::sqrt(1.0 - r * r * w * w);
  std::map<std::string, double> k = {{"r", r}, {"w", w}, {"h", h}};
  return bk::CurveDef("drifted-null-helix",
                      {bk::parse_expr("t", &k), bk::parse_expr("r*cos(w*t)", &k),
                       bk::parse_expr("r*sin(w*t)", &k),
                       bk::parse_expr("h*t", &k)},
                      lo, hi, bk::CausalCharacter::Lightlike, false);
}

// Spacelike circle on the pseudo-sphere with kappa_g = const, tau_g = 0:
// (0, r cos(s/r), r sin(s/r), h), r^2 + h^2 = 1.
inline bk::CurveDef small_circle(double r, double lo, double hi) {
  const double h = std::sqrt(1.0 - r * r);
  std::map<std::string, double> k = {{"r", r}, {"h", h}, {"w", 1.0 / r}};
  return bk::CurveDef("small-circle",
                      {bk::parse_expr("0", &k), bk::parse_expr("r*cos(w*t)", &k),
                       bk::parse_expr("r*sin(w*t)", &k), bk::parse_expr("h", &k)},
                      lo, hi, bk::CausalCharacter::Spacelike, true);
}

}  // namespace oracles
