#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bk/support.hpp"

namespace bk {

/// Vector of R^4_1 with the pseudo scalar product
/// <x,y> = -x1*y1 + x2*y2 + x3*y3 + x4*y4.
struct Vec4 {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0, x4 = 0.0;

  double& operator[](int i) { return (&x1)[i]; }
  double operator[](int i) const { return (&x1)[i]; }

  friend Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3, a.x4 + b.x4};
  }
  friend Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3, a.x4 - b.x4};
  }
  friend Vec4 operator-(const Vec4& a) { return {-a.x1, -a.x2, -a.x3, -a.x4}; }
  friend Vec4 operator*(double s, const Vec4& a) {
    return {s * a.x1, s * a.x2, s * a.x3, s * a.x4};
  }
  friend Vec4 operator*(const Vec4& a, double s) { return s * a; }
  friend Vec4 operator/(const Vec4& a, double s) { return (1.0 / s) * a; }
  Vec4& operator+=(const Vec4& b) { return *this = *this + b; }
  Vec4& operator-=(const Vec4& b) { return *this = *this - b; }

  bool finite() const {
    return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3) &&
           std::isfinite(x4);
  }
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

inline const char* to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Lightlike: return "lightlike";
  }
  return "unknown";
}

inline double minkowski_dot(const Vec4& x, const Vec4& y) {
  return -x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3 + x.x4 * y.x4;
}

inline double euclid_norm_sq(const Vec4& x) {
  return x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3 + x.x4 * x.x4;
}

inline double euclid_norm(const Vec4& x) { return std::sqrt(euclid_norm_sq(x)); }

/// ||x|| = sqrt(|<x,x>|). Zero exactly for lightlike or zero vectors.
inline double pseudo_norm(const Vec4& x) {
  return std::sqrt(std::fabs(minkowski_dot(x, x)));
}

inline constexpr double kCausalTol = 1e-9;

/// Classifies a nonzero vector. The tolerance is applied to <x,x> with a
/// magnitude floor of 1, so near-unit vectors get the plain tolerance and
/// large vectors are judged relative to their size.
inline CausalCharacter causal_character(const Vec4& x, double tol = kCausalTol) {
  if (!x.finite())
    throw error(errc::degenerate_input, "causal_character: non-finite input");
  const double e2 = euclid_norm_sq(x);
  if (e2 == 0.0)
    throw error(errc::degenerate_input,
                "causal_character: zero vector has no causal character");
  const double q = minkowski_dot(x, x);
  const double scale = std::max(1.0, e2);
  if (std::fabs(q) <= tol * scale) return CausalCharacter::Lightlike;
  return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

/// HP(v,c) = { x : <x,v> = c }.
struct Hyperplane {
  Vec4 pseudo_normal;
  double offset = 0.0;
};

/// A hyperplane is spacelike/timelike/lightlike when its pseudo normal is
/// timelike/spacelike/lightlike respectively.
inline CausalCharacter hyperplane_classify(const Hyperplane& h,
                                           double tol = kCausalTol) {
  switch (causal_character(h.pseudo_normal, tol)) {
    case CausalCharacter::Timelike: return CausalCharacter::Spacelike;
    case CausalCharacter::Spacelike: return CausalCharacter::Timelike;
    case CausalCharacter::Lightlike: return CausalCharacter::Lightlike;
  }
  return CausalCharacter::Lightlike;
}

/// Membership in the unit pseudo-sphere { x : <x,x> = 1 }.
inline bool on_de_sitter(const Vec4& x, double tol = kCausalTol) {
  return std::fabs(minkowski_dot(x, x) - 1.0) <= tol;
}

namespace detail {
// 3x3 minor of the rows (x,y,z) with column `drop` removed.
inline double minor3(const Vec4& x, const Vec4& y, const Vec4& z, int drop) {
  double m[3][3];
  int c = 0;
  for (int j = 0; j < 4; ++j) {
    if (j == drop) continue;
    m[0][c] = x[j];
    m[1][c] = y[j];
    m[2][c] = z[j];
    ++c;
  }
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}
}  // namespace detail

namespace detail {
inline int lex_compare(const Vec4& a, const Vec4& b) {
  for (int i = 0; i < 4; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return +1;
  }
  return 0;
}
}  // namespace detail

/// Triple wedge product: the formal determinant with first row
/// (-e1, e2, e3, e4) over the rows x, y, z, expanded by explicit 3x3
/// cofactors. Satisfies <a, wedge3(x,y,z)> = det(a,x,y,z) for every a.
/// The arguments are brought into a canonical order first and the
/// permutation sign applied afterwards, which makes the alternating
/// property bit-exact: swapping two arguments negates every component
/// with no rounding difference, and a repeated argument yields exact zero.
inline Vec4 wedge3(const Vec4& x, const Vec4& y, const Vec4& z) {
  const Vec4* r[3] = {&x, &y, &z};
  double sign = 1.0;
  auto order = [&](int i, int j) {
    const int c = detail::lex_compare(*r[i], *r[j]);
    if (c > 0) {
      std::swap(r[i], r[j]);
      sign = -sign;
    }
    return c == 0;
  };
  // Insertion sort on three rows; an equal pair means a repeated row.
  if (order(0, 1) || order(1, 2) || order(0, 1)) return Vec4{};
  const Vec4 &a = *r[0], &b = *r[1], &c = *r[2];
  return {sign * -detail::minor3(a, b, c, 0), sign * -detail::minor3(a, b, c, 1),
          sign * detail::minor3(a, b, c, 2), sign * -detail::minor3(a, b, c, 3)};
}

/// det(a,b,c,d) with rows in the given order, evaluated by the Leibniz sum.
/// Deliberately a separate code path from wedge3 so the two can be checked
/// against each other.
inline double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  const Vec4* r[4] = {&a, &b, &c, &d};
  static constexpr int perm[24][4] = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
      {0, 3, 2, 1}, {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0},
      {1, 3, 0, 2}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3},
      {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0}, {3, 0, 1, 2}, {3, 0, 2, 1},
      {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign[24] = {+1, -1, -1, +1, +1, -1, -1, +1, +1, -1, -1, +1,
                                   +1, -1, -1, +1, +1, -1, -1, +1, +1, -1, -1, +1};
  double sum = 0.0;
  for (int p = 0; p < 24; ++p) {
    double term = sign[p];
    for (int i = 0; i < 4; ++i) term *= (*r[i])[perm[p][i]];
    sum += term;
  }
  return sum;
}

struct SignedFrame {
  std::vector<Vec4> frame;  // pairwise pseudo-orthogonal, |<f_i,f_i>| = 1
  std::vector<int> signs;   // sign of <f_i,f_i>
};

/// Gram-Schmidt under the pseudo scalar product. Normalizes by the pseudo
/// norm and keeps the causal sign separate, so timelike directions stay
/// real-valued. Two projection sweeps per vector for orthogonality at
/// rounding level.
inline SignedFrame signed_gram_schmidt(std::span<const Vec4> vs,
                                       double tol = 1e-10) {
  SignedFrame out;
  out.frame.reserve(vs.size());
  out.signs.reserve(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Vec4 r = vs[i];
    const double in_scale = std::max(1.0, euclid_norm(vs[i]));
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t j = 0; j < out.frame.size(); ++j) {
        const double coef = out.signs[j] * minkowski_dot(r, out.frame[j]);
        r -= coef * out.frame[j];
      }
    }
    const double e = euclid_norm(r);
    if (e <= 1e-13 * in_scale)
      throw error(errc::rank_deficient,
                  "signed_gram_schmidt: input vector " + std::to_string(i) +
                      " is linearly dependent on its predecessors");
    const double q = minkowski_dot(r, r);
    if (std::fabs(q) <= tol * e * e)
      throw error(errc::null_degeneracy,
                  "signed_gram_schmidt: null degeneracy at index " +
                      std::to_string(i) +
                      " (orthogonalized vector is lightlike)");
    out.signs.push_back(q > 0.0 ? +1 : -1);
    out.frame.push_back(r / std::sqrt(std::fabs(q)));
  }
  return out;
}

/// Row-major 4x4 matrix, just enough for Lorentz transformations and the
/// small least-squares solves.
struct Mat4 {
  std::array<std::array<double, 4>, 4> m{};

  static Mat4 identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
    return r;
  }
  Vec4 apply(const Vec4& v) const {
    Vec4 out;
    for (int i = 0; i < 4; ++i) {
      out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
    }
    return out;
  }
  friend Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }
};

/// Solves A x = b by partial-pivot LU. Returns nothing when a pivot falls
/// below `pivot_tol` times the largest row entry (singular system).
inline std::optional<Vec4> solve4(Mat4 A, Vec4 b, double pivot_tol = 1e-12) {
  double scale = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) scale = std::max(scale, std::fabs(A.m[i][j]));
  if (scale == 0.0) return std::nullopt;
  int index[4] = {0, 1, 2, 3};
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int rrow = col + 1; rrow < 4; ++rrow)
      if (std::fabs(A.m[index[rrow]][col]) > std::fabs(A.m[index[piv]][col]))
        piv = rrow;
    std::swap(index[col], index[piv]);
    const double pivot = A.m[index[col]][col];
    if (std::fabs(pivot) <= pivot_tol * scale) return std::nullopt;
    for (int rrow = col + 1; rrow < 4; ++rrow) {
      const double f = A.m[index[rrow]][col] / pivot;
      A.m[index[rrow]][col] = 0.0;
      for (int j = col + 1; j < 4; ++j) A.m[index[rrow]][j] -= f * A.m[index[col]][j];
      b[index[rrow]] -= f * b[index[col]];
    }
  }
  Vec4 x;
  for (int i = 3; i >= 0; --i) {
    double s = b[index[i]];
    for (int j = i + 1; j < 4; ++j) s -= A.m[index[i]][j] * x[j];
    x[i] = s / A.m[index[i]][i];
  }
  return x;
}

}  // namespace bk
