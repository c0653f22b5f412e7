#pragma once

#include "bk/curve.hpp"
#include "bk/vec4.hpp"

namespace bk {

inline constexpr double kFrameTol = 1e-7;
inline constexpr double kKappaTol = 1e-9;

/// Moving frame {gamma, t, n, e} of a unit-speed spacelike curve on the unit
/// pseudo-sphere, with the geodesic curvature and torsion. n is the unit
/// vector along t' + gamma; e completes the frame via the triple wedge and
/// is unit up to rounding (the stored value is normalized, the defect is
/// reported). delta = -sign<n,n>. Exactly one of n, e is timelike.
struct SpacelikeApparatus {
  Vec4 gamma, t, n, e;
  int delta = -1;
  double kappa_g = 0.0;
  double tau_g = 0.0;
  int n_sign = +1, e_sign = -1;
  double wedge_norm_defect = 0.0;  // | ||gamma^t^n|| - 1 |
};

/// Builds the apparatus from an order >= 3 jet. Throws:
///  - domain_violation / standing_assumption / frame_degeneracy per the
///    module preconditions (off the pseudo-sphere, <t',t'> = 1, kappa_g = 0).
SpacelikeApparatus spacelike_apparatus(const Jet& j, double frame_tol = kFrameTol,
                                       double kappa_tol = kKappaTol);

/// Euclidean norms of the three frame-equation residuals
///   r1 = |t' + gamma - kappa_g n|
///   r2 = |n' - kappa_g delta t - tau_g e|
///   r3 = |e' - tau_g n|
/// with n', e' from exact derivative chains of the construction.
struct FrenetResiduals {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
};

FrenetResiduals frenet_residuals(const Jet& j, double frame_tol = kFrameTol,
                                 double kappa_tol = kKappaTol);

/// Max deviation of the 4x4 pseudo-Gram matrix of (gamma,t,n,e) from
/// diag(1,1,n_sign,e_sign).
double frame_gram_residual(const SpacelikeApparatus& a);

/// tau_g by the alternative route <g''', wedge3(gamma, g', g'')> (the
/// library route uses the Leibniz determinant); used for cross-checks.
double tau_g_wedge_route(const Jet& j, double frame_tol = kFrameTol,
                         double kappa_tol = kKappaTol);

}  // namespace bk
