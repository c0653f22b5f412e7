#include "bk/spacelike_frame.hpp"

#include <cmath>

namespace bk {

namespace {

void check_preconditions(const Jet& j, double frame_tol) {
  if (j.order < 3)
    throw error(errc::bad_config, "spacelike apparatus needs an order-3 jet");
  if (!on_de_sitter(j[0], frame_tol))
    throw error(errc::surface_mismatch,
                "curve point is not on the unit pseudo-sphere: <g,g> = " +
                    format_double(minkowski_dot(j[0], j[0])));
  const double speed = minkowski_dot(j[1], j[1]);
  if (std::fabs(speed - 1.0) > frame_tol)
    throw error(errc::causal_mismatch,
                "curve is not unit-speed spacelike: <g',g'> = " +
                    format_double(speed));
}

}  // namespace

SpacelikeApparatus spacelike_apparatus(const Jet& j, double frame_tol,
                                       double kappa_tol) {
  check_preconditions(j, frame_tol);
  SpacelikeApparatus a;
  a.gamma = j[0];
  a.t = j[1];

  const Vec4 q = j[2] + j[0];  // t' + gamma
  a.kappa_g = pseudo_norm(q);
  if (a.kappa_g <= kappa_tol)
    throw error(errc::frame_degeneracy,
                "geodesic degeneracy: frame undefined (kappa_g = " +
                    format_double(a.kappa_g) + ")");
  const double tprime_sq = minkowski_dot(j[2], j[2]);
  if (std::fabs(tprime_sq - 1.0) <= frame_tol)
    throw error(errc::standing_assumption,
                "standing assumption violated: <t',t'> = " +
                    format_double(tprime_sq));

  a.n = q / a.kappa_g;
  const double nn = minkowski_dot(a.n, a.n);
  a.n_sign = nn > 0.0 ? +1 : -1;
  a.delta = -a.n_sign;

  const Vec4 e_w = wedge3(a.gamma, a.t, a.n);
  const double e_norm = pseudo_norm(e_w);
  a.wedge_norm_defect = std::fabs(e_norm - 1.0);
  if (a.wedge_norm_defect > 1e-8 + frame_tol)
    throw error(errc::frame_degeneracy,
                "frame completion is not unit: ||gamma^t^n|| = " +
                    format_double(e_norm));
  a.e = e_w / e_norm;
  a.e_sign = minkowski_dot(a.e, a.e) > 0.0 ? +1 : -1;

  // The sign in front of the determinant is fixed by the frame equations:
  // expanding g''' in the frame gives det(g,g',g'',g''') =
  // kappa_g^2 * tau_g * det(g,t,n,e) with det(g,t,n,e) = -<e,e> = n_sign.
  a.tau_g = (a.n_sign / (a.kappa_g * a.kappa_g)) * det4(j[0], j[1], j[2], j[3]);
  return a;
}

FrenetResiduals frenet_residuals(const Jet& j, double frame_tol,
                                 double kappa_tol) {
  const SpacelikeApparatus a = spacelike_apparatus(j, frame_tol, kappa_tol);

  const Vec4 q = j[2] + j[0];
  const Vec4 qprime = j[3] + j[1];
  // kappa_g = sqrt(n_sign * <q,q>), so kappa_g' = n_sign <q,q'> / kappa_g.
  const double kappa_prime = a.n_sign * minkowski_dot(q, qprime) / a.kappa_g;
  const Vec4 nprime =
      qprime / a.kappa_g - (kappa_prime / (a.kappa_g * a.kappa_g)) * q;
  // e = gamma ^ t ^ n is trilinear; the normalization factor is 1 up to
  // rounding for an exact frame, so its derivative is dropped.
  const Vec4 eprime = wedge3(j[1], a.t, a.n) + wedge3(a.gamma, j[2], a.n) +
                      wedge3(a.gamma, a.t, nprime);

  FrenetResiduals r;
  r.r1 = euclid_norm(q - a.kappa_g * a.n);
  r.r2 = euclid_norm(nprime - (a.kappa_g * a.delta) * a.t - a.tau_g * a.e);
  r.r3 = euclid_norm(eprime - a.tau_g * a.n);
  return r;
}

double frame_gram_residual(const SpacelikeApparatus& a) {
  const Vec4 f[4] = {a.gamma, a.t, a.n, a.e};
  const double expect[4] = {1.0, 1.0, static_cast<double>(a.n_sign),
                            static_cast<double>(a.e_sign)};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = i; k < 4; ++k) {
      const double g = minkowski_dot(f[i], f[k]);
      const double want = i == k ? expect[i] : 0.0;
      worst = std::max(worst, std::fabs(g - want));
    }
  return worst;
}

double tau_g_wedge_route(const Jet& j, double frame_tol, double kappa_tol) {
  const SpacelikeApparatus a = spacelike_apparatus(j, frame_tol, kappa_tol);
  // <g''', wedge3(g, g', g'')> = det(g''', g, g', g''), an odd permutation
  // of the determinant route's row order, hence the sign.
  return (a.n_sign / (a.kappa_g * a.kappa_g)) *
         -minkowski_dot(j[3], wedge3(j[0], j[1], j[2]));
}

}  // namespace bk
