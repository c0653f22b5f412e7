#include "bk/cartan_frame.hpp"

#include <cmath>

#include "bk/scalar_jet.hpp"

namespace bk {

namespace {

void check_preconditions(const Jet& j, double tol) {
  if (j.order < 4)
    throw error(errc::bad_config, "Cartan apparatus needs an order-4 jet");
  const double speed = minkowski_dot(j[1], j[1]);
  if (std::fabs(speed) > tol * std::max(1.0, euclid_norm_sq(j[1])))
    throw error(errc::causal_mismatch,
                "curve is not null: <g',g'> = " + format_double(speed));
  const double acc = minkowski_dot(j[2], j[2]);
  if (std::fabs(acc - 1.0) > tol)
    throw error(errc::pseudo_arc_violation,
                "parameter is not the pseudo-arc: <g'',g''> = " +
                    format_double(acc));
  const Vec4 indep = wedge3(j[1], j[2], j[3]);
  const double scale = std::max(
      1.0, euclid_norm(j[1]) * euclid_norm(j[2]) * euclid_norm(j[3]));
  if (euclid_norm(indep) <= tol * scale)
    throw error(errc::cartan_dependence,
                "Cartan independence failure: {g', g'', g'''} is linearly "
                "dependent");
}

// N' from the construction N = -g''' - k1 L, with k1' = <g''', g''''>.
Vec4 n_prime(const Jet& j, double k1) {
  const double k1_prime = minkowski_dot(j[3], j[4]);
  return -j[4] - k1_prime * j[1] - k1 * j[2];
}

ScalarJet3 quartic_speed(const Jet& j) {
  // p = <g'',g''>, carried to second derivative; a = p^(1/4).
  ScalarJet3 p{minkowski_dot(j[2], j[2]), 2.0 * minkowski_dot(j[2], j[3]),
               2.0 * (minkowski_dot(j[3], j[3]) + minkowski_dot(j[2], j[4])),
               0.0};
  if (p.f <= 0.0)
    throw error(errc::pseudo_arc_violation,
                "null acceleration: <g'',g''> = " + format_double(p.f));
  return pow_jet(p, 0.25);
}

}  // namespace

CartanApparatus cartan_apparatus(const Jet& j, double tol) {
  check_preconditions(j, tol);
  CartanApparatus a;
  a.L = j[1];
  a.W1 = j[2];
  a.k1 = 0.5 * minkowski_dot(j[3], j[3]);
  a.N = -j[3] - a.k1 * a.L;

  const Vec4 w = wedge3(a.L, a.N, a.W1);
  const double wn = pseudo_norm(w);
  a.wedge_norm_defect = std::fabs(wn - 1.0);
  if (wn <= tol)
    throw error(errc::cartan_dependence,
                "frame completion degenerated: ||L^N^W1|| = " +
                    format_double(wn));
  a.W2 = w / wn;
  a.k2 = minkowski_dot(n_prime(j, a.k1), a.W2);

  // Gram table: <L,N> = 1, <W1,W1> = <W2,W2> = 1, everything else 0.
  const Vec4 f[4] = {a.L, a.N, a.W1, a.W2};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = i; k < 4; ++k) {
      const double g = minkowski_dot(f[i], f[k]);
      double want = 0.0;
      if ((i == 0 && k == 1)) want = 1.0;
      if (i == k && i >= 2) want = 1.0;
      worst = std::max(worst, std::fabs(g - want));
    }
  a.gram_residual = worst;
  if (worst > 1e3 * tol)
    throw error(errc::frame_degeneracy,
                "Cartan frame Gram residual " + format_double(worst) +
                    " above tolerance");
  return a;
}

CartanResiduals cartan_residuals(const Jet& j, double tol) {
  const CartanApparatus a = cartan_apparatus(j, tol);
  const Vec4 Np = n_prime(j, a.k1);
  // W2 = L^N^W1 up to unit normalization; differentiate the wedge by
  // trilinearity (the normalization factor is constant 1 up to rounding).
  const Vec4 W2p = wedge3(j[2], a.N, a.W1) + wedge3(a.L, Np, a.W1) +
                   wedge3(a.L, a.N, j[3]);
  CartanResiduals r;
  r.r_L = euclid_norm(j[2] - a.W1);
  r.r_W1 = euclid_norm(j[3] + a.k1 * a.L + a.N);
  r.r_N = euclid_norm(Np - a.k1 * a.W1 - a.k2 * a.W2);
  r.r_W2 = euclid_norm(W2p + a.k2 * a.L);
  const double w2sq = minkowski_dot(a.W2, a.W2);
  r.position_in_frame =
      euclid_norm(j[0] - (minkowski_dot(j[0], a.W2) / w2sq) * a.W2);
  return r;
}

CartanCurvatures cartan_curvatures_closed_form(const Jet& j) {
  if (j.order < 4)
    throw error(errc::bad_config, "closed-form curvatures need an order-4 jet");
  const ScalarJet3 a = quartic_speed(j);
  const double a2 = a.f * a.f;
  CartanCurvatures out;
  out.k1 = (minkowski_dot(j[3], j[3]) + 2.0 * a.f * a.d2 - 4.0 * a.d1 * a.d1) /
           (2.0 * a2);
  const double det = minkowski_dot(j[1], wedge3(j[2], j[3], j[4]));
  out.k2 = -det / (a2 * a2);
  return out;
}

CartanCurvatures cartan_curvatures_closed_form_general(const Jet& j) {
  if (j.order < 4)
    throw error(errc::bad_config, "closed-form curvatures need an order-4 jet");
  const ScalarJet3 a = quartic_speed(j);
  const double a2 = a.f * a.f, a3 = a2 * a.f, a6 = a3 * a3;
  CartanCurvatures out;
  out.k1 = (minkowski_dot(j[3], j[3]) - 9.0 * a2 * a.d1 * a.d1 +
            2.0 * a3 * a.d2) /
           (2.0 * a6);
  const double det = minkowski_dot(j[1], wedge3(j[2], j[3], j[4]));
  out.k2 = -det / (a6 * a3 * a.f);
  return out;
}

SphereTestReport pseudo_spherical_test(const CurveView& c, int samples,
                                       double tol) {
  if (samples < 2)
    throw error(errc::bad_config, "pseudo_spherical_test needs >= 2 samples");
  SphereTestReport rep;
  rep.samples = samples;

  std::vector<double> k2(static_cast<std::size_t>(samples));
  std::vector<Jet> jets(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = c.lo + (c.hi - c.lo) * i / (samples - 1);
    jets[static_cast<std::size_t>(i)] = c.jets(t, 4);
    k2[static_cast<std::size_t>(i)] =
        cartan_apparatus(jets[static_cast<std::size_t>(i)]).k2;
  }
  double mean = 0.0;
  for (double v : k2) mean += v;
  mean /= samples;
  rep.k2_mean = mean;
  rep.k2_min_abs = std::fabs(k2[0]);
  for (double v : k2) {
    rep.k2_max_deviation = std::max(rep.k2_max_deviation, std::fabs(v - mean));
    rep.k2_min_abs = std::min(rep.k2_min_abs, std::fabs(v));
  }
  rep.k2_constant_nonzero =
      rep.k2_max_deviation <= tol && rep.k2_min_abs > tol;

  // Least squares for the fixed point: rows are the metric-lowered tangents,
  // right sides <g, g'>.
  Mat4 M{};
  Vec4 rhs{};
  for (const Jet& j : jets) {
    const Vec4 r{-j[1].x1, j[1].x2, j[1].x3, j[1].x4};
    const double b = minkowski_dot(j[0], j[1]);
    for (int p = 0; p < 4; ++p) {
      rhs[p] += b * r[p];
      for (int q = 0; q < 4; ++q) M.m[p][q] += r[p] * r[q];
    }
  }
  const auto A = solve4(M, rhs, 1e-10);
  if (!A) {
    rep.fit_indeterminate = true;
  } else {
    rep.fitted_point = *A;
    double worst = 0.0;
    for (const Jet& j : jets)
      worst = std::max(worst,
                       std::fabs(minkowski_dot(rep.fitted_point - j[0], j[1])));
    rep.fit_residual = worst;
    rep.fixed_point_ok = worst <= tol;
  }
  rep.verdict = rep.k2_constant_nonzero && rep.fixed_point_ok;
  return rep;
}

}  // namespace bk
