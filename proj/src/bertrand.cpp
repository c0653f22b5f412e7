#include "bk/bertrand.hpp"

#include <cmath>

#include "bk/quadrature.hpp"

namespace bk {

namespace {

void check_params(const BertrandParams& p) {
  if (!(std::isfinite(p.scale_a) && p.scale_a != 0.0))
    throw error(errc::bad_config, "construction constant a must be finite and nonzero");
  if (!(std::isfinite(p.theta) && std::sinh(p.theta) != 0.0))
    throw error(errc::bad_config,
                "construction constant theta must have sinh(theta) != 0");
  if (!p.c.finite())
    throw error(errc::bad_config, "offset vector c must be finite");
}

struct ConstancyStats {
  double mean = 0.0, rel_dev = 0.0;
};

ConstancyStats constancy(std::span<const double> vs) {
  ConstancyStats s;
  for (double v : vs) s.mean += v;
  s.mean /= static_cast<double>(vs.size());
  double dev = 0.0;
  for (double v : vs) dev = std::max(dev, std::fabs(v - s.mean));
  s.rel_dev = dev / std::max(1.0, std::fabs(s.mean));
  return s;
}

// Frame-coordinate derivative recursion: coefficients of g~^(k) in the
// moving frame, advanced by the frame's connection matrix.
using Coeffs = std::array<double, 4>;

Coeffs advance(const std::array<Coeffs, 4>& conn, const Coeffs& v) {
  Coeffs out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += conn[j][i] * v[j];
  return out;
}

Jet frame_jet(const std::array<Vec4, 4>& frame, const std::array<Coeffs, 4>& conn,
              const Coeffs& v1, const Vec4& position, int order) {
  Jet out;
  out.order = order;
  out.d[0] = position;
  Coeffs v = v1;
  for (int k = 1; k <= order; ++k) {
    Vec4 sum{};
    for (int i = 0; i < 4; ++i) sum += v[i] * frame[i];
    out.d[static_cast<std::size_t>(k)] = sum;
    if (k < order) v = advance(conn, v);
  }
  return out;
}

}  // namespace

BertrandConstruction construct_from_spacelike(const CurveView& src,
                                              const BertrandParams& p,
                                              int panels) {
  check_params(p);
  if (panels < 64)
    throw error(errc::bad_config, "construction needs at least 64 panels");
  const double lo = src.lo, hi = src.hi;
  const double m = 1.0 / std::tanh(p.theta);

  // Constancy of the source invariants, plus a consistent frame signature.
  const int nc = 4 * panels + 1;
  std::vector<double> kappas(nc), taus(nc);
  int e_sign = 0;
  for (int i = 0; i < nc; ++i) {
    const double s = lo + (hi - lo) * i / (nc - 1);
    const auto ap = spacelike_apparatus(src.jets(s, 3));
    kappas[static_cast<std::size_t>(i)] = ap.kappa_g;
    taus[static_cast<std::size_t>(i)] = ap.tau_g;
    if (i == 0)
      e_sign = ap.e_sign;
    else if (ap.e_sign != e_sign)
      throw error(errc::frame_degeneracy,
                  "frame signature flips along the source curve");
  }
  const auto ck = constancy(kappas), ct = constancy(taus);
  if (ck.rel_dev > 1e-6 || ct.rel_dev > 1e-6)
    throw error(errc::constancy_violation,
                "source curvatures are not constant: kappa_g dev " +
                    format_double(ck.rel_dev) + ", tau_g dev " +
                    format_double(ct.rel_dev));

  auto integrand = [src, a = p.scale_a, m](double s) {
    const auto ap = spacelike_apparatus(src.jets(s, 3));
    return a * (ap.gamma + m * ap.e);
  };
  auto knots = cumulative_gl5<Vec4>(integrand, lo, hi, panels);

  std::vector<double> s_knots(knots.size());
  std::vector<Vec4> positions(knots.size()), slopes(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    s_knots[i] = lo + (hi - lo) * static_cast<double>(i) / panels;
    positions[i] = knots[i] + p.c;
    slopes[i] = integrand(s_knots[i]);
  }
  auto hermite = std::make_shared<HermiteCurve>(s_knots, positions, slopes);
  auto pos_fn = [hermite](double s) { return hermite->value(s); };
  auto jet_fn = [src, hermite, a = p.scale_a, m](double s, int order) {
    const auto ap = spacelike_apparatus(src.jets(s, 3));
    const std::array<Vec4, 4> frame = {ap.gamma, ap.t, ap.n, ap.e};
    const double kd = ap.kappa_g * ap.delta;
    const std::array<Coeffs, 4> conn = {
        Coeffs{0, 1, 0, 0},                 // gamma' = t
        Coeffs{-1, 0, ap.kappa_g, 0},       // t' = -gamma + kappa_g n
        Coeffs{0, kd, 0, ap.tau_g},         // n' = kappa_g delta t + tau_g e
        Coeffs{0, 0, ap.tau_g, 0},          // e' = tau_g n
    };
    const Coeffs v1 = {a, 0, 0, a * m};
    return frame_jet(frame, conn, v1, hermite->value(s), order);
  };

  BertrandConstruction out;
  out.curve = NumericCurve::with_backends(std::move(s_knots), std::move(positions),
                                          std::move(slopes), std::move(pos_fn),
                                          std::move(jet_fn));
  out.source = BertrandSource::SpacelikeHelix;
  out.params = p;
  out.kappa_g = ck.mean;
  out.tau_g = ct.mean;
  out.e_sign = e_sign;
  out.predicted_speed_sq = p.scale_a * p.scale_a * (1.0 + m * m * e_sign);
  return out;
}

BertrandConstruction construct_from_null_helix(const CurveView& src,
                                               const BertrandParams& p,
                                               int panels) {
  check_params(p);
  if (panels < 64)
    throw error(errc::bad_config, "construction needs at least 64 panels");
  const double lo = src.lo, hi = src.hi;
  const double m = 1.0 / std::tanh(p.theta);

  const int nc = 4 * panels + 1;
  std::vector<double> k1s(nc), k2s(nc);
  for (int i = 0; i < nc; ++i) {
    const double t = lo + (hi - lo) * i / (nc - 1);
    const auto ap = cartan_apparatus(src.jets(t, 4));
    k1s[static_cast<std::size_t>(i)] = ap.k1;
    k2s[static_cast<std::size_t>(i)] = ap.k2;
  }
  const auto c1 = constancy(k1s), c2 = constancy(k2s);
  if (c1.rel_dev > 1e-6 || c2.rel_dev > 1e-6)
    throw error(errc::constancy_violation,
                "source Cartan curvatures are not constant: k1 dev " +
                    format_double(c1.rel_dev) + ", k2 dev " +
                    format_double(c2.rel_dev));

  auto integrand = [src, a = p.scale_a, m](double t) {
    const auto ap = cartan_apparatus(src.jets(t, 4));
    return a * (ap.L + m * ap.W2);
  };
  auto knots = cumulative_gl5<Vec4>(integrand, lo, hi, panels);

  std::vector<double> t_knots(knots.size());
  std::vector<Vec4> positions(knots.size()), slopes(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    t_knots[i] = lo + (hi - lo) * static_cast<double>(i) / panels;
    positions[i] = knots[i] + p.c;
    slopes[i] = integrand(t_knots[i]);
  }
  auto hermite = std::make_shared<HermiteCurve>(t_knots, positions, slopes);
  auto pos_fn = [hermite](double t) { return hermite->value(t); };
  auto jet_fn = [src, hermite, a = p.scale_a, m](double t, int order) {
    const auto ap = cartan_apparatus(src.jets(t, 4));
    const std::array<Vec4, 4> frame = {ap.L, ap.N, ap.W1, ap.W2};
    const std::array<Coeffs, 4> conn = {
        Coeffs{0, 0, 1, 0},                  // L' = W1
        Coeffs{0, 0, ap.k1, ap.k2},          // N' = k1 W1 + k2 W2
        Coeffs{-ap.k1, -1, 0, 0},            // W1' = -k1 L - N
        Coeffs{-ap.k2, 0, 0, 0},             // W2' = -k2 L
    };
    const Coeffs v1 = {a, 0, 0, a * m};
    return frame_jet(frame, conn, v1, hermite->value(t), order);
  };

  BertrandConstruction out;
  out.curve = NumericCurve::with_backends(std::move(t_knots), std::move(positions),
                                          std::move(slopes), std::move(pos_fn),
                                          std::move(jet_fn));
  out.source = BertrandSource::NullHelix;
  out.params = p;
  out.k1 = c1.mean;
  out.k2 = c2.mean;
  out.predicted_speed_sq = p.scale_a * p.scale_a * m * m;
  return out;
}

FrenetCurvatures frenet_curvatures_r41(const Jet& j, double tol) {
  if (j.order < 4)
    throw error(errc::bad_config, "Frenet curvatures need an order-4 jet");
  const double speed_sq = minkowski_dot(j[1], j[1]);
  if (std::fabs(speed_sq) <= tol * std::max(1.0, euclid_norm_sq(j[1])))
    throw error(errc::null_degeneracy,
                "generalized Frenet frame needs a non-null tangent");
  const double v = std::sqrt(std::fabs(speed_sq));

  FrenetCurvatures out;
  Vec4 E[4];
  double R[4] = {0, 0, 0, 0};
  int rank = 0;
  for (int stage = 0; stage < 4; ++stage) {
    Vec4 r = j[stage + 1];
    const double scale = std::max(1.0, euclid_norm(r));
    for (int sweep = 0; sweep < 2; ++sweep)
      for (int k = 0; k < rank; ++k)
        r -= (out.signs[static_cast<std::size_t>(k)] * minkowski_dot(r, E[k])) * E[k];
    const double e = euclid_norm(r);
    if (e <= 1e-9 * scale) break;  // rank collapse: curvatures stay zero
    const double q = minkowski_dot(r, r);
    if (std::fabs(q) <= tol * e * e)
      throw error(errc::null_degeneracy,
                  "null degeneracy in the generalized Frenet frame at stage " +
                      std::to_string(stage + 1));
    R[stage] = std::sqrt(std::fabs(q));
    out.signs[static_cast<std::size_t>(stage)] = q > 0.0 ? +1 : -1;
    E[stage] = r / R[stage];
    rank = stage + 1;
  }
  out.rank = rank;
  if (rank >= 2) out.kappa1 = R[1] / (R[0] * v);
  if (rank >= 3) out.kappa2 = R[2] / (R[1] * v);
  if (rank >= 4) {
    const double det = det4(j[1], j[2], j[3], j[4]);
    out.kappa3 = (det < 0.0 ? -1.0 : 1.0) * R[3] / (R[2] * v);
  }
  return out;
}

ClosedFormIdentity spacelike_closed_forms(double a, double theta, double kappa_g,
                                          double tau_g) {
  ClosedFormIdentity out;
  const double S = std::sinh(theta) * std::sinh(theta);
  const double C = std::cosh(theta) * std::cosh(theta);
  const double m2 = C / S;
  const double B = 1.0 + m2 * tau_g * tau_g;
  const double rootB = std::sqrt(B);
  out.kappa = S * rootB / a;
  out.alpha = a * m2 / rootB;
  const double A_sq = C * (tau_g * tau_g + 1.0) * (tau_g * tau_g + 1.0) -
                      kappa_g * kappa_g * B;
  if (A_sq > 0.0) {
    const double A = std::sqrt(A_sq);
    out.tau = A * std::sinh(theta) / (a * rootB);
    out.beta = -a * std::sinh(theta) * rootB / A;
    out.identity = *out.alpha * *out.kappa + *out.beta * *out.tau;
  }
  return out;
}

ClosedFormIdentity null_helix_closed_forms(double a, double theta, double k1,
                                           double k2) {
  ClosedFormIdentity out;
  const double ch = std::cosh(theta);
  const double C = ch * ch;
  const double m = 1.0 / std::tanh(theta);
  const double denom = 1.0 - m * k2;
  out.kappa = denom / (a * m * m);
  if (denom != 0.0) out.alpha = a * C / denom;
  const double rad = k1 * k1 * C - 1.0;
  if (rad > 0.0) {
    out.tau = std::sqrt(rad) / ch;
    out.beta = -C * ch / std::sqrt(rad);
  }
  if (out.alpha && out.tau && out.beta)
    out.identity = *out.alpha * *out.kappa + *out.beta * *out.tau;
  return out;
}

BertrandReport verify_bertrand(const CurveView& c, std::span<const double> ts,
                               double tol, const BertrandConstruction* info) {
  if (ts.size() < 8)
    throw error(errc::bad_config, "verify_bertrand needs at least 8 samples");
  BertrandReport rep;

  double speed_mean = 0.0;
  std::vector<double> speeds(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Jet j = c.jets(ts[i], 4);
    const auto fc = frenet_curvatures_r41(j);
    if (fc.kappa1 <= tol)
      throw error(errc::kappa_underdetermined,
                  "kappa1 = " + format_double(fc.kappa1) + " at t = " +
                      format_double(ts[i]) +
                      " is below tolerance; the Bertrand relation is "
                      "underdetermined",
                  ts[i]);
    rep.kappa_samples.push_back(fc.kappa1);
    rep.tau_samples.push_back(fc.kappa2);
    speeds[i] = minkowski_dot(j[1], j[1]);
    speed_mean += speeds[i];
    if (i == 0)
      rep.character = to_string(causal_character(j[1]));
  }
  speed_mean /= static_cast<double>(ts.size());
  rep.speed_sq = speed_mean;
  for (double s : speeds)
    rep.speed_sq_max_deviation =
        std::max(rep.speed_sq_max_deviation, std::fabs(s - speed_mean));

  // Least squares for alpha*kappa + beta*tau = 1. Constant sample clouds
  // leave the normal matrix rank-1; the minimum-norm line through the mean
  // point is reported with the degenerate-fit flag.
  double S11 = 0, S12 = 0, S22 = 0, b1 = 0, b2 = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double k = rep.kappa_samples[i], t2 = rep.tau_samples[i];
    S11 += k * k;
    S12 += k * t2;
    S22 += t2 * t2;
    b1 += k;
    b2 += t2;
  }
  const double det = S11 * S22 - S12 * S12;
  if (det <= 1e-10 * S11 * std::max(S22, 1e-300)) {
    const double n = static_cast<double>(ts.size());
    const double mk = b1 / n, mt = b2 / n;
    const double norm_sq = mk * mk + mt * mt;
    rep.alpha_fit = mk / norm_sq;
    rep.beta_fit = mt / norm_sq;
    rep.degenerate_fit = true;
  } else {
    rep.alpha_fit = (b1 * S22 - b2 * S12) / det;
    rep.beta_fit = (S11 * b2 - S12 * b1) / det;
  }
  for (std::size_t i = 0; i < ts.size(); ++i)
    rep.fit_residual = std::max(
        rep.fit_residual, std::fabs(rep.alpha_fit * rep.kappa_samples[i] +
                                    rep.beta_fit * rep.tau_samples[i] - 1.0));

  auto rel_stdev = [](const std::vector<double>& vs) {
    double mean = 0.0;
    for (double v : vs) mean += v;
    mean /= static_cast<double>(vs.size());
    double var = 0.0;
    for (double v : vs) var += (v - mean) * (v - mean);
    var /= static_cast<double>(vs.size());
    return std::sqrt(var) / std::max(std::fabs(mean), 1e-9);
  };
  rep.kappa_rel_stdev = rel_stdev(rep.kappa_samples);
  rep.tau_rel_stdev = rel_stdev(rep.tau_samples);

  if (info) {
    rep.speed_sq_predicted = info->predicted_speed_sq;
    const ClosedFormIdentity cf =
        info->source == BertrandSource::SpacelikeHelix
            ? spacelike_closed_forms(info->params.scale_a, info->params.theta,
                                     info->kappa_g, info->tau_g)
            : null_helix_closed_forms(info->params.scale_a, info->params.theta,
                                      info->k1, info->k2);
    rep.kappa_closed = cf.kappa;
    rep.tau_closed = cf.tau;
    rep.alpha_paper = cf.alpha;
    rep.beta_paper = cf.beta;
    rep.paper_identity_value = cf.identity;
    if (cf.identity)
      rep.normalized_identity_value = std::fabs(*cf.identity);
  }
  return rep;
}

}  // namespace bk
