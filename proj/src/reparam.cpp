#include "bk/reparam.hpp"

#include <algorithm>
#include <cmath>

#include "bk/quadrature.hpp"
#include "bk/scalar_jet.hpp"

namespace bk {

ReparamMap::ReparamMap(std::vector<double> t_knots, std::vector<double> u_knots,
                       std::function<double(double)> speed,
                       double error_estimate) {
  auto data = std::make_shared<Data>();
  data->t_knots = std::move(t_knots);
  data->u_knots = std::move(u_knots);
  data->speed = std::move(speed);
  data->error_estimate = error_estimate;
  for (std::size_t i = 1; i < data->u_knots.size(); ++i)
    if (!(data->u_knots[i] > data->u_knots[i - 1]))
      throw error(errc::quadrature_failure,
                  "reparametrizing map is not strictly increasing");
  data->inv = MonotoneCubic(data->u_knots, data->t_knots);
  data_ = std::move(data);
}

double ReparamMap::forward(double t) const {
  const auto& ts = data_->t_knots;
  t = std::clamp(t, ts.front(), ts.back());
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  std::size_t i = it == ts.begin() ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
  i = std::min(i, ts.size() - 2);
  return data_->u_knots[i] + gl5_panel(data_->speed, ts[i], t);
}

double ReparamMap::inverse(double u) const {
  const auto& us = data_->u_knots;
  u = std::clamp(u, us.front(), us.back());
  double t = data_->inv(u);
  t = std::clamp(t, data_->t_knots.front(), data_->t_knots.back());
  for (int it = 0; it < 4; ++it) {
    const double r = forward(t) - u;
    const double w = data_->speed(t);
    if (w <= 0.0) break;
    const double step = r / w;
    t = std::clamp(t - step, data_->t_knots.front(), data_->t_knots.back());
    if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(t))) break;
  }
  return t;
}

NumericCurve NumericCurve::from_samples(std::vector<double> params,
                                        std::vector<Vec4> positions, int degree,
                                        std::size_t min_samples) {
  if (params.size() < min_samples)
    throw error(errc::bad_config,
                "NumericCurve needs at least " + std::to_string(min_samples) +
                    " samples, got " + std::to_string(params.size()));
  if (params.size() != positions.size())
    throw error(errc::bad_config, "sample arrays disagree in length");
  for (std::size_t i = 1; i < params.size(); ++i)
    if (!(params[i] > params[i - 1]))
      throw error(errc::bad_config, "sample grid must be strictly increasing");
  NumericCurve c;
  c.params_ = std::move(params);
  c.positions_ = std::move(positions);
  c.degree_ = degree;
  return c;
}

NumericCurve NumericCurve::with_backends(std::vector<double> params,
                                         std::vector<Vec4> positions,
                                         std::vector<Vec4> slopes,
                                         std::function<Vec4(double)> position_fn,
                                         std::function<Jet(double, int)> jet_fn) {
  NumericCurve c = from_samples(std::move(params), std::move(positions), 3, 16);
  c.slopes_ = std::move(slopes);
  if (!c.slopes_.empty())
    c.hermite_ = HermiteCurve(c.params_, c.positions_, c.slopes_);
  c.pos_fn_ = std::move(position_fn);
  c.jet_fn_ = std::move(jet_fn);
  return c;
}

Vec4 NumericCurve::position(double u) const {
  if (pos_fn_) return pos_fn_(u);
  if (!slopes_.empty()) return hermite_.value(u);
  return window_jet(params_, positions_, u, 0, degree_ + 1).d[0];
}

Jet NumericCurve::jet(double u, int order) const {
  if (jet_fn_) return jet_fn_(u, order);
  const int window = std::max(7, degree_ + 1);
  return window_jet(params_, positions_, u, order, window);
}

Vec4 NumericCurve::interpolant_derivative(double u) const {
  if (!slopes_.empty()) return hermite_.derivative(u);
  return window_jet(params_, positions_, u, 1, degree_ + 1).d[1];
}

CurveView view_of(const CurveDef& c) {
  return {c.t_lo(), c.t_hi(),
          [c](double t, int order) { return c.jet(t, order); }};
}

CurveView view_of(const NumericCurve& c) {
  return {c.u_min(), c.u_max(),
          [c](double u, int order) { return c.jet(u, order); }};
}

namespace {

// Speed function with three derivatives at t. Arclength: sqrt(<g',g'>);
// pseudo-arc: <g'',g''>^(1/4).
ScalarJet3 speed_jet(const CurveDef& src, double t, ReparamKind kind) {
  if (kind == ReparamKind::Arclength) {
    const Vec4 g1 = src.derivative(t, 1), g2 = src.derivative(t, 2),
               g3 = src.derivative(t, 3), g4 = src.derivative(t, 4);
    ScalarJet3 p{minkowski_dot(g1, g1), 2.0 * minkowski_dot(g1, g2),
                 2.0 * (minkowski_dot(g2, g2) + minkowski_dot(g1, g3)),
                 6.0 * minkowski_dot(g2, g3) + 2.0 * minkowski_dot(g1, g4)};
    return pow_jet(p, 0.5);
  }
  const Vec4 g2 = src.derivative(t, 2), g3 = src.derivative(t, 3),
             g4 = src.derivative(t, 4), g5 = src.derivative(t, 5);
  ScalarJet3 p{minkowski_dot(g2, g2), 2.0 * minkowski_dot(g2, g3),
               2.0 * (minkowski_dot(g3, g3) + minkowski_dot(g2, g4)),
               6.0 * minkowski_dot(g3, g4) + 2.0 * minkowski_dot(g2, g5)};
  return pow_jet(p, 0.25);
}

// Jet of the reparametrized curve at u: resolve t, take the symbolic source
// jet, and push it through the inverse map's derivatives (Faa di Bruno).
Jet reparam_jet(const CurveDef& src, const ReparamMap& map, ReparamKind kind,
                double u, int order) {
  const double t = map.inverse(u);
  Jet out;
  out.order = order;
  out.d[0] = src.position(t);
  if (order == 0) return out;

  const ScalarJet3 w = speed_jet(src, t, kind);
  const double w1 = w.f, w2 = w1 * w1, w3 = w2 * w1;
  const double G1 = 1.0 / w1;
  const double G2 = -w.d1 / w3;
  const double G3 = (3.0 * w.d1 * w.d1 - w1 * w.d2) / (w3 * w2);
  const double G4 = (-15.0 * w.d1 * w.d1 * w.d1 + 10.0 * w1 * w.d1 * w.d2 -
                     w2 * w.d3) /
                    (w3 * w3 * w1);

  const Vec4 g1 = src.derivative(t, 1);
  out.d[1] = G1 * g1;
  if (order >= 2) {
    const Vec4 g2 = src.derivative(t, 2);
    out.d[2] = (G1 * G1) * g2 + G2 * g1;
    if (order >= 3) {
      const Vec4 g3 = src.derivative(t, 3);
      out.d[3] = (G1 * G1 * G1) * g3 + (3.0 * G1 * G2) * g2 + G3 * g1;
      if (order >= 4) {
        const Vec4 g4 = src.derivative(t, 4);
        out.d[4] = (G1 * G1 * G1 * G1) * g4 + (6.0 * G1 * G1 * G2) * g3 +
                   (4.0 * G1 * G3 + 3.0 * G2 * G2) * g2 + G4 * g1;
      }
    }
  }
  return out;
}

std::pair<NumericCurve, ReparamMap> reparam_impl(const CurveDef& c, int panels,
                                                 ReparamKind kind) {
  if (panels < 16)
    throw error(errc::bad_config, "reparametrization needs at least 16 panels");
  const double lo = c.t_lo(), hi = c.t_hi();

  // Causal preconditions on a grid denser than the quadrature grid.
  const int checks = 4 * panels + 1;
  for (int i = 0; i < checks; ++i) {
    const double t = lo + (hi - lo) * i / (checks - 1);
    const Vec4 d1 = c.derivative(t, 1);
    const auto cc = causal_character(d1);
    if (kind == ReparamKind::Arclength) {
      if (cc != CausalCharacter::Spacelike)
        throw error(errc::causal_mismatch,
                    "arclength reparametrization needs a spacelike tangent; "
                    "violated at t = " + format_double(t),
                    t);
    } else {
      if (cc != CausalCharacter::Lightlike)
        throw error(errc::causal_mismatch,
                    "pseudo-arc reparametrization needs a null tangent; "
                    "violated at t = " + format_double(t),
                    t);
      const Vec4 d2 = c.derivative(t, 2);
      if (minkowski_dot(d2, d2) <= kCausalTol * std::max(1.0, euclid_norm_sq(d2)))
        throw error(errc::pseudo_arc_violation,
                    "null acceleration vector at t = " + format_double(t), t);
    }
  }

  auto speed = [c, kind](double t) {
    if (kind == ReparamKind::Arclength)
      return std::sqrt(minkowski_dot(c.derivative(t, 1), c.derivative(t, 1)));
    const Vec4 d2 = c.derivative(t, 2);
    return std::pow(minkowski_dot(d2, d2), 0.25);
  };

  auto cum = cumulative_gl5<double>(speed, lo, hi, panels);
  auto coarse = cumulative_gl5<double>(speed, lo, hi, panels / 2);
  const double estimate = std::fabs(cum.back() - coarse.back());
  for (double u : cum)
    if (!std::isfinite(u))
      throw error(errc::quadrature_failure, "non-finite reparametrizing integral");

  std::vector<double> t_knots(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i)
    t_knots[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / panels;
  ReparamMap map(t_knots, cum, speed, estimate);

  std::vector<Vec4> positions(t_knots.size()), slopes(t_knots.size());
  for (std::size_t i = 0; i < t_knots.size(); ++i) {
    positions[i] = c.position(t_knots[i]);
    slopes[i] = c.derivative(t_knots[i], 1) / speed(t_knots[i]);
  }
  auto pos_fn = [c, map](double u) { return c.position(map.inverse(u)); };
  auto jet_fn = [c, map, kind](double u, int order) {
    return reparam_jet(c, map, kind, u, order);
  };
  NumericCurve curve = NumericCurve::with_backends(cum, std::move(positions),
                                                   std::move(slopes),
                                                   std::move(pos_fn),
                                                   std::move(jet_fn));
  return {std::move(curve), std::move(map)};
}

}  // namespace

std::pair<NumericCurve, ReparamMap> arclength_reparam(const CurveDef& c,
                                                      int panels) {
  return reparam_impl(c, panels, ReparamKind::Arclength);
}

std::pair<NumericCurve, ReparamMap> pseudo_arc_reparam(const CurveDef& c,
                                                       int panels) {
  return reparam_impl(c, panels, ReparamKind::PseudoArc);
}

}  // namespace bk
