#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "bk/curve.hpp"
#include "bk/interp.hpp"

namespace bk {

enum class ReparamKind { Arclength, PseudoArc };

/// Tabulated strictly-increasing map t -> u (arclength s or pseudo-arc u)
/// with its inverse. Forward values between knots come from a single partial
/// Gauss-Legendre panel on top of the tabulated value; the inverse is a
/// monotone-cubic initial guess polished by Newton steps against the exact
/// forward map, so round-trips hold at rounding level.
class ReparamMap {
 public:
  ReparamMap() = default;
  ReparamMap(std::vector<double> t_knots, std::vector<double> u_knots,
             std::function<double(double)> speed, double error_estimate);

  double forward(double t) const;
  double inverse(double u) const;
  double speed(double t) const { return data_->speed(t); }

  double t_min() const { return data_->t_knots.front(); }
  double t_max() const { return data_->t_knots.back(); }
  double u_min() const { return data_->u_knots.front(); }
  double u_max() const { return data_->u_knots.back(); }
  const std::vector<double>& t_knots() const { return data_->t_knots; }
  const std::vector<double>& u_knots() const { return data_->u_knots; }
  double quadrature_error_estimate() const { return data_->error_estimate; }

 private:
  struct Data {
    std::vector<double> t_knots, u_knots;
    std::function<double(double)> speed;
    MonotoneCubic inv;
    double error_estimate = 0.0;
  };
  std::shared_ptr<const Data> data_;
};

/// A densely sampled curve: knot grid plus positions, optionally exact knot
/// slopes (Hermite interpolation), an exact position backend, and an exact
/// jet backend. Sample-only curves fall back to sliding-window polynomial
/// interpolation of the requested degree.
class NumericCurve {
 public:
  NumericCurve() = default;

  static NumericCurve from_samples(std::vector<double> params,
                                   std::vector<Vec4> positions, int degree = 3,
                                   std::size_t min_samples = 16);
  static NumericCurve with_backends(std::vector<double> params,
                                    std::vector<Vec4> positions,
                                    std::vector<Vec4> slopes,
                                    std::function<Vec4(double)> position_fn,
                                    std::function<Jet(double, int)> jet_fn);

  const std::vector<double>& params() const { return params_; }
  const std::vector<Vec4>& positions() const { return positions_; }
  double u_min() const { return params_.front(); }
  double u_max() const { return params_.back(); }

  Vec4 position(double u) const;
  Jet jet(double u, int order = 4) const;

  /// Derivative of the piecewise interpolant itself (not the exact backend);
  /// meaningful when knot slopes are present.
  Vec4 interpolant_derivative(double u) const;

 private:
  std::vector<double> params_;
  std::vector<Vec4> positions_;
  std::vector<Vec4> slopes_;
  HermiteCurve hermite_;
  std::function<Vec4(double)> pos_fn_;
  std::function<Jet(double, int)> jet_fn_;
  int degree_ = 3;
};

/// Uniform interface for sampling operations over symbolic or numeric curves.
struct CurveView {
  double lo = 0.0, hi = 0.0;
  std::function<Jet(double, int)> jets;
};

CurveView view_of(const CurveDef& c);
CurveView view_of(const NumericCurve& c);

/// Reparametrizes a spacelike curve by arclength: s(t) is the running
/// integral of sqrt(<g',g'>) over `panels` Gauss-Legendre panels. The
/// returned curve is unit speed; derivatives go through the chain rule with
/// symbolic speed jets, never through interpolant differentiation.
std::pair<NumericCurve, ReparamMap> arclength_reparam(const CurveDef& c,
                                                      int panels);

/// Reparametrizes a null curve by the pseudo-arc, the running integral of
/// <g'',g''>^(1/4) from the left endpoint. The returned curve satisfies
/// <g''(u),g''(u)> = 1. Fails with the offending t when the acceleration
/// turns null.
std::pair<NumericCurve, ReparamMap> pseudo_arc_reparam(const CurveDef& c,
                                                       int panels);

}  // namespace bk
