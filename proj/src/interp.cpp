#include "bk/interp.hpp"

#include <algorithm>
#include <cmath>

namespace bk {

namespace {
// Index of the interval containing x (clamped to the end intervals).
std::size_t find_interval(const std::vector<double>& xs, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  if (i == 0) return 0;
  if (i >= xs.size()) return xs.size() - 2;
  return i - 1;
}
}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw error(errc::bad_config, "MonotoneCubic needs >= 2 matching knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw error(errc::bad_config, "MonotoneCubic knots must be increasing");

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  m_.assign(n, 0.0);
  m_[0] = delta[0];
  m_[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      m_[i] = 0.0;
    } else {
      // Fritsch-Carlson weighted harmonic mean of adjacent secants.
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // Endpoint slope limiting keeps the interpolant monotone in the end cells.
  if (n >= 3) {
    for (std::size_t end = 0; end < 2; ++end) {
      const std::size_t i = end == 0 ? 0 : n - 1;
      const double d = end == 0 ? delta[0] : delta[n - 2];
      if (m_[i] * d <= 0.0)
        m_[i] = 0.0;
      else if (std::fabs(m_[i]) > 3.0 * std::fabs(d))
        m_[i] = 3.0 * d;
    }
  }
}

std::size_t MonotoneCubic::interval(double x) const { return find_interval(x_, x); }

double MonotoneCubic::operator()(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double s2 = s * s;
  const double d00 = (6 * s2 - 6 * s) / h;
  const double d10 = 3 * s2 - 4 * s + 1;
  const double d01 = (-6 * s2 + 6 * s) / h;
  const double d11 = 3 * s2 - 2 * s;
  return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

HermiteCurve::HermiteCurve(std::vector<double> t, std::vector<Vec4> p,
                           std::vector<Vec4> m)
    : t_(std::move(t)), p_(std::move(p)), m_(std::move(m)) {
  if (t_.size() < 2 || p_.size() != t_.size() || m_.size() != t_.size())
    throw error(errc::bad_config, "HermiteCurve needs matching knot arrays");
  for (std::size_t i = 1; i < t_.size(); ++i)
    if (!(t_[i] > t_[i - 1]))
      throw error(errc::bad_config, "HermiteCurve knots must be increasing");
}

std::size_t HermiteCurve::interval(double t) const { return find_interval(t_, t); }

Vec4 HermiteCurve::value(double t) const {
  const std::size_t i = interval(t);
  const double h = t_[i + 1] - t_[i];
  const double s = (t - t_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * p_[i] + ((s3 - 2 * s2 + s) * h) * m_[i] +
         (-2 * s3 + 3 * s2) * p_[i + 1] + ((s3 - s2) * h) * m_[i + 1];
}

Vec4 HermiteCurve::derivative(double t) const {
  const std::size_t i = interval(t);
  const double h = t_[i + 1] - t_[i];
  const double s = (t - t_[i]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) / h) * p_[i] + (3 * s2 - 4 * s + 1) * m_[i] +
         ((-6 * s2 + 6 * s) / h) * p_[i + 1] + (3 * s2 - 2 * s) * m_[i + 1];
}

std::vector<double> polynomial_derivatives(std::span<const double> xs,
                                           std::span<const double> ys,
                                           double x0, int order) {
  const std::size_t n = xs.size();
  // Newton divided-difference coefficients.
  std::vector<double> coef(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);

  // Horner evaluation at x0 with simultaneous Taylor-coefficient recurrence:
  // after processing, tay[k] holds the k-th Taylor coefficient at x0.
  std::vector<double> tay(static_cast<std::size_t>(order) + 1, 0.0);
  tay[0] = coef[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    const double dx = x0 - xs[i];
    for (int k = std::min<int>(order, static_cast<int>(n - 1 - i)); k >= 1; --k)
      tay[static_cast<std::size_t>(k)] =
          tay[static_cast<std::size_t>(k)] * dx + tay[static_cast<std::size_t>(k) - 1];
    tay[0] = tay[0] * dx + coef[i];
  }
  double fact = 1.0;
  for (int k = 2; k <= order; ++k) {
    fact *= k;
    tay[static_cast<std::size_t>(k)] *= fact;
  }
  return tay;
}

Jet window_jet(std::span<const double> params, std::span<const Vec4> positions,
               double u, int order, int window) {
  const std::size_t n = params.size();
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), n);
  if (w < static_cast<std::size_t>(order) + 1)
    throw error(errc::bad_config, "window_jet: too few samples for the order");
  // Center a contiguous window of w knots on u.
  std::size_t lo = 0;
  {
    auto it = std::lower_bound(params.begin(), params.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - params.begin());
    lo = idx > w / 2 ? idx - w / 2 : 0;
    lo = std::min(lo, n - w);
  }
  std::vector<double> xs(params.begin() + static_cast<std::ptrdiff_t>(lo),
                         params.begin() + static_cast<std::ptrdiff_t>(lo + w));
  Jet j;
  j.order = order;
  std::vector<double> ys(w);
  for (int comp = 0; comp < 4; ++comp) {
    for (std::size_t i = 0; i < w; ++i) ys[i] = positions[lo + i][comp];
    const auto ds = polynomial_derivatives(xs, ys, u, order);
    for (int k = 0; k <= order; ++k) j.d[static_cast<std::size_t>(k)][comp] = ds[static_cast<std::size_t>(k)];
  }
  return j;
}

}  // namespace bk
