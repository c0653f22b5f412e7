#include "bk/curve.hpp"

#include <cmath>
#include <limits>

namespace bk {

CurveDef::CurveDef(std::string name, std::array<Expr, 4> components, double t_lo,
                   double t_hi, std::optional<CausalCharacter> declared_character,
                   bool declared_de_sitter) {
  if (!std::isfinite(t_lo) || !std::isfinite(t_hi) || !(t_lo < t_hi))
    throw error(errc::bad_config,
                "curve domain must be a finite interval with t_lo < t_hi");
  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  data->t_lo = t_lo;
  data->t_hi = t_hi;
  data->declared_character = declared_character;
  data->declared_de_sitter = declared_de_sitter;
  for (int i = 0; i < 4; ++i) {
    data->exprs[i][0] = components[i];
    for (int k = 1; k <= 5; ++k)
      data->exprs[i][k] = data->exprs[i][k - 1].derivative();
  }
  data_ = std::move(data);
}

Vec4 CurveDef::derivative(double t, int k) const {
  const double slack = 1e-9 * (data_->t_hi - data_->t_lo);
  if (t < data_->t_lo - slack || t > data_->t_hi + slack)
    throw error(errc::domain_violation,
                "parameter " + format_double(t) + " outside the curve domain [" +
                    format_double(data_->t_lo) + ", " +
                    format_double(data_->t_hi) + "]",
                t);
  Vec4 out;
  for (int i = 0; i < 4; ++i) {
    double v;
    try {
      v = data_->exprs[i][k].eval(t);
    } catch (const error& e) {
      throw error(e.code(), std::string(e.what()) + " in component " +
                                std::to_string(i + 1) + " at t = " +
                                format_double(t),
                  t);
    }
    if (!std::isfinite(v))
      throw error(errc::eval_domain,
                  "non-finite value in component " + std::to_string(i + 1) +
                      " at t = " + format_double(t),
                  t);
    out[i] = v;
  }
  return out;
}

Jet CurveDef::jet(double t, int order) const {
  Jet j;
  j.order = order;
  for (int k = 0; k <= order; ++k) j.d[static_cast<std::size_t>(k)] = derivative(t, k);
  return j;
}

ValidationReport validate_declared(const CurveDef& c, int samples, double tol) {
  if (samples < 2)
    throw error(errc::bad_config, "validate_declared needs at least 2 samples");
  ValidationReport rep;
  rep.samples = samples;
  const auto declared = c.declared_character();
  rep.character_checked = declared.has_value();
  if (declared) rep.declared_character = to_string(*declared);
  rep.surface_checked = c.declared_de_sitter();

  const double lo = c.t_lo(), hi = c.t_hi();
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_null = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1);
    if (declared) {
      const Vec4 d1 = c.derivative(t, 1);
      const double q = minkowski_dot(d1, d1);
      const double scale = std::max(1.0, euclid_norm_sq(d1));
      bool ok = true;
      switch (*declared) {
        case CausalCharacter::Spacelike:
          ok = q > tol * scale;
          worst_margin = std::min(worst_margin, q);
          break;
        case CausalCharacter::Timelike:
          ok = q < -tol * scale;
          worst_margin = std::min(worst_margin, -q);
          break;
        case CausalCharacter::Lightlike:
          ok = std::fabs(q) <= tol * scale;
          worst_null = std::max(worst_null, std::fabs(q));
          break;
      }
      if (!ok && rep.character_ok) {
        rep.character_ok = false;
        rep.first_offending_t = t;
      }
    }
    if (rep.surface_checked) {
      const Vec4 p = c.position(t);
      const double r = std::fabs(minkowski_dot(p, p) - 1.0);
      rep.worst_surface_residual = std::max(rep.worst_surface_residual, r);
      if (r > tol && rep.surface_ok) {
        rep.surface_ok = false;
        if (!rep.first_offending_t) rep.first_offending_t = t;
      }
    }
  }
  if (declared) {
    rep.worst_speed_margin = (*declared == CausalCharacter::Lightlike)
                                 ? worst_null
                                 : worst_margin;
  }
  rep.pass = rep.character_ok && rep.surface_ok;
  if (!rep.pass) {
    rep.message = std::string(!rep.character_ok ? "causal character mismatch"
                                                : "surface membership failed");
    if (rep.first_offending_t)
      rep.message += " first at t = " + format_double(*rep.first_offending_t);
  }
  return rep;
}

}  // namespace bk
