#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "bk/expr.hpp"
#include "bk/vec4.hpp"

namespace bk {

/// Position and derivatives of a curve at one parameter value.
struct Jet {
  int order = 0;            // highest valid derivative, 0..4
  std::array<Vec4, 5> d{};  // d[k] = k-th derivative; entries above `order` unset

  const Vec4& operator[](int k) const { return d[static_cast<std::size_t>(k)]; }
};

/// A curve given by four symbolic components of one parameter on a closed
/// interval. Derivative expressions are built once at construction (orders
/// 1..5); the object is immutable afterwards and cheap to copy.
class CurveDef {
 public:
  CurveDef(std::string name, std::array<Expr, 4> components, double t_lo,
           double t_hi, std::optional<CausalCharacter> declared_character,
           bool declared_de_sitter);

  const std::string& name() const { return data_->name; }
  double t_lo() const { return data_->t_lo; }
  double t_hi() const { return data_->t_hi; }
  std::optional<CausalCharacter> declared_character() const {
    return data_->declared_character;
  }
  bool declared_de_sitter() const { return data_->declared_de_sitter; }
  const Expr& component(int i) const { return data_->exprs[i][0]; }

  /// k-th derivative vector, k in 0..5. Throws error(domain_violation) when
  /// t leaves the interval and error(eval_domain) for evaluation failures,
  /// naming the component and t.
  Vec4 derivative(double t, int k) const;

  /// Position and derivatives up to `order` (0..4).
  Jet jet(double t, int order) const;

  Vec4 position(double t) const { return derivative(t, 0); }

 private:
  struct Data {
    std::string name;
    std::array<std::array<Expr, 6>, 4> exprs;  // exprs[component][order]
    double t_lo, t_hi;
    std::optional<CausalCharacter> declared_character;
    bool declared_de_sitter;
  };
  std::shared_ptr<const Data> data_;
};

struct ValidationReport {
  bool pass = true;
  int samples = 0;
  bool character_checked = false;
  bool character_ok = true;
  std::string declared_character;
  // Worst deviation of <g',g'> from the declared class: for null the worst
  // |<g',g'>|, for spacelike/timelike the smallest margin past the tolerance
  // band (negative when violated).
  double worst_speed_margin = 0.0;
  bool surface_checked = false;
  bool surface_ok = true;
  double worst_surface_residual = 0.0;  // max |<g,g> - 1|
  std::optional<double> first_offending_t;
  std::string message = "ok";
};

/// Samples the domain uniformly and checks the declared causal character of
/// the tangent and, when declared, membership in the unit pseudo-sphere.
ValidationReport validate_declared(const CurveDef& c, int samples, double tol);

}  // namespace bk
