#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bk/support.hpp"

namespace bk {

namespace detail {
struct ExprNode;
}

/// Immutable symbolic expression in one parameter `t`. Supports the grammar
/// of curve component definitions: literals, t, pi, e, unary minus, + - * /
/// ^ (right-associative), and sin cos tan sinh cosh tanh exp log sqrt with
/// mandatory parentheses. Values are shared trees; copying is cheap and
/// thread-safe.
class Expr {
 public:
  Expr() = default;

  double eval(double t) const;  // throws error(eval_domain) on log/sqrt/div issues
  Expr derivative() const;
  std::string str() const;
  bool is_constant() const;  // no occurrence of the parameter

  static Expr number(double v);
  static Expr parameter();

  explicit Expr(std::shared_ptr<const detail::ExprNode> n) : node_(std::move(n)) {}
  const detail::ExprNode* node() const { return node_.get(); }

 private:
  std::shared_ptr<const detail::ExprNode> node_;
};

/// Parse failure with byte offset and the token set that would have been
/// accepted at that point.
class parse_error : public error {
 public:
  parse_error(std::size_t offset, std::vector<std::string> expected,
              std::string message)
      : error(errc::parse_error, std::move(message)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Parses `text`; identifiers found in `constants` are replaced by their
/// numeric values at the token level, before parsing proper. Unknown
/// identifiers raise error(unknown_identifier) naming the identifier.
Expr parse_expr(std::string_view text,
                const std::map<std::string, double>* constants = nullptr);

}  // namespace bk
