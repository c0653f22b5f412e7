#include "doctest.h"

#include "bk/curve.hpp"
#include "oracles.hpp"

using namespace bk;

namespace {
CurveDef make_curve(const char* c1, const char* c2, const char* c3,
                    const char* c4, double lo, double hi) {
  return CurveDef("test",
                  {parse_expr(c1), parse_expr(c2), parse_expr(c3), parse_expr(c4)},
                  lo, hi, std::nullopt, false);
}
}  // namespace

TEST_CASE("jet evaluation on hyperbola and circle") {
  const CurveDef hyp = make_curve("sinh(t)", "cosh(t)", "0", "0", -2.0, 2.0);
  const Jet j = hyp.jet(0.0, 2);
  CHECK(euclid_norm(j[0] - Vec4{0, 1, 0, 0}) == 0.0);
  CHECK(euclid_norm(j[1] - Vec4{1, 0, 0, 0}) == 0.0);
  CHECK(euclid_norm(j[2] - Vec4{0, 1, 0, 0}) == 0.0);

  const CurveDef circ = make_curve("0", "cos(t)", "sin(t)", "0", 0.0, 3.2);
  const Jet jc = circ.jet(std::numbers::pi / 2, 1);
  CHECK(euclid_norm(jc[0] - Vec4{0, 0, 1, 0}) <= 1e-15);
  CHECK(euclid_norm(jc[1] - Vec4{0, -1, 0, 0}) <= 1e-15);
}

TEST_CASE("jets agree with central differences of order-0 evaluation") {
  const CurveDef c = oracles::spacelike_family(0.6, 0.8, 1.0, 0.0, 2.0);
  for (double t : {0.3, 0.9, 1.7}) {
    const Jet j = c.jet(t, 4);
    for (int k = 1; k <= 4; ++k) {
      for (int comp = 0; comp < 4; ++comp) {
        const double fd = oracles::central_diff(
            [&](double x) { return c.derivative(x, k - 1)[comp]; }, t);
        CHECK(std::fabs(j[k][comp] - fd) <=
              1e-6 * (1.0 + std::fabs(j[k][comp])));
      }
    }
  }
}

TEST_CASE("domain and evaluation errors name the offender") {
  const CurveDef c = make_curve("log(t)", "t", "0", "0", 0.5, 2.0);
  CHECK_THROWS_AS(c.position(3.0), error);
  const CurveDef d = make_curve("t", "log(t - 1)", "0", "0", 0.0, 2.0);
  try {
    d.position(0.5);
    FAIL("expected eval error");
  } catch (const error& e) {
    CHECK(e.code() == errc::eval_domain);
    CHECK(std::string(e.what()).find("component 2") != std::string::npos);
    CHECK(e.at().has_value());
  }
}

TEST_CASE("validate_declared") {
  SUBCASE("hyperbola on the pseudo-sphere") {
    const CurveDef c =
        CurveDef("hyperbola",
                 {parse_expr("sinh(t)"), parse_expr("cosh(t)"), parse_expr("0"),
                  parse_expr("0")},
                 -1.0, 1.0, std::nullopt, true);
    const auto rep = validate_declared(c, 50, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.surface_checked);
    CHECK(rep.worst_surface_residual <= 1e-15);
  }
  SUBCASE("null family declared null and de Sitter passes") {
    const CurveDef c = oracles::null_family(0.5, 1.0, 0.0, 2.0);
    const auto rep = validate_declared(c, 64, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.character_ok);
    CHECK(rep.surface_ok);
  }
  SUBCASE("timelike line declared spacelike fails everywhere") {
    const CurveDef c = CurveDef(
        "line", {parse_expr("t"), parse_expr("0"), parse_expr("0"), parse_expr("0")},
        0.0, 1.0, CausalCharacter::Spacelike, false);
    const auto rep = validate_declared(c, 16, 1e-9);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.character_ok);
    REQUIRE(rep.first_offending_t.has_value());
    CHECK(*rep.first_offending_t == 0.0);
  }
}
