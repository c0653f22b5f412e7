#include "doctest.h"

#include "bk/reparam.hpp"
#include "bk/spacelike_frame.hpp"
#include "oracles.hpp"

using namespace bk;

TEST_CASE("family apparatus: constant invariants and tiny residuals") {
  const double a0 = 0.6, b0 = 0.8, c = 1.0;
  const CurveDef fam = oracles::spacelike_family(a0, b0, c, 0.0, 4.0);

  std::vector<double> kappas, taus;
  double worst_r = 0.0, worst_gram = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double s = 4.0 * i / 200;
    const Jet j = fam.jet(s, 3);
    const auto ap = spacelike_apparatus(j);
    kappas.push_back(ap.kappa_g);
    taus.push_back(ap.tau_g);
    const auto r = frenet_residuals(j);
    worst_r = std::max({worst_r, r.r1, r.r2, r.r3});
    worst_gram = std::max(worst_gram, frame_gram_residual(ap));
    // the family has spacelike n and timelike e; delta tracks -sign<n,n>
    CHECK(ap.n_sign == +1);
    CHECK(ap.e_sign == -1);
    CHECK(ap.delta * ap.n_sign == -1);
  }
  CHECK(worst_r <= 1e-8);
  CHECK(worst_gram <= 1e-8);

  // hand value: kappa_g^2 = a0^2 (c^2+1)^2 + b0^2 (1-d^2)^2 = 2.25
  CHECK(std::fabs(kappas[0] - 1.5) <= 1e-13);
  CHECK(std::fabs(kappas[0] - oracles::family_kappa_g(a0, b0, c)) <= 1e-13);

  auto rel_stdev = [](const std::vector<double>& vs) {
    double mean = 0;
    for (double v : vs) mean += v;
    mean /= static_cast<double>(vs.size());
    double var = 0;
    for (double v : vs) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(vs.size())) / std::fabs(mean);
  };
  CHECK(rel_stdev(kappas) <= 1e-9);
  CHECK(rel_stdev(taus) <= 1e-9);
}

TEST_CASE("small circle has kappa_g = 1, tau_g = 0") {
  const CurveDef c = oracles::small_circle(1.0 / std::sqrt(2.0), 0.0, 4.0);
  for (double s : {0.1, 1.3, 3.9}) {
    const auto ap = spacelike_apparatus(c.jet(s, 3));
    CHECK(std::fabs(ap.kappa_g - 1.0) <= 1e-12);
    CHECK(std::fabs(ap.tau_g) <= 1e-12);
  }
}

TEST_CASE("great circle is a geodesic degeneracy") {
  // t' = -gamma exactly, so kappa_g = 0 and the frame is undefined.
  const CurveDef c("great-circle",
                   {parse_expr("0"), parse_expr("cos(t)"), parse_expr("sin(t)"),
                    parse_expr("0")},
                   0.0, 3.0, CausalCharacter::Spacelike, true);
  try {
    spacelike_apparatus(c.jet(1.0, 3));
    FAIL("expected geodesic degeneracy");
  } catch (const error& e) {
    CHECK(e.code() == errc::frame_degeneracy);
    CHECK(std::string(e.what()).find("geodesic degeneracy") != std::string::npos);
  }
}

TEST_CASE("preconditions are enforced") {
  // not on the pseudo-sphere
  const CurveDef off("off",
                     {parse_expr("0"), parse_expr("2*cos(t)"),
                      parse_expr("2*sin(t)"), parse_expr("0")},
                     0.0, 3.0, std::nullopt, false);
  CHECK_THROWS_AS(spacelike_apparatus(off.jet(0.5, 3)), error);
  // not unit speed
  const CurveDef fast = oracles::spacelike_family(0.6, 0.8, 1.0, 0.0, 2.0);
  Jet j = fast.jet(0.5, 3);
  j.d[1] = 2.0 * j.d[1];
  CHECK_THROWS_AS(spacelike_apparatus(j), error);
}

TEST_CASE("tau_g determinant route matches the wedge route") {
  const CurveDef fam = oracles::spacelike_family(0.35, std::sqrt(1 - 0.35 * 0.35),
                                                 1.4, 0.0, 2.0);
  for (double s : {0.2, 0.9, 1.8}) {
    const Jet j = fam.jet(s, 3);
    const auto ap = spacelike_apparatus(j);
    CHECK(std::fabs(ap.tau_g - tau_g_wedge_route(j)) <= 1e-10);
  }
}

TEST_CASE("kappa_g and tau_g are Lorentz invariants") {
  std::mt19937_64 rng(41);
  const Mat4 L = oracles::random_proper_lorentz(rng);
  const CurveDef fam = oracles::spacelike_family(0.6, 0.8, 1.0, 0.0, 2.0);
  for (double s : {0.1, 0.8, 1.9}) {
    const Jet j = fam.jet(s, 3);
    const Jet tj = oracles::transform_jet(L, j);
    const auto a1 = spacelike_apparatus(j);
    const auto a2 = spacelike_apparatus(tj);
    CHECK(std::fabs(a1.kappa_g - a2.kappa_g) <= 1e-8);
    CHECK(std::fabs(a1.tau_g - a2.tau_g) <= 1e-8);
  }
}

TEST_CASE("residuals after arclength reparametrization of a fast source") {
  const double a0 = 0.6, b0 = 0.8, c = 2.0;
  const double d = std::sqrt((4.0 + a0 * a0 * c * c) / (b0 * b0));
  std::map<std::string, double> k = {{"a0", a0}, {"b0", b0}, {"c", c}, {"d", d}};
  const CurveDef fam("fast-family",
                     {parse_expr("a0*sinh(c*t)", &k), parse_expr("a0*cosh(c*t)", &k),
                      parse_expr("b0*cos(d*t)", &k), parse_expr("b0*sin(d*t)", &k)},
                     0.0, 2.0, CausalCharacter::Spacelike, true);
  const auto [curve, map] = arclength_reparam(fam, 64);
  double worst = 0.0;
  for (int i = 1; i < 40; ++i) {
    const double s = map.u_min() + (map.u_max() - map.u_min()) * i / 40.0;
    const auto r = frenet_residuals(curve.jet(s, 3));
    worst = std::max({worst, r.r1, r.r2, r.r3});
  }
  CHECK(worst <= 1e-5);
}
