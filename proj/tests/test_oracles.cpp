#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "su11/oracles.hpp"

using Catch::Approx;
using su11::AlgebraVector;
using su11::CoverPoint;
using su11::HamiltonianKind;
using su11::cplx;

namespace {

constexpr double pi = std::numbers::pi;

double order_estimate(HamiltonianKind kind, const AlgebraVector& a) {
  const auto exact = kind == HamiltonianKind::SR_D ? su11::sr_geodesic_cover(a, 3.0) : su11::sl_geodesic_cover(a, 3.0);
  auto err = [&](int n) {
    const auto tr = su11::integrate_normal_geodesic(kind, su11::initial_covector(kind, a), 3.0, n);
    return su11::cover_residual(tr.g.back(), exact);
  };
  return std::log2(err(300) / err(600));
}

}  // namespace

TEST_CASE("RK4 endpoint against the closed form", "[ode]") {
  const auto tr = su11::integrate_normal_geodesic(HamiltonianKind::SR_D, {1.0, 0.0, 0.0}, 1.0, 1000);
  CHECK(tr.g.size() == 1001);
  CHECK(tr.t.back() == Approx(1.0).margin(1e-15));
  CHECK(std::abs(tr.g.back().c) < 1e-8);
  CHECK(std::abs(tr.g.back().w - cplx(-std::sinh(1.0), 0)) < 1e-8);
  CHECK(tr.length == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("SL momenta follow the hyperbolic closed forms", "[ode]") {
  const AlgebraVector a{0.4, -0.3, 1.1};
  const auto p0 = su11::initial_covector(HamiltonianKind::SL_E, a);
  const auto tr = su11::integrate_normal_geodesic(HamiltonianKind::SL_E, p0, 2.0, 2000);
  for (std::size_t i = 0; i < tr.t.size(); i += 50) {
    const double t = tr.t[i], ch = std::cosh(2 * p0[0] * t), sh = std::sinh(2 * p0[0] * t);
    CHECK(std::abs(tr.p[i][0] - p0[0]) < 1e-9);
    CHECK(std::abs(tr.p[i][1] - (p0[1] * ch - p0[2] * sh)) < 1e-9);
    CHECK(std::abs(tr.p[i][2] - (p0[2] * ch - p0[1] * sh)) < 1e-9);
  }
  CHECK(su11::cover_residual(tr.g.back(), su11::sl_geodesic_cover(a, 2.0)) < 1e-9);
}

TEST_CASE("RK4 convergence order", "[ode]") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 10; ++i) {
    const AlgebraVector a{u(rng), u(rng), 1.5 * u(rng)};
    CHECK(order_estimate(HamiltonianKind::SR_D, a) >= 3.7);
    const AlgebraVector b{u(rng), 0.5 * u(rng), 1 + std::abs(u(rng))};
    CHECK(order_estimate(HamiltonianKind::SL_E, b) >= 3.7);
  }
}

TEST_CASE("integrator preconditions", "[ode]") {
  CHECK_THROWS_AS(su11::integrate_normal_geodesic(HamiltonianKind::SL_E, {0.0, 2.0, -1.0}, 1.0, 200), su11::DomainError);
  CHECK_THROWS_AS(su11::integrate_normal_geodesic(HamiltonianKind::SL_E, {0.0, 0.0, 1.0}, 1.0, 200), su11::DomainError);
  CHECK_THROWS_AS(su11::integrate_normal_geodesic(HamiltonianKind::SR_D, {1.0, 0.0, 0.0}, 2.0, 150), su11::DomainError);
  CHECK_NOTHROW(su11::integrate_normal_geodesic(HamiltonianKind::SL_E, {0.0, 0.5, -1.0}, 1.0, 100));
}

TEST_CASE("shoot_sr matches the closed forms", "[shoot]") {
  const auto h = su11::shoot_sr(CoverPoint{0, 2});
  CHECK(h.found_count == 1);
  CHECK(h.min_length == Approx(std::asinh(2.0)).margin(1e-5));

  const auto three = su11::shoot_sr(CoverPoint{2.0, 1});
  CHECK(three.found_count == 3);
  CHECK(three.min_length == Approx(su11::sr_distance_cover(CoverPoint{2.0, 1}).value).margin(1e-5));
  for (const auto& s : three.solutions) {
    CHECK(s.endpoint_residual < 1e-8);
    // re-integration at four times the resolution
    const auto [end, len] = su11::integrate_endpoint(HamiltonianKind::SR_D, su11::initial_covector(HamiltonianKind::SR_D, s.a),
                                                     4 * su11::ode_steps_for(s.a));
    CHECK(su11::cover_residual(end, CoverPoint{2.0, 1}) < 1e-8);
    CHECK(len == Approx(s.a.r()).epsilon(1e-10));
  }

  su11::ShootingConfig cfg;
  cfg.t_max = 8;
  const auto vert = su11::shoot_sr(CoverPoint{1.0, 0}, cfg);
  CHECK(vert.continuous_family);
  REQUIRE(vert.found_count >= 3);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(vert.solutions[k].length == Approx(std::sqrt(1 + 2 * pi * double(k + 1))).epsilon(1e-10));
  CHECK(vert.min_length > 1.0 + 1e-3);
  CHECK_THROWS_AS(su11::shoot_sr(CoverPoint{0, 0}), su11::DomainError);
}

TEST_CASE("shoot_sl matches the classifier", "[shoot]") {
  const AlgebraVector seed{0.3, 0.1, 1.2};
  const auto p = su11::sl_geodesic_cover(seed, 1.0);
  const auto rep = su11::shoot_sl(p);
  REQUIRE(rep.found_count >= 1);
  CHECK(std::any_of(rep.solutions.begin(), rep.solutions.end(), [&](const auto& s) {
    return std::abs(s.a.a1 - seed.a1) + std::abs(s.a.a2 - seed.a2) + std::abs(s.a.a3 - seed.a3) < 1e-7;
  }));

  const double om = su11::omega(1), s = 1.2, y2 = 0.3, x1 = su11::bigF(s, om) - 0.5;
  const CoverPoint b{-pi + std::arg(cplx(x1, -std::hypot(s, y2))), cplx(std::sqrt(x1 * x1 + s * s - 1), y2)};
  REQUIRE(su11::sl_classify(b) == su11::SLClass::TwoB);
  const auto two = su11::shoot_sl(b);
  CHECK(two.found_count == 2);
  const auto lib = su11::sl_solve_initial(b).initial;
  REQUIRE(lib.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(two.solutions[i].a.a3 == Approx(lib[i].a3).epsilon(1e-7));

  CHECK(su11::shoot_sl(CoverPoint{0.3, cplx(0.2, 0.1)}).found_count == 0);

  const auto xi = su11::shoot_sl(CoverPoint{-pi, 0.7});
  CHECK(xi.continuous_family);
  REQUIRE(xi.found_count == 1);
  CHECK(xi.solutions[0].a.a1 == Approx(-std::asinh(0.7)).margin(1e-9));
}

TEST_CASE("shoot_lorentz finds one-parameter subgroups", "[shoot]") {
  su11::ShootingConfig cfg;
  cfg.t_max = 8;
  const auto v = su11::shoot_lorentz(CoverPoint{-pi / 4, 0}, cfg);
  REQUIRE(v.found_count == 1);
  CHECK(v.max_length == Approx(pi / 4).epsilon(1e-12));
  const CoverPoint p{-1.0, std::polar(0.6, 1.1)};
  const auto g = su11::shoot_lorentz(p, cfg);
  REQUIRE(g.found_count == 1);
  CHECK(g.max_length == Approx(su11::lorentz_distance(p).value).epsilon(1e-10));
  CHECK(su11::shoot_lorentz(CoverPoint{-0.2, 1}, cfg).found_count == 0);
}

TEST_CASE("finite-difference Jacobian of exp_sr", "[jacobian]") {
  const auto j = su11::fd_jacobian_expsr(AlgebraVector{1, 0, 0}, 1e-5);
  const double s1 = std::sinh(1.0), c1 = std::cosh(1.0);
  CHECK(j.det == Approx(s1 * (c1 - s1)).epsilon(1e-4));
  // r = 0.7 and a3 set so that alpha = -chi_1^2
  const double r = 0.7, x = su11::chi(1);
  const AlgebraVector conj{r, 0, std::sqrt(r * r + x * x)};
  CHECK(std::abs(su11::fd_jacobian_expsr(conj, 1e-5).det) < 1e-5);
  const AlgebraVector before{r, 0, std::sqrt(r * r + (x - 0.05) * (x - 0.05))};
  const AlgebraVector after{r, 0, std::sqrt(r * r + (x + 0.05) * (x + 0.05))};
  const double d0 = su11::fd_jacobian_expsr(before, 1e-5).det, d1 = su11::fd_jacobian_expsr(after, 1e-5).det;
  CHECK(d0 * d1 < 0);
  CHECK(d0 == Approx(su11::jac_det_exp_sr(before)).epsilon(1e-6));
  CHECK(d1 == Approx(su11::jac_det_exp_sr(after)).epsilon(1e-6));
  CHECK_THROWS_AS(su11::fd_jacobian_expsr(AlgebraVector{3, 4, 5}, 1e-5), su11::DomainError);
  CHECK_THROWS_AS(su11::fd_jacobian_expsr(AlgebraVector{1, 0, 0}, 1e-3), su11::DomainError);
}

TEST_CASE("fold values reproduce the count thresholds", "[shoot]") {
  for (double w : {0.2, 1.0, 2.5}) {
    const auto f = su11::sr_fold_values(w, 3);
    REQUIRE(f.size() == 3);
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(f[k - 1] - su11::count_threshold(w, k)) < 1e-6);
  }
}

TEST_CASE("shooting configuration validation", "[shoot]") {
  su11::ShootingConfig cfg;
  cfg.grid_theta = 4;
  CHECK_THROWS_AS(su11::shoot_sr(CoverPoint{1, 1}, cfg), su11::DomainError);
  cfg = {};
  cfg.endpoint_tol = 0;
  CHECK_THROWS_AS(su11::shoot_sl(CoverPoint{-1, 1}, cfg), su11::DomainError);
}

TEST_CASE("adjudication docket", "[docket]") {
  const auto first = su11::adjudicate_claims();
  REQUIRE(first.size() == 4);
  CHECK(first[0].claim_id == "vertical-distance");
  CHECK(first[0].paper_value() == 1.0);
  CHECK(first[0].oracle_value() == Approx(std::sqrt(1 + 2 * pi)).epsilon(1e-10));
  CHECK(first[1].claim_id == "length-formula-sign");
  CHECK(first[1].checks.size() == 3);
  CHECK(first[2].claim_id == "lorentz-distance");
  CHECK(first[2].paper_value() == Approx(pi / 2).epsilon(1e-8));
  CHECK(first[2].oracle_value() == Approx(pi / 4).epsilon(1e-12));
  CHECK(first[3].claim_id == "lorentz-reach-sign");
  for (const auto& a : first) {
    CHECK(!a.verdict.empty());
    for (const auto& c : a.checks) CHECK(c.delta == std::abs(c.paper_value - c.oracle_value));
  }
  const auto second = su11::adjudicate_claims();
  REQUIRE(second.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(second[i].verdict == first[i].verdict);
    REQUIRE(second[i].checks.size() == first[i].checks.size());
    for (std::size_t j = 0; j < first[i].checks.size(); ++j) CHECK(second[i].checks[j].oracle_value == first[i].checks[j].oracle_value);
  }
}
