#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "su11/sr_geometry.hpp"

using Catch::Approx;
using su11::AlgebraVector;
using su11::cplx;
using su11::CoverPoint;
using su11::DistanceCase;
using su11::GeodesicCount;
using su11::MatrixPoint;
constexpr double pi = std::numbers::pi;

namespace {

double dist(const CoverPoint& p, const CoverPoint& q) { return std::abs(p.c - q.c) + std::abs(p.w - q.w); }
double dist(const MatrixPoint& g, const MatrixPoint& h) { return std::abs(g.z1 - h.z1) + std::abs(g.z2 - h.z2); }

AlgebraVector with_alpha(double r, double al, double theta = 0.3) {
  return {r * std::cos(theta), r * std::sin(theta), std::sqrt(r * r - al)};
}

}  // namespace

TEST_CASE("SR geodesic examples", "[sr]") {
  for (double t : {0.0, 0.4, 1.0, 2.5}) {
    CHECK(dist(su11::sr_geodesic_cover(AlgebraVector{1, 0, 0}, t), CoverPoint{0, -std::sinh(t)}) < 1e-14);
    CHECK(dist(su11::sr_geodesic_matrix(AlgebraVector{1, 0, 0}, t), MatrixPoint{std::cosh(t), -std::sinh(t)}) < 1e-13);
  }
  const AlgebraVector a{0.6, -0.8, std::sqrt(1 + pi * pi)};
  CHECK(std::abs(su11::sr_geodesic_cover(a, 1.0).w) < 1e-15);
  CHECK(dist(su11::sr_geodesic_cover(a, 0.0), CoverPoint{0, 0}) == 0);
  CHECK(dist(su11::sr_geodesic_matrix(a, 0.0), MatrixPoint{1, 0}) == 0);
  CHECK(dist(su11::exp_sr(a), su11::sr_geodesic_cover(a, 1.0)) == 0);
  CHECK_THROWS_AS(su11::sr_geodesic_cover(AlgebraVector{0, 0, 1}, 1.0), su11::DomainError);
}

TEST_CASE("SR geodesic factorization", "[sr]") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(-2, 2), dt(0, 3);
  for (int i = 0; i < 500; ++i) {
    const AlgebraVector a{d(rng), d(rng), d(rng)};
    const double t = dt(rng);
    const auto lhs = su11::sr_geodesic_matrix(a, t);
    const auto rhs = su11::mat_mul(su11::exp_matrix(a * t), su11::exp_matrix(AlgebraVector{0, 0, -t * a.a3}));
    CHECK(dist(lhs, rhs) / std::max(1.0, std::abs(rhs.z1)) < 1e-10);
    CHECK(dist(su11::cover_to_matrix(su11::sr_geodesic_cover(a, t)), lhs) / std::max(1.0, std::abs(lhs.z1)) < 1e-10);
    const auto lifted = su11::cover_mul(su11::exp_cover(a * t), su11::exp_cover(AlgebraVector{0, 0, -t * a.a3}));
    CHECK(dist(lifted, su11::sr_geodesic_cover(a, t)) / std::max(1.0, std::abs(lifted.w)) < 1e-9);
  }
}

TEST_CASE("SR geodesics are horizontal with speed r", "[sr]") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  const double h = 1e-6;
  for (int i = 0; i < 40; ++i) {
    const AlgebraVector a{d(rng), d(rng), 2 * d(rng)};
    for (double t = 0.1; t < 2.0; t += 0.3) {
      const auto p = su11::sr_geodesic_cover(a, t);
      const auto fwd = su11::sr_geodesic_cover(a, t + h), bwd = su11::sr_geodesic_cover(a, t - h);
      const su11::TangentTriple v{(fwd.c - bwd.c) / (2 * h), (fwd.w - bwd.w) / (2 * h)};
      const auto u = su11::frame_coordinates(p, v);
      CHECK(std::abs(u.a3) < 1e-6);
      CHECK(std::hypot(u.a1, u.a2) == Approx(a.r()).epsilon(1e-6));
    }
  }
}

TEST_CASE("count thresholds", "[sr]") {
  // mpmath, 40 digits
  CHECK(su11::count_threshold(1.0, 1) == Approx(1.8746710345974429809).epsilon(1e-13));
  CHECK(su11::count_threshold(1.0, 2) == Approx(3.2077444112684754017).epsilon(1e-13));
  CHECK(su11::count_threshold(0.5, 1) == Approx(0.53175930358393609271).epsilon(1e-13));
  CHECK(su11::count_threshold(2.0, 1) == Approx(5.6296028380242369495).epsilon(1e-13));
  CHECK(su11::count_threshold(2.0, 2) == Approx(9.5930433019308030452).epsilon(1e-13));
  CHECK(su11::count_threshold(0.0, 1) == 0.0);
  for (int k = 1; k <= 6; ++k) {
    for (double w = 0.1; w < 5; w += 0.37) {
      const double t = su11::count_threshold(w, k), g = std::sqrt(w * w + 1) - 1;
      CHECK(t > pi * k * g);
      CHECK(t < pi * (k + 0.5) * g);
      const double x = su11::chi(k), R = std::sqrt(w * w + x * x + w * w * x * x);
      CHECK(t == Approx(R - std::atan(R) - pi * k).epsilon(1e-12));
    }
  }
}

TEST_CASE("geodesic counts", "[sr]") {
  CHECK(su11::count_geodesics_cover(CoverPoint{1.5, 0}).kind == GeodesicCount::Kind::UncountableGeomCountable);
  CHECK(su11::count_geodesics_cover(CoverPoint{0, cplx(2, 1)}) == GeodesicCount::finite(1));
  CHECK(su11::count_geodesics_cover(CoverPoint{2.0, 1.0}) == GeodesicCount::finite(3));
  CHECK(su11::count_geodesics_cover(CoverPoint{-2.0, cplx(0, -1)}) == GeodesicCount::finite(3));
  CHECK(su11::count_geodesics_cover(CoverPoint{1.0, 1.0}) == GeodesicCount::finite(1));
  CHECK(su11::count_geodesics_cover(CoverPoint{3.3, 1.0}) == GeodesicCount::finite(5));
  CHECK_THROWS_AS(su11::count_geodesics_cover(CoverPoint{0, 0}), su11::DomainError);
  for (int k = 1; k <= 3; ++k) {
    for (double w : {0.5, 1.0, 2.0}) {
      const double t = su11::count_threshold(w, k);
      CHECK(su11::count_geodesics_cover(CoverPoint{t - 1e-6, w}) == GeodesicCount::finite(2 * k - 1));
      CHECK(su11::count_geodesics_cover(CoverPoint{t, w}) == GeodesicCount::finite(2 * k));
      CHECK(su11::count_geodesics_cover(CoverPoint{-(t + 1e-6), w}) == GeodesicCount::finite(2 * k + 1));
    }
  }
  // many geodesics near the vertical line
  CHECK(su11::count_geodesics_cover(CoverPoint{2.0, 0.05}).n > 100);
}

TEST_CASE("SR distance cases", "[sr]") {
  for (double w : {0.3, 1.0, 4.0}) {
    const auto b = su11::sr_distance_cover(CoverPoint{0, w});
    CHECK(b.case_tag == DistanceCase::HorizontalB);
    CHECK(b.value == Approx(std::asinh(w)).epsilon(1e-14));
    const auto d = su11::sr_distance_cover(CoverPoint{w - std::atan(w), cplx(0, w)});
    CHECK(d.case_tag == DistanceCase::Boundary_d);
    CHECK(d.value == Approx(w).epsilon(1e-14));
  }
  // enumeration oracle (all geodesics, minimum length) and mpmath
  const auto e = su11::sr_distance_cover(CoverPoint{0.5, 1.0});
  CHECK(e.case_tag == DistanceCase::BetaHigh_e);
  CHECK(e.value == Approx(1.3588040074855896863).epsilon(1e-12));
  CHECK(*e.beta == Approx(1.3912863061257106178).epsilon(1e-12));
  struct Ref {
    double c, w, value;
    DistanceCase tag;
  };
  const Ref refs[] = {{0.1, 1.0, 0.9093333371912241, DistanceCase::BetaLow_c},
                      {0.2, 2.0, 1.4793903093309693, DistanceCase::BetaLow_c},
                      {0.05, 0.3, 0.4052138711320514, DistanceCase::BetaHigh_e},
                      {1.0, 1.0, 2.058828960506675, DistanceCase::BetaHigh_f},
                      {3.0, 1.0, 4.529622818528484, DistanceCase::BetaHigh_f},
                      {2.0, 0.5, 3.6174451659762252, DistanceCase::BetaHigh_f}};
  for (const auto& r : refs) {
    const auto res = su11::sr_distance_cover(CoverPoint{-r.c, std::polar(r.w, 0.7)});
    CHECK(res.case_tag == r.tag);
    CHECK(res.value == Approx(r.value).epsilon(1e-11));
    REQUIRE(res.beta);
    if (r.tag == DistanceCase::BetaLow_c) {
      CHECK(*res.beta > 0);
      CHECK(*res.beta < 1);
    } else {
      CHECK(*res.beta > 1);
      CHECK(*res.beta <= std::sqrt(r.w * r.w + 1) / r.w);
    }
  }
  const auto a = su11::sr_distance_cover(CoverPoint{1.0, 0});
  CHECK(a.case_tag == DistanceCase::VerticalA);
  CHECK(a.value == Approx(std::sqrt(1 + 2 * pi)).epsilon(1e-14));
  CHECK(a.paper_value == 1.0);
  CHECK_THROWS_AS(su11::sr_distance_cover(CoverPoint{0, 0}), su11::DomainError);
}

TEST_CASE("SR distance is continuous across region boundaries", "[sr]") {
  for (double w : {0.2, 1.0, 3.0}) {
    const double b1 = w - std::atan(w), b2 = pi / 2 * (std::sqrt(w * w + 1) - 1);
    for (double b : {b1, b2}) {
      const double lo = su11::sr_distance_cover(CoverPoint{b - 1e-7, w}).value;
      const double hi = su11::sr_distance_cover(CoverPoint{b + 1e-7, w}).value;
      CHECK(std::abs(hi - lo) < 1e-5);
      CHECK(hi >= lo);
    }
  }
}

TEST_CASE("SR distance on SU(1,1)", "[sr]") {
  CHECK(su11::sr_distance_matrix(MatrixPoint{std::sqrt(2.0), 1}) == Approx(std::asinh(1.0)).epsilon(1e-14));
  CHECK(su11::sr_distance_matrix(MatrixPoint{-1, 0}) == su11::sr_distance_cover(CoverPoint{pi, 0}).value);
  const cplx w(0.4, -0.9);
  const double n = std::sqrt(1 + std::norm(w));
  const double d0 = su11::sr_distance_matrix(MatrixPoint{n, w});
  CHECK(su11::sr_distance_matrix(MatrixPoint{n * std::polar(1.0, 1e-8), w}) == Approx(d0).epsilon(1e-6));
  CHECK(su11::sr_distance_matrix(MatrixPoint{n * std::polar(1.0, -1e-8), w}) == Approx(d0).epsilon(1e-6));
  CHECK_THROWS_AS(su11::sr_distance_matrix(MatrixPoint{1, 0}), su11::DomainError);
}

TEST_CASE("cut locus", "[sr]") {
  CHECK(su11::cut_locus_member_cover(CoverPoint{1, 0}));
  CHECK_FALSE(su11::cut_locus_member_cover(CoverPoint{1, 0.1}));
  CHECK_FALSE(su11::cut_locus_member_cover(CoverPoint{0, 0}));
  CHECK(su11::cut_locus_member_matrix(MatrixPoint{std::polar(1.0, pi / 3), 0}));
  CHECK(su11::cut_locus_member_matrix(MatrixPoint{-std::sqrt(1.25), 0.5}));
  CHECK_FALSE(su11::cut_locus_member_matrix(MatrixPoint{std::sqrt(1.25), 0.5}));
  CHECK_FALSE(su11::cut_locus_member_matrix(MatrixPoint{1, 0}));
}

TEST_CASE("conjugate locus", "[sr]") {
  CHECK(su11::conjugate_locus_c(0.0, 1) == 0.0);
  CHECK(su11::conjugate_locus_c(1.0, 1) == su11::count_threshold(1.0, 1));
  for (int j = 1; j <= 8; ++j) {
    double prev = -1;
    for (double w = 0; w <= 3; w += 0.05) {
      const double c = su11::conjugate_locus_c(w, j);
      CHECK(c > prev);
      if (j > 1) CHECK((w == 0 || c > su11::conjugate_locus_c(w, j - 1)));
      prev = c;
    }
  }
  for (int j = 1; j <= 4; ++j) {
    for (int sign : {1, -1}) {
      for (double w : {0.0, 0.3, 1.7}) {
        const cplx z1 = su11::conjugate_locus_matrix_z1(w, j, sign);
        CHECK(std::norm(z1) - w * w == Approx(1).epsilon(1e-9));
        const auto g = su11::cover_to_matrix(CoverPoint{sign * su11::conjugate_locus_c(w, j), w});
        CHECK(std::abs(g.z1 - z1) < 1e-9);
      }
    }
  }
  const double x = su11::chi(1);
  const cplx z = su11::conjugate_locus_matrix_z1(0.0, 1, 1);
  CHECK(std::abs(z - (-(cplx(1, -x) * std::polar(1.0, x)) / std::sqrt(1 + x * x))) < 1e-14);
}

TEST_CASE("Jacobian determinant of exp_sr", "[sr]") {
  CHECK(su11::jac_det_exp_sr(AlgebraVector{1, 0, 0}) == Approx(0.43233235838169365405).epsilon(1e-14));
  CHECK(std::abs(su11::jac_det_exp_sr(with_alpha(0.7, -pi * pi))) < 1e-14);
  CHECK(std::abs(su11::jac_det_exp_sr(with_alpha(0.7, -std::pow(su11::chi(1), 2)))) < 1e-13);
  CHECK_THROWS_AS(su11::jac_det_exp_sr(AlgebraVector{3, 4, 5}), su11::DomainError);
  CHECK_THROWS_AS(su11::jac_det_exp_sr(AlgebraVector{0, 0, 5}), su11::DomainError);
  // central differences in (theta, r, a3)
  auto endpoint = [](double th, double r, double a3) {
    const auto p = su11::exp_sr(AlgebraVector{r * std::cos(th), r * std::sin(th), a3});
    return std::array<double, 3>{p.c, p.w.real(), p.w.imag()};
  };
  for (auto [th, r, a3] : {std::array<double, 3>{0.3, 1, 0.5}, {1, 2, 3}, {0.2, 0.5, 2.0}, {0.1, 1.5, 1.2}, {2.0, 0.3, 7.0}}) {
    const double h = 1e-6;
    double J[3][3];
    const double x[3] = {th, r, a3};
    for (int i = 0; i < 3; ++i) {
      double xp[3] = {x[0], x[1], x[2]}, xm[3] = {x[0], x[1], x[2]};
      xp[i] += h;
      xm[i] -= h;
      const auto fp = endpoint(xp[0], xp[1], xp[2]), fm = endpoint(xm[0], xm[1], xm[2]);
      for (int m = 0; m < 3; ++m) J[m][i] = (fp[m] - fm[m]) / (2 * h);
    }
    const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                       J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    CHECK(det == Approx(su11::jac_det_exp_sr(AlgebraVector{r * std::cos(th), r * std::sin(th), a3})).epsilon(1e-6).margin(1e-8));
  }
}

TEST_CASE("count bisection agrees with a linear scan", "[sr]") {
  for (auto [c, w] : {std::pair{1.0, 1e-3}, {0.37, 4e-3}, {5.0, 2e-3}}) {
    long long k = 0;
    while (su11::count_threshold(w, k + 1) <= c) ++k;
    CHECK(su11::count_geodesics_cover(CoverPoint{c, w}) == GeodesicCount::finite(2 * k + 1));
  }
  CHECK_THROWS_AS(su11::count_geodesics_cover(CoverPoint{1.0, 1e-200}), su11::NumericalFailure);
}
