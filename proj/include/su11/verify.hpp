#ifndef SU11_VERIFY_HPP
#define SU11_VERIFY_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "su11/errors.hpp"
#include "su11/group.hpp"
#include "su11/oracles.hpp"
#include "su11/scalar_kernels.hpp"
#include "su11/sl_geometry.hpp"
#include "su11/sr_geometry.hpp"
#include "su11/types.hpp"

namespace su11::verify {

/** @brief One invariant check: metric compared with tolerance by relation. */
struct Check {
  /** @brief Acceptance criterion number, 1 to 10. */
  int criterion = 0;
  std::string id;
  bool pass = false;
  double metric = 0;
  double tolerance = 0;
  /** @brief "<=" or ">=". */
  std::string relation = "<=";
  std::string detail;
};

/** @brief Sample sizes and oracle settings for the suites. */
struct VerifyOptions {
  std::uint64_t seed = 1;
  /** @brief Reduced sample sizes. */
  bool quick = false;
  /** @brief Adds wall-clock checks; off by default so records are reproducible. */
  bool timing = false;
  ShootingConfig shooting{};
};

/** @brief Checks of one or more suites plus the docket when it was run. */
struct SuiteResult {
  std::vector<Check> checks;
  std::vector<Adjudication> adjudications;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

namespace detail {

inline constexpr double pi = std::numbers::pi;

inline Check at_most(int criterion, std::string id, double metric, double tol, std::string detail = {}) {
  return {criterion, std::move(id), metric <= tol, metric, tol, "<=", std::move(detail)};
}

inline Check at_least(int criterion, std::string id, double metric, double tol, std::string detail = {}) {
  return {criterion, std::move(id), metric >= tol, metric, tol, ">=", std::move(detail)};
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string num(double v, const char* f = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline double matrix_gap(const MatrixPoint& a, const MatrixPoint& b) {
  return (std::abs(a.z1 - b.z1) + std::abs(a.z2 - b.z2)) / (1 + std::abs(b.z1));
}

inline double component_gap(const AlgebraVector& a, const AlgebraVector& b) {
  return std::max({std::abs(a.a1 - b.a1), std::abs(a.a2 - b.a2), std::abs(a.a3 - b.a3)});
}

inline AlgebraVector random_timelike(std::mt19937_64& rng, double amax) {
  std::uniform_real_distribution<double> d1(-amax, amax), dr(0.05, amax), dth(-1.5, 1.5);
  const double r = dr(rng), th = dth(rng);
  return {d1(rng), r * std::sinh(th), r * std::cosh(th)};
}

// cover point with SL chart values (k, s, x1, y2)
inline CoverPoint sl_chart_point(long long k, double s, double x1, double y2, int sign) {
  const double c = -pi * static_cast<double>(k) + std::arg(cplx(x1, -std::sqrt(s * s + y2 * y2)));
  return {c, cplx(sign * std::sqrt(std::max(x1 * x1 + s * s - 1, 0.0)), y2)};
}

inline double order_estimate(HamiltonianKind kind, const AlgebraVector& a) {
  const auto exact = kind == HamiltonianKind::SR_D ? sr_geodesic_cover(a, 3.0) : sl_geodesic_cover(a, 3.0);
  auto err = [&](int n) {
    const auto tr = integrate_normal_geodesic(kind, initial_covector(kind, a), 3.0, n);
    return cover_residual(tr.g.back(), exact);
  };
  return std::log2(err(300) / err(600));
}

inline Check rk4_order(HamiltonianKind kind, const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed + 10);
  std::uniform_real_distribution<double> u(-1, 1);
  const int n = o.quick ? 3 : 10;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    // |a3| >= 0.5 (SR) and |a1| >= 0.3 (SL) keep the error above the roundoff floor at 600 steps
    const AlgebraVector a = kind == HamiltonianKind::SR_D
                                ? AlgebraVector{u(rng), u(rng), std::copysign(0.5 + std::abs(u(rng)), u(rng))}
                                : AlgebraVector{std::copysign(0.3 + 0.7 * std::abs(u(rng)), u(rng)), 0.5 * u(rng), 1 + std::abs(u(rng))};
    worst = std::min(worst, order_estimate(kind, a));
  }
  const char* id = kind == HamiltonianKind::SR_D ? "rk4-order-sr" : "rk4-order-sl";
  return at_least(10, id, worst, 3.7, "minimum measured order over " + std::to_string(n) + " initial covectors");
}

}  // namespace detail

/** @brief Group law, exponential maps, C/S identity and spectral constants. */
inline std::vector<Check> algebra_suite(const VerifyOptions& o) {
  using namespace detail;
  std::vector<Check> out;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> uc(-2 * pi, 2 * pi), uw(-2, 2), ua(-40, 10), ut(0, 3);
  const int n = o.quick ? 1000 : 10000;
  const auto t0 = std::chrono::steady_clock::now();
  auto point = [&] { return CoverPoint{uc(rng), cplx(uw(rng), uw(rng))}; };
  double assoc = 0, hom = 0, cs = 0;
  for (int i = 0; i < n; ++i) {
    const auto p = point(), q = point(), r = point();
    assoc = std::max(assoc, cover_residual(cover_mul(cover_mul(p, q), r), cover_mul(p, cover_mul(q, r))));
    hom = std::max(hom, matrix_gap(cover_to_matrix(cover_mul(p, q)), mat_mul(cover_to_matrix(p), cover_to_matrix(q))));
    const AlgebraVector a{uw(rng), uw(rng), uw(rng)};
    hom = std::max(hom, matrix_gap(cover_to_matrix(exp_cover(a)), exp_matrix(a)));
    const double al = ua(rng), t = ut(rng), C = cfun(al, t), S = sfun(al, t);
    cs = std::max(cs, std::abs(C * C - al * S * S - 1) / std::max(1.0, C * C));
  }
  const double elapsed = seconds_since(t0);
  const std::string samples = std::to_string(n) + " samples";
  out.push_back(at_most(1, "group-associativity", assoc, 1e-10, samples));
  out.push_back(at_most(1, "group-homomorphism", hom, 1e-10, samples + ", cover to matrix and exp_cover to exp_matrix"));
  out.push_back(at_most(1, "cs-identity", cs, 1e-10, samples + ", relative to max(1, C^2)"));
  if (o.timing) out.push_back(at_most(1, "algebra-runtime-s", elapsed, 5.0));

  long double chi_res = 0, om_res = 0;
  double om_sin = 0;
  for (long long k = 1; k <= 50; ++k) {
    const long double x = chi<long double>(k), w = omega<long double>(k);
    chi_res = std::max(chi_res, std::abs(std::tan(x) - x));
    om_res = std::max(om_res, std::abs(w / std::sqrt((1 - w) * (1 + w)) - std::asin(w) - std::numbers::pi_v<long double> * k));
    om_sin = std::max(om_sin, std::abs(omega(k) - std::abs(std::sin(chi(k)))));
  }
  out.push_back(at_most(2, "chi-residual", static_cast<double>(chi_res), 1e-12, "k <= 50, extended precision"));
  out.push_back(at_most(2, "omega-residual", static_cast<double>(om_res), 1e-12, "k <= 50, extended precision"));
  out.push_back(at_most(2, "omega-sin-chi", om_sin, 1e-10, "k <= 50"));
  return out;
}

/** @brief Sub-Riemannian closed forms against the shooting oracle. */
inline std::vector<Check> sr_suite(const VerifyOptions& o) {
  using namespace detail;
  std::vector<Check> out;
  std::mt19937_64 rng(o.seed + 1);
  std::uniform_real_distribution<double> u2(-2, 2), ut(0, 2);

  double fact = 0;
  for (int i = 0; i < 500; ++i) {
    const AlgebraVector a{u2(rng), u2(rng), u2(rng)};
    const double t = ut(rng);
    fact = std::max(fact, cover_residual(sr_geodesic_cover(a, t), cover_mul(exp_cover(a * t), exp_cover(AlgebraVector{0, 0, -t * a.a3}))));
  }
  out.push_back(at_most(3, "sr-factorization", fact, 1e-9, "500 samples"));

  // distance regions
  const auto t0 = std::chrono::steady_clock::now();
  std::uniform_real_distribution<double> uW(0.3, 2.5), uf(0.1, 0.9), ug(-pi, pi);
  const int per_case = o.quick ? 2 : 10;
  const struct {
    char tag;
    DistanceCase expected;
    double tol;
  } cases[] = {{'b', DistanceCase::HorizontalB, 1e-5},
               {'c', DistanceCase::BetaLow_c, 1e-4},
               {'d', DistanceCase::Boundary_d, 1e-5},
               {'e', DistanceCase::BetaHigh_e, 1e-4},
               {'f', DistanceCase::BetaHigh_f, 1e-4}};
  for (const auto& cs : cases) {
    double worst = 0;
    int wrong_case = 0;
    for (int i = 0; i < per_case; ++i) {
      const double W = uW(rng), n = std::sqrt(1 + W * W), b1 = W - std::atan(W), b2 = pi / 2 * W * W / (n + 1);
      const double sign = ug(rng) < 0 ? -1 : 1, f = uf(rng);
      double x = 0;
      switch (cs.tag) {
        case 'c': x = b1 * f; break;
        case 'd': x = b1; break;
        case 'e': x = b1 + (b2 - b1) * f; break;
        case 'f': x = b2 + 2 * f; break;
        default: break;
      }
      const CoverPoint p{sign * x, std::polar(W, ug(rng))};
      const auto d = sr_distance_cover(p);
      if (d.case_tag != cs.expected) ++wrong_case;
      const auto rep = shoot_sr(p, o.shooting);
      const double gap = rep.found_count ? std::abs(rep.min_length - d.value) : std::numeric_limits<double>::infinity();
      worst = std::max(worst, gap);
    }
    if (wrong_case) worst = std::numeric_limits<double>::infinity();
    out.push_back(at_most(4, std::string("distance-case-") + cs.tag, worst, cs.tol,
                          std::to_string(per_case) + " points, |oracle min length - closed form|" +
                              (wrong_case ? ", " + std::to_string(wrong_case) + " points outside the region" : "")));
  }
  if (o.timing) out.push_back(at_most(4, "distance-runtime-s", seconds_since(t0), 120.0));

  // counts straddling the k = 1, 2 thresholds
  std::vector<CoverPoint> pts{{3.5, 1}};
  for (double W : o.quick ? std::vector<double>{1.0} : std::vector<double>{1.0, 0.6})
    for (long long k = 1; k <= 2; ++k)
      for (double off : {-0.05, 0.0, 0.05}) pts.push_back({count_threshold(W, k) + off, W});
  int mismatches = 0;
  std::vector<bool> seen(6, false);
  std::string counts;
  for (const auto& p : pts) {
    const auto lib = count_geodesics_cover(p);
    const auto rep = shoot_sr(p, o.shooting);
    if (lib.kind != GeodesicCount::Kind::Finite || lib.n != rep.found_count) ++mismatches;
    if (rep.found_count >= 1 && rep.found_count <= 5) seen[rep.found_count] = true;
    counts += (counts.empty() ? "" : " ") + std::to_string(rep.found_count);
  }
  const bool coverage = seen[1] && seen[2] && seen[3] && seen[5];
  out.push_back(at_most(5, "count-oracle", mismatches + (coverage ? 0 : 1), 0,
                        std::to_string(pts.size()) + " points, oracle counts " + counts));
  double fold = 0;
  for (double W : o.quick ? std::vector<double>{1.0} : std::vector<double>{0.3, 0.6, 1.0, 2.0}) {
    const auto f = sr_fold_values(W, 2, o.shooting);
    for (long long k = 1; k <= 2; ++k)
      fold = std::max(fold, f.size() == 2 ? std::abs(f[k - 1] - count_threshold(W, k)) : std::numeric_limits<double>::infinity());
  }
  out.push_back(at_most(5, "count-threshold", fold, 1e-6, "fold search along |w| = const, k = 1, 2"));

  // conjugate points: zeros of the finite-difference determinant
  double zero_gap = 0;
  for (long long j = 1; j <= (o.quick ? 2 : 3); ++j) {
    for (double r : {0.5, 1.2}) {
      const double x = chi(j);
      auto det = [&](double a3) { return fd_jacobian_expsr(AlgebraVector{r, 0, a3}, 1e-5).det; };
      double lo = std::hypot(r, x - 0.05), hi = std::hypot(r, x + 0.05);
      const bool neg = det(lo) < 0;
      if (neg == (det(hi) < 0)) {
        zero_gap = std::numeric_limits<double>::infinity();
        continue;
      }
      for (int it = 0; it < 60; ++it) {
        const double mid = (lo + hi) / 2;
        ((det(mid) < 0) == neg ? lo : hi) = mid;
      }
      zero_gap = std::max(zero_gap, std::abs((lo + hi) / 2 - std::hypot(r, x)));
    }
  }
  out.push_back(at_most(6, "jacobian-zeros", zero_gap, 1e-5, "a3 of the sign change against alpha = -chi_j^2"));
  int violations = 0;
  const int nw = 301;
  for (long long j = 1; j <= 8; ++j) {
    if (conjugate_locus_c(0.0, j) != 0) ++violations;
    double prev = 0;
    for (int i = 1; i < nw; ++i) {
      const double W = 3.0 * i / (nw - 1), c = conjugate_locus_c(W, j);
      if (!(c > prev)) ++violations;
      if (j > 1 && !(c > conjugate_locus_c(W, j - 1))) ++violations;
      prev = c;
    }
  }
  out.push_back(at_most(6, "conjugate-locus-curves", violations, 0, "j = 1..8, |w| in [0, 3], monotone and ordered"));

  out.push_back(rk4_order(HamiltonianKind::SR_D, o));
  return out;
}

/** @brief Sub-Lorentzian inversion, classification and futures. */
inline std::vector<Check> sl_suite(const VerifyOptions& o) {
  using namespace detail;
  std::vector<Check> out;
  std::mt19937_64 rng(o.seed + 2);
  std::uniform_real_distribution<double> u2(-2, 2), ut(0, 2);

  double fact = 0;
  for (int i = 0; i < 500; ++i) {
    const AlgebraVector a{u2(rng), u2(rng), u2(rng)};
    const double t = ut(rng);
    fact = std::max(fact, cover_residual(sl_geodesic_cover(a, t), cover_mul(exp_cover(a * t), exp_cover(AlgebraVector{-t * a.a1, 0, 0}))));
  }
  out.push_back(at_most(3, "sl-factorization", fact, 1e-9, "500 samples"));

  // round trip
  const int nrt = o.quick ? 20 : 100;
  double rt = 0;
  int failures = 0;
  for (int i = 0; i < nrt;) {
    const AlgebraVector a = random_timelike(rng, 2.3);
    if (std::sqrt(a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3) > 4) continue;
    ++i;
    try {
      const auto sols = sl_solve_initial(sl_geodesic_cover(a, 1.0));
      double best = std::numeric_limits<double>::infinity();
      for (const auto& b : sols.initial) best = std::min(best, component_gap(a, b));
      rt = std::max(rt, best);
    } catch (const NumericalFailure&) {
      ++failures;
      rt = std::numeric_limits<double>::infinity();
    }
  }
  out.push_back(at_most(7, "sl-round-trip", rt, 1e-7,
                        std::to_string(nrt) + " covectors, |a| <= 4, max component error" +
                            (failures ? ", " + std::to_string(failures) + " inversion failures" : "")));

  // constructed A, B, C, Xi members
  std::uniform_real_distribution<double> u(0.1, 0.9), dy(-1, 1);
  int bad = 0, members = 0;
  auto expect = [&](const CoverPoint& p, SLClass cls) {
    ++members;
    try {
      const auto got = sl_classify(p);
      const auto sols = sl_solve_initial(p);
      const bool ok = cls == SLClass::CountableXi ? sols.free_theta && sols.initial.size() == 1
                                                 : static_cast<int>(sols.initial.size()) == expected_geodesics(cls);
      if (got != cls || !ok) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  };
  for (long long k = 1; k <= 3; ++k) {
    const double om = omega(k);
    for (int i = 0; i < 2; ++i) {
      const int sign = i % 2 ? 1 : -1;
      const double s = om + (1 - om) * u(rng), q = std::sqrt(1 - s * s), F = bigF(s, om), y2 = dy(rng);
      expect(sl_chart_point(k, s, q + (F - q) * u(rng), y2, sign), SLClass::ThreeC);
      expect(sl_chart_point(k, s, F + u(rng), y2, sign), SLClass::UniqueA);
      const double s2 = 1 + 0.3 * u(rng);
      expect(sl_chart_point(k, s2, bigF(s2, om) - 2 * u(rng), y2, sign), SLClass::TwoB);
      expect(CoverPoint{-pi * static_cast<double>(k), 2 * dy(rng)}, SLClass::CountableXi);
    }
  }
  out.push_back(at_most(7, "sl-cardinalities", bad, 0, std::to_string(members) + " constructed members, 6 per class"));

  // futures
  const int nb = o.quick ? 200 : 1000;
  std::uniform_real_distribution<double> ua3(0.05, 1.5), ua2(-0.98, 0.98), udh(0.05, 1.0);
  std::uniform_int_distribution<int> npieces(1, 8);
  int outside = 0;
  for (int i = 0; i < nb; ++i) {
    CoverPoint g{};
    for (int j = npieces(rng); j > 0; --j) {
      const double a3 = ua3(rng), a2 = ua2(rng) * a3, dh = udh(rng);
      g = cover_mul(g, exp_cover(AlgebraVector{0, a2 * dh, a3 * dh}));
    }
    if (!in_future_sublorentz(g)) ++outside;
  }
  out.push_back(at_most(8, "broken-curves-in-future", outside, 0, std::to_string(nb) + " horizontal timelike broken curves"));
  const int ng = o.quick ? 60 : 200;
  int nest = 0;
  for (double y : {0.0, 0.8})
    for (int i = 0; i < ng; ++i)
      for (int j = 0; j < ng; ++j) {
        const CoverPoint p{-1.5 * pi + (1.5 * pi + 0.5) * j / (ng - 1), cplx(-3 + 6.0 * i / (ng - 1), y)};
        if (in_future_sublorentz(p) && !in_future_lorentz(p)) ++nest;
        if (causal_future_member(p, Causality::SubLorentz) && !causal_future_member(p, Causality::Lorentz)) ++nest;
      }
  out.push_back(at_most(8, "future-nesting", nest, 0, std::to_string(ng) + "x" + std::to_string(ng) + " grid in (Re w, c) at Im w = 0, 0.8"));
  double touch = 0, off_axis = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    const double y = -5 + 10.0 * i / 1000;
    touch = std::max(touch, std::abs(su11::detail::sublorentz_threshold(cplx(0, y)) + std::atan(std::abs(y))));
    const cplx w(1e-3, y);
    off_axis = std::min(off_axis, -std::atan(std::abs(w)) - su11::detail::sublorentz_threshold(w));
  }
  out.push_back(at_most(8, "future-tangency", off_axis > 0 ? touch : std::numeric_limits<double>::infinity(), 1e-9,
                        "boundaries on Re w = 0; off-axis gap at Re w = 1e-3 is " + num(off_axis)));

  out.push_back(rk4_order(HamiltonianKind::SL_E, o));
  double mom = 0;
  std::uniform_real_distribution<double> um(-1, 1);
  for (int i = 0; i < (o.quick ? 2 : 5); ++i) {
    const AlgebraVector a{um(rng), 0.5 * um(rng), 1 + std::abs(um(rng))};
    const auto p0 = initial_covector(HamiltonianKind::SL_E, a);
    const auto tr = integrate_normal_geodesic(HamiltonianKind::SL_E, p0, 2.0, 2000);
    for (std::size_t s = 0; s < tr.t.size(); s += 20) {
      const double t = tr.t[s], ch = std::cosh(2 * p0[0] * t), sh = std::sinh(2 * p0[0] * t);
      mom = std::max({mom, std::abs(tr.p[s][0] - p0[0]), std::abs(tr.p[s][1] - (p0[1] * ch - p0[2] * sh)),
                      std::abs(tr.p[s][2] - (p0[2] * ch - p0[1] * sh))});
    }
  }
  out.push_back(at_most(10, "sl-momenta", mom, 1e-9, "RK4 momenta against the hyperbolic closed forms"));
  return out;
}

/** @brief Runs the docket; the check only asserts completeness. */
inline SuiteResult adjudicate_suite() {
  SuiteResult res;
  res.adjudications = adjudicate_claims();
  const char* ids[] = {"vertical-distance", "length-formula-sign", "lorentz-distance", "lorentz-reach-sign"};
  int malformed = res.adjudications.size() == 4 ? 0 : 4;
  for (std::size_t i = 0; i < std::min<std::size_t>(4, res.adjudications.size()); ++i) {
    const auto& a = res.adjudications[i];
    if (a.claim_id != ids[i] || a.verdict.empty() || a.checks.empty()) ++malformed;
    for (const auto& c : a.checks)
      if (!std::isfinite(c.oracle_value) || !std::isfinite(c.paper_value) || c.delta != std::abs(c.paper_value - c.oracle_value))
        ++malformed;
  }
  res.checks.push_back(detail::at_most(9, "docket-complete", malformed, 0, "4 verdicts with claimed value, oracle value, delta"));
  return res;
}

/** @brief Suite by name: algebra, sr, sl, adjudicate or all. */
inline SuiteResult run_suite(const std::string& name, const VerifyOptions& o) {
  SuiteResult res;
  auto append = [&](std::vector<Check> c) { res.checks.insert(res.checks.end(), c.begin(), c.end()); };
  const bool all = name == "all";
  if (!all && name != "algebra" && name != "sr" && name != "sl" && name != "adjudicate")
    throw DomainError("run_suite: unknown suite " + name);
  if (all || name == "algebra") append(algebra_suite(o));
  if (all || name == "sr") append(sr_suite(o));
  if (all || name == "sl") append(sl_suite(o));
  if (all || name == "adjudicate") {
    auto d = adjudicate_suite();
    append(d.checks);
    res.adjudications = std::move(d.adjudications);
  }
  return res;
}

/** @brief Markdown table of the docket, as embedded in the README. */
inline std::string docket_markdown(const std::vector<Adjudication>& adj) {
  auto g = [](double v) { return detail::num(v, "%.12g"); };
  std::string s = "| claim | point (c, w) | claimed value | oracle value | delta | verdict |\n";
  s += "|---|---|---|---|---|---|\n";
  for (const auto& a : adj) {
    const std::string word = a.verdict.substr(0, a.verdict.find(':'));
    for (const auto& c : a.checks) {
      s += "| " + a.claim_id + " | (" + detail::num(c.point.c) + ", " + detail::num(c.point.w.real()) + (c.point.w.imag() < 0 ? "" : "+") +
           detail::num(c.point.w.imag()) + "i) | " + g(c.paper_value) + " | " + g(c.oracle_value) + " | " + g(c.delta) + " | " + word +
           " |\n";
    }
  }
  s += "\n";
  for (const auto& a : adj) s += "- `" + a.claim_id + "`: " + a.claim + ". Verdict: " + a.verdict + ".\n";
  return s;
}

}  // namespace su11::verify

#endif  // SU11_VERIFY_HPP
