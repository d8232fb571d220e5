#ifndef SU11_ORACLES_HPP
#define SU11_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "su11/detail/roots.hpp"
#include "su11/errors.hpp"
#include "su11/group.hpp"
#include "su11/scalar_kernels.hpp"
#include "su11/sl_geometry.hpp"
#include "su11/sr_geometry.hpp"
#include "su11/types.hpp"

namespace su11 {

/** @brief Hamiltonian system: sub-Riemannian on span{X, Y} or sub-Lorentzian on span{Y, Z}. */
enum class HamiltonianKind { SR_D, SL_E };

/**
 * @brief Sampled solution (t, g(t), p(t)) of a normal Hamiltonian system.
 */
template <std::floating_point T>
struct BasicTrajectory {
  std::vector<T> t;
  std::vector<BasicCoverPoint<T>> g;
  std::vector<std::array<T, 3>> p;
  /** @brief Length of the projected curve, trapezoidal in the speed. */
  T length{};
};

using Trajectory = BasicTrajectory<double>;

/** @brief Initial covector of the normal geodesic with initial algebra vector a. */
template <std::floating_point T>
std::array<T, 3> initial_covector(HamiltonianKind kind, const BasicAlgebraVector<T>& a) {
  if (kind == HamiltonianKind::SR_D) return {a.a1, a.a2, a.a3};
  return {-a.a1, a.a2, -a.a3};
}

namespace detail {

// brackets [X, Y] = -2Z, [X, Z] = -2Y, [Y, Z] = 2X; p_j' = p([X_j, dH/dp])
template <std::floating_point T>
std::array<T, 3> momentum_rate(HamiltonianKind kind, const std::array<T, 3>& p) {
  if (kind == HamiltonianKind::SR_D) return {-2 * p[1] * p[2], 2 * p[0] * p[2], T(0)};
  return {T(0), -2 * p[0] * p[2], -2 * p[0] * p[1]};
}

// dH/dp as an algebra vector, the body velocity of g
template <std::floating_point T>
BasicAlgebraVector<T> body_velocity(HamiltonianKind kind, const std::array<T, 3>& p) {
  if (kind == HamiltonianKind::SR_D) return {p[0], p[1], T(0)};
  return {T(0), p[1], -p[2]};
}

template <std::floating_point T>
T speed(HamiltonianKind kind, const std::array<T, 3>& p) {
  if (kind == HamiltonianKind::SR_D) return std::hypot(p[0], p[1]);
  return std::sqrt(std::max(p[2] * p[2] - p[1] * p[1], T(0)));
}

template <std::floating_point T>
std::array<T, 3> axpy(const std::array<T, 3>& p, T h, const std::array<T, 3>& k) {
  return {p[0] + h * k[0], p[1] + h * k[1], p[2] + h * k[2]};
}

// commutator-free Lie-group RK4 on G x R^3: classical RK4 in p, two
// exponentials per step in g
template <std::floating_point T>
void cf4_step(HamiltonianKind kind, BasicCoverPoint<T>& g, std::array<T, 3>& p, T h) {
  const auto k1 = momentum_rate(kind, p);
  const auto p2 = axpy(p, h / 2, k1);
  const auto k2 = momentum_rate(kind, p2);
  const auto p3 = axpy(p, h / 2, k2);
  const auto k3 = momentum_rate(kind, p3);
  const auto p4 = axpy(p, h, k3);
  const auto k4 = momentum_rate(kind, p4);
  const auto u1 = body_velocity(kind, p), u2 = body_velocity(kind, p2);
  const auto u3 = body_velocity(kind, p3), u4 = body_velocity(kind, p4);
  const auto e1 = (u1 * T(-1) + u2 * T(2) + u3 * T(2) + u4 * T(3)) * (h / 12);
  const auto e2 = (u1 * T(3) + u2 * T(2) + u3 * T(2) + u4 * T(-1)) * (h / 12);
  g = cover_mul(cover_mul(g, exp_cover(e2)), exp_cover(e1));
  for (int j = 0; j < 3; ++j) p[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
}

template <std::floating_point T>
void check_admissible(HamiltonianKind kind, const std::array<T, 3>& p0) {
  if (kind == HamiltonianKind::SL_E && !(std::abs(p0[2]) > std::abs(p0[1]) && p0[2] < T(0)))
    throw DomainError("integrate_normal_geodesic: SL momentum requires |p3| > |p2| and p3 < 0");
}

}  // namespace detail

/**
 * @brief Fixed-step Lie-group RK4 integration of the normal Hamiltonian
 * system from the identity, sampled at every step.
 */
template <std::floating_point T>
BasicTrajectory<T> integrate_normal_geodesic(HamiltonianKind kind, const std::array<T, 3>& p0, T t_final, int steps) {
  if (!(t_final > T(0))) throw DomainError("integrate_normal_geodesic: requires T > 0");
  if (!(T(steps) >= 100 * t_final)) throw DomainError("integrate_normal_geodesic: requires steps >= 100 T");
  detail::check_admissible(kind, p0);
  BasicTrajectory<T> out;
  out.t.reserve(steps + 1);
  out.g.reserve(steps + 1);
  out.p.reserve(steps + 1);
  const T h = t_final / T(steps);
  BasicCoverPoint<T> g{};
  std::array<T, 3> p = p0;
  out.t.push_back(T(0));
  out.g.push_back(g);
  out.p.push_back(p);
  for (int i = 1; i <= steps; ++i) {
    const T v0 = detail::speed(kind, p);
    detail::cf4_step(kind, g, p, h);
    out.length += h / 2 * (v0 + detail::speed(kind, p));
    out.t.push_back(T(i) * h);
    out.g.push_back(g);
    out.p.push_back(p);
  }
  return out;
}

/**
 * @brief Endpoint and length of the normal geodesic at t = 1, without samples.
 */
template <std::floating_point T>
std::pair<BasicCoverPoint<T>, T> integrate_endpoint(HamiltonianKind kind, const std::array<T, 3>& p0, int steps) {
  if (steps < 100) throw DomainError("integrate_endpoint: requires steps >= 100");
  detail::check_admissible(kind, p0);
  const T h = T(1) / T(steps);
  BasicCoverPoint<T> g{};
  std::array<T, 3> p = p0;
  T length = 0;
  for (int i = 0; i < steps; ++i) {
    const T v0 = detail::speed(kind, p);
    detail::cf4_step(kind, g, p, h);
    length += h / 2 * (v0 + detail::speed(kind, p));
  }
  return {g, length};
}

/** @brief Endpoint mismatch |dc| + |dw| / (1 + |w_q|) in the cover. */
template <std::floating_point T>
T cover_residual(const BasicCoverPoint<T>& p, const BasicCoverPoint<T>& q) {
  return std::abs(p.c - q.c) + std::abs(p.w - q.w) / (T(1) + std::abs(q.w));
}

/** @brief Default step count for endpoint verification of initial vector a. */
template <std::floating_point T>
int ode_steps_for(const BasicAlgebraVector<T>& a) {
  const T m = std::abs(a.a1) + std::abs(a.a2) + std::abs(a.a3);
  return static_cast<int>(std::min<T>(T(2'000'000), 400 * (T(1) + m)));
}

/**
 * @brief Grid sizes and tolerances of the shooting oracles.
 *
 * For SR targets grid_theta spans the direction angle atan(a3 / r) and
 * grid_beta the length r in (0, t_max]. For SL targets they span a1 in
 * [-a1_max, a1_max] and the Lorentzian speed in (0, t_max]. For Lorentzian
 * one-parameter subgroups they span the rapidity and the length.
 */
struct ShootingConfig {
  int grid_theta = 720;
  int grid_beta = 2000;
  double t_max = 30;
  double endpoint_tol = 1e-8;
  double dedup_tol = 1e-4;
  /** @brief Grid residual below which a local minimum is refined. */
  double refine_tol = 0.05;
  double a1_max = 12;
  /** @brief Worker threads for the grid scan, 0 for hardware concurrency. */
  unsigned threads = 0;

  void validate() const {
    if (grid_theta < 8 || grid_beta < 8) throw DomainError("ShootingConfig: resolutions must be >= 8");
    if (!(endpoint_tol > 0 && dedup_tol > 0 && refine_tol > 0 && t_max > 0 && a1_max > 0))
      throw DomainError("ShootingConfig: tolerances and ranges must be positive");
  }
};

/** @brief One geodesic found by a shooting oracle. */
template <std::floating_point T>
struct BasicOracleSolution {
  BasicAlgebraVector<T> a;
  T length{};
  /** @brief Cover residual of the independently integrated endpoint. */
  T endpoint_residual{};
};

/** @brief Claimed value against oracle value at one point. */
template <std::floating_point T>
struct BasicAdjudicationCheck {
  BasicCoverPoint<T> point;
  T paper_value{};
  T oracle_value{};
  T delta{};
};

/** @brief Verdict on one docketed claim. */
template <std::floating_point T>
struct BasicAdjudication {
  std::string claim_id;
  std::string claim;
  /** @brief First entry is the primary point. */
  std::vector<BasicAdjudicationCheck<T>> checks;
  std::string verdict;

  T paper_value() const { return checks.front().paper_value; }
  T oracle_value() const { return checks.front().oracle_value; }
  T delta() const { return checks.front().delta; }
};

/** @brief Outcome of a shooting run. */
template <std::floating_point T>
struct BasicOracleReport {
  BasicCoverPoint<T> target;
  int found_count = 0;
  /** @brief Shortest length found, NaN when nothing was found. */
  T min_length = std::numeric_limits<T>::quiet_NaN();
  /** @brief Longest length found, NaN when nothing was found. */
  T max_length = std::numeric_limits<T>::quiet_NaN();
  /** @brief Each solution stands for a one-parameter family (free angle). */
  bool continuous_family = false;
  std::vector<BasicOracleSolution<T>> solutions;
  std::vector<BasicAdjudication<T>> adjudications;
};

using OracleSolution = BasicOracleSolution<double>;
using AdjudicationCheck = BasicAdjudicationCheck<double>;
using Adjudication = BasicAdjudication<double>;
using OracleReport = BasicOracleReport<double>;

namespace detail {

// grid residual norms, rows split across workers
template <std::floating_point T, class F>
std::vector<T> scan_grid(F&& norm, const std::vector<T>& us, const std::vector<T>& vs, unsigned threads) {
  const std::size_t nu = us.size(), nv = vs.size();
  std::vector<T> out(nu * nv);
  unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(nu));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < nu; i += nt)
      for (std::size_t j = 0; j < nv; ++j) {
        const T r = norm(us[i], vs[j]);
        out[i * nv + j] = std::isnan(r) ? std::numeric_limits<T>::infinity() : r;
      }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nt; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  return out;
}

// local minima of the grid norm that may hide a root, in grid order
template <std::floating_point T>
std::vector<std::array<T, 2>> grid_candidates(const std::vector<T>& vals, const std::vector<T>& us,
                                              const std::vector<T>& vs, T refine_tol) {
  const std::ptrdiff_t nu = us.size(), nv = vs.size();
  std::vector<std::array<T, 2>> out;
  for (std::ptrdiff_t i = 0; i < nu; ++i) {
    for (std::ptrdiff_t j = 0; j < nv; ++j) {
      const T f = vals[i * nv + j];
      if (!std::isfinite(f)) continue;
      bool is_min = true;
      T var = 0;
      for (std::ptrdiff_t di = -1; di <= 1 && is_min; ++di) {
        for (std::ptrdiff_t dj = -1; dj <= 1; ++dj) {
          const std::ptrdiff_t a = i + di, b = j + dj;
          if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= nu || b >= nv) continue;
          const T g = vals[a * nv + b];
          if (g < f) {
            is_min = false;
            break;
          }
          if (std::isfinite(g)) var = std::max(var, g - f);
        }
      }
      if (is_min && (f <= refine_tol || f <= var)) out.push_back({us[i], vs[j]});
    }
  }
  return out;
}

template <std::floating_point T>
std::vector<T> linspace(T lo, T hi, int n) {
  std::vector<T> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * T(i) / T(n - 1);
  return out;
}

/**
 * Levenberg-Marquardt on a square or overdetermined residual with a central
 * finite-difference Jacobian. Pure Gauss-Newton steps are tried first; the
 * damping takes over where the Jacobian degenerates (folds, conjugate points).
 */
template <std::floating_point T, int N, int M, class F>
std::optional<std::array<T, N>> solve_lm(F&& f, std::array<T, N> x, T tol, int max_iter = 120) {
  using Vec = Eigen::Matrix<T, M, 1>;
  using Jac = Eigen::Matrix<T, M, N>;
  auto eval = [&](const std::array<T, N>& y) -> std::optional<Vec> {
    const std::array<T, M> r = f(y);
    Vec v;
    for (int m = 0; m < M; ++m) {
      if (!std::isfinite(r[m])) return std::nullopt;
      v(m) = r[m];
    }
    return v;
  };
  auto fx = eval(x);
  if (!fx) return std::nullopt;
  T lambda = 0;
  for (int it = 0; it < max_iter; ++it) {
    const T norm = fx->norm();
    if (norm <= tol) return x;
    Jac J;
    for (int n = 0; n < N; ++n) {
      const T h = T(1e-7) * (T(1) + std::abs(x[n]));
      auto xp = x, xm = x;
      xp[n] += h;
      xm[n] -= h;
      const auto fp = eval(xp), fm = eval(xm);
      if (!fp || !fm) return std::nullopt;
      J.col(n) = (*fp - *fm) / (2 * h);
    }
    const Eigen::Matrix<T, N, N> A = J.transpose() * J;
    const Eigen::Matrix<T, N, 1> g = J.transpose() * *fx;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::Matrix<T, N, N> Ad = A;
      for (int n = 0; n < N; ++n) Ad(n, n) += lambda * (A(n, n) + T(1e-30));
      const Eigen::Matrix<T, N, 1> step = Ad.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda = lambda == T(0) ? T(1e-6) : lambda * 10;
        continue;
      }
      auto xn = x;
      for (int n = 0; n < N; ++n) xn[n] += step(n);
      const auto fn = eval(xn);
      if (fn && fn->norm() < norm) {
        x = xn;
        fx = fn;
        lambda = lambda / 10 < T(1e-12) ? T(0) : lambda / 10;
        improved = true;
        break;
      }
      lambda = lambda == T(0) ? T(1e-6) : lambda * 10;
    }
    if (!improved) return fx->norm() <= tol ? std::optional<std::array<T, N>>(x) : std::nullopt;
  }
  return fx->norm() <= tol ? std::optional<std::array<T, N>>(x) : std::nullopt;
}

template <std::floating_point T>
T wrap_angle(T a) {
  constexpr T pi = std::numbers::pi_v<T>;
  return std::remainder(a, 2 * pi);
}

template <std::floating_point T>
std::array<T, 3> cover_residual_vec(const BasicCoverPoint<T>& e, const BasicCoverPoint<T>& target) {
  const T s = T(1) + std::abs(target.w);
  return {e.c - target.c, (e.w.real() - target.w.real()) / s, (e.w.imag() - target.w.imag()) / s};
}

template <std::floating_point T>
bool same_vector(const BasicAlgebraVector<T>& a, const BasicAlgebraVector<T>& b, T tol) {
  const T d = std::max({std::abs(a.a1 - b.a1), std::abs(a.a2 - b.a2), std::abs(a.a3 - b.a3)});
  return d <= tol * (T(1) + std::max(std::abs(a.a3), std::abs(b.a3)));
}

template <std::floating_point T>
void finish_report(BasicOracleReport<T>& rep) {
  std::sort(rep.solutions.begin(), rep.solutions.end(), [](const auto& x, const auto& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.a.a3 < y.a.a3;
  });
  rep.found_count = static_cast<int>(rep.solutions.size());
  for (const auto& s : rep.solutions) {
    if (!(rep.min_length <= s.length)) rep.min_length = s.length;
    if (!(rep.max_length >= s.length)) rep.max_length = s.length;
  }
}

// SR endpoint through the factorization e^{a} e^{-a3 Z}
template <std::floating_point T>
BasicCoverPoint<T> sr_factored_endpoint(const BasicAlgebraVector<T>& a) {
  return cover_mul(exp_cover(a), exp_cover(BasicAlgebraVector<T>{T(0), T(0), -a.a3}));
}

// SL endpoint through the factorization e^{a} e^{-a1 X}
template <std::floating_point T>
BasicCoverPoint<T> sl_factored_endpoint(const BasicAlgebraVector<T>& a) {
  return cover_mul(exp_cover(a), exp_cover(BasicAlgebraVector<T>{-a.a1, T(0), T(0)}));
}

// e^{a} as a product of n short exponentials
template <std::floating_point T>
BasicCoverPoint<T> exp_by_steps(const BasicAlgebraVector<T>& a, int n) {
  const auto e = exp_cover(a * (T(1) / T(n)));
  BasicCoverPoint<T> g{};
  for (int i = 0; i < n; ++i) g = cover_mul(g, e);
  return g;
}

// rotation-reduced shooting over (angle, |.|) pairs; endpoint(r, a3, theta)
// evaluates the candidate, rotating by theta about the vertical axis
template <std::floating_point T, class Endpoint>
std::vector<std::array<T, 3>> shoot_rotational(const BasicCoverPoint<T>& target, Endpoint&& endpoint,
                                               const std::vector<std::array<T, 2>>& seeds, T tol) {
  const T W = std::abs(target.w);
  std::vector<std::array<T, 3>> out;
  for (const auto& s : seeds) {
    const T r0 = s[0], a30 = s[1];
    if (W == T(0)) {
      auto res = [&](const std::array<T, 2>& x) { return cover_residual_vec(endpoint(x[0], x[1], T(0)), target); };
      const auto sol = solve_lm<T, 2, 3>(res, std::array<T, 2>{r0, a30}, tol);
      if (sol) out.push_back({(*sol)[0], (*sol)[1], T(0)});
      continue;
    }
    const auto e0 = endpoint(r0, a30, T(0));
    std::optional<std::array<T, 3>> best;
    for (T sg : {T(1), T(-1)}) {
      const T th0 = sg * (std::arg(e0.w) - std::arg(target.w));
      auto res = [&](const std::array<T, 3>& x) { return cover_residual_vec(endpoint(x[1], x[2], x[0]), target); };
      const auto sol = solve_lm<T, 3, 3>(res, std::array<T, 3>{th0, r0, a30}, tol);
      if (sol) {
        best = std::array<T, 3>{(*sol)[1], (*sol)[2], (*sol)[0]};
        break;
      }
    }
    if (best) out.push_back(*best);
  }
  return out;
}

template <std::floating_point T>
BasicAlgebraVector<T> rotated(T r, T a3, T theta) {
  return {r * std::cos(theta), r * std::sin(theta), a3};
}

// normalize to r >= 0 and theta in (-pi, pi]
template <std::floating_point T>
BasicAlgebraVector<T> normalized(T r, T a3, T theta) {
  constexpr T pi = std::numbers::pi_v<T>;
  if (r < T(0)) {
    r = -r;
    theta += pi;
  }
  theta = wrap_angle(theta);
  if (r == T(0)) theta = 0;
  return rotated(r, a3, theta);
}

}  // namespace detail

/**
 * @brief Brute-force enumeration of SR geodesics from the identity to target.
 *
 * Scans (atan(a3 / r), r) at theta = 0 on the residual |dc| + ||w| - |w_t||,
 * refines every promising local minimum by damped Gauss-Newton in
 * (theta, r, a3), and keeps solutions whose RK4-integrated endpoint lies
 * within endpoint_tol. Vertical targets have theta free; one member per
 * family is reported.
 */
template <std::floating_point T>
BasicOracleReport<T> shoot_sr(const BasicCoverPoint<T>& target, const ShootingConfig& cfg = {}) {
  constexpr T pi = std::numbers::pi_v<T>;
  cfg.validate();
  const T W = std::abs(target.w);
  if (target.c == T(0) && W == T(0)) throw DomainError("shoot_sr: target is the identity");
  BasicOracleReport<T> rep;
  rep.target = target;
  rep.continuous_family = W == T(0);
  // |S(alpha)| <= 1 / sqrt(-alpha) bounds |a3| / r by sqrt(1 + |w|^-2)
  const T psi_max = W > T(0) ? std::min(std::atan(T(1.05) * std::sqrt(T(1) + T(1) / (W * W))), pi / 2 * (1 - T(1) / cfg.grid_theta))
                             : pi / 2 * (1 - T(1) / cfg.grid_theta);
  const auto psis = detail::linspace<T>(-psi_max, psi_max, cfg.grid_theta);
  const auto rs = detail::linspace<T>(T(cfg.t_max) / cfg.grid_beta, T(cfg.t_max), cfg.grid_beta);
  auto norm = [&](T psi, T r) {
    const auto e = detail::sr_factored_endpoint(BasicAlgebraVector<T>{r, T(0), r * std::tan(psi)});
    return std::abs(e.c - target.c) + std::abs(std::abs(e.w) - W) / (T(1) + W);
  };
  const auto vals = detail::scan_grid<T>(norm, psis, rs, cfg.threads);
  auto cands = detail::grid_candidates<T>(vals, psis, rs, T(cfg.refine_tol));
  for (auto& c : cands) c = {c[1], c[1] * std::tan(c[0])};
  auto endpoint = [](T r, T a3, T th) { return detail::sr_factored_endpoint(detail::rotated(r, a3, th)); };
  const auto roots = detail::shoot_rotational<T>(target, endpoint, cands, T(1e-13));
  for (const auto& x : roots) {
    const auto a = detail::normalized(x[0], x[1], x[2]);
    if (!(a.r() > T(0)) || a.r() > T(cfg.t_max) * T(1.01)) continue;
    if (std::any_of(rep.solutions.begin(), rep.solutions.end(),
                    [&](const auto& s) { return detail::same_vector(s.a, a, T(cfg.dedup_tol)); }))
      continue;
    const auto [end, len] = integrate_endpoint<T>(HamiltonianKind::SR_D, initial_covector(HamiltonianKind::SR_D, a), ode_steps_for(a));
    const T res = cover_residual(end, target);
    if (!(res < T(cfg.endpoint_tol))) continue;
    rep.solutions.push_back({a, len, res});
  }
  detail::finish_report(rep);
  return rep;
}

/**
 * @brief Brute-force enumeration of timelike future-directed SL geodesics
 * from the identity to target.
 *
 * Conjugation by e^{sX} boosts (a2, a3) and fixes Re z1 and Re z2, so the
 * scan runs over (a1, speed) at a2 = 0 on those two invariants; each
 * promising minimum is refined by damped Gauss-Newton in (a1, speed,
 * rapidity) against the cover endpoint, then checked by RK4 integration.
 */
template <std::floating_point T>
BasicOracleReport<T> shoot_sl(const BasicCoverPoint<T>& target, const ShootingConfig& cfg = {}) {
  cfg.validate();
  BasicOracleReport<T> rep;
  rep.target = target;
  const auto m = cover_to_matrix(target);
  const T x1t = m.z1.real(), x2t = m.z2.real(), y1t = m.z1.imag(), y2t = m.z2.imag();
  const T tol = T(sl_member_tol);
  rep.continuous_family = std::abs(y1t) <= tol && std::abs(y2t) <= tol;
  const auto a1s = detail::linspace<T>(-T(cfg.a1_max), T(cfg.a1_max), cfg.grid_theta);
  const auto rhos = detail::linspace<T>(T(cfg.t_max) / cfg.grid_beta, T(cfg.t_max), cfg.grid_beta);
  const T scale = T(1) + std::abs(x1t) + std::abs(x2t);
  auto norm = [&](T a1, T rho) {
    const auto e = cover_to_matrix(detail::sl_factored_endpoint(BasicAlgebraVector<T>{a1, T(0), rho}));
    return (std::abs(e.z1.real() - x1t) + std::abs(e.z2.real() - x2t)) / scale;
  };
  const auto vals = detail::scan_grid<T>(norm, a1s, rhos, cfg.threads);
  const auto cands = detail::grid_candidates<T>(vals, a1s, rhos, T(cfg.refine_tol));
  auto boosted = [](T a1, T rho, T sig) { return BasicAlgebraVector<T>{a1, -rho * std::sinh(sig), rho * std::cosh(sig)}; };
  for (const auto& c : cands) {
    std::optional<BasicAlgebraVector<T>> found;
    if (rep.continuous_family) {
      auto res = [&](const std::array<T, 2>& x) {
        return detail::cover_residual_vec(detail::sl_factored_endpoint(boosted(x[0], x[1], T(0))), target);
      };
      const auto sol = detail::solve_lm<T, 2, 3>(res, std::array<T, 2>{c[0], c[1]}, T(1e-13));
      if (sol) found = boosted((*sol)[0], (*sol)[1], T(0));
    } else {
      const auto e = cover_to_matrix(detail::sl_factored_endpoint(BasicAlgebraVector<T>{c[0], T(0), c[1]}));
      const T y1 = e.z1.imag(), y2 = e.z2.imag();
      // (y1 + y2, y1 - y2) scale by (e^{sig}, e^{-sig}) under the boost
      std::vector<T> seeds;
      if ((y1 + y2) * (y1t + y2t) > T(0)) seeds.push_back(std::log((y1t + y2t) / (y1 + y2)));
      if ((y1 - y2) * (y1t - y2t) > T(0)) seeds.push_back(-std::log((y1t - y2t) / (y1 - y2)));
      if (seeds.empty()) seeds.push_back(T(0));
      for (T s0 : seeds) {
        auto res = [&](const std::array<T, 3>& x) {
          return detail::cover_residual_vec(detail::sl_factored_endpoint(boosted(x[0], x[1], x[2])), target);
        };
        const auto sol = detail::solve_lm<T, 3, 3>(res, std::array<T, 3>{c[0], c[1], s0}, T(1e-13));
        if (sol) {
          found = boosted((*sol)[0], (*sol)[1], (*sol)[2]);
          break;
        }
      }
    }
    if (!found) continue;
    const auto a = *found;
    if (!(a.a3 > std::abs(a.a2))) continue;
    if (std::any_of(rep.solutions.begin(), rep.solutions.end(),
                    [&](const auto& s) { return detail::same_vector(s.a, a, T(cfg.dedup_tol)); }))
      continue;
    const auto [end, len] = integrate_endpoint<T>(HamiltonianKind::SL_E, initial_covector(HamiltonianKind::SL_E, a), ode_steps_for(a));
    const T res = cover_residual(end, target);
    if (!(res < T(cfg.endpoint_tol))) continue;
    rep.solutions.push_back({a, len, res});
  }
  detail::finish_report(rep);
  return rep;
}

/**
 * @brief Brute-force enumeration of timelike future-directed one-parameter
 * subgroups e^{a} (Lorentzian geodesics) reaching target.
 *
 * Scans rapidity and length at theta = 0, refines in (theta, r, a3); the
 * endpoint check composes many short exponentials so the cover sheet is
 * tracked independently of exp_cover's closed form.
 */
template <std::floating_point T>
BasicOracleReport<T> shoot_lorentz(const BasicCoverPoint<T>& target, const ShootingConfig& cfg = {}) {
  cfg.validate();
  BasicOracleReport<T> rep;
  rep.target = target;
  const T W = std::abs(target.w);
  rep.continuous_family = false;
  const T eta_max = std::asinh(20 * (T(1) + W));
  const auto etas = detail::linspace<T>(T(0), eta_max, cfg.grid_theta);
  const auto rhos = detail::linspace<T>(T(cfg.t_max) / cfg.grid_beta, T(cfg.t_max), cfg.grid_beta);
  auto norm = [&](T eta, T rho) {
    const auto e = exp_cover(BasicAlgebraVector<T>{rho * std::sinh(eta), T(0), rho * std::cosh(eta)});
    return std::abs(e.c - target.c) + std::abs(std::abs(e.w) - W) / (T(1) + W);
  };
  const auto vals = detail::scan_grid<T>(norm, etas, rhos, cfg.threads);
  auto cands = detail::grid_candidates<T>(vals, etas, rhos, T(cfg.refine_tol));
  for (auto& c : cands) c = {c[1] * std::sinh(c[0]), c[1] * std::cosh(c[0])};
  auto endpoint = [](T r, T a3, T th) { return exp_cover(detail::rotated(r, a3, th)); };
  const auto roots = detail::shoot_rotational<T>(target, endpoint, cands, T(1e-13));
  for (const auto& x : roots) {
    const auto a = detail::normalized(x[0], x[1], x[2]);
    if (!(a.a3 > a.r())) continue;
    if (std::any_of(rep.solutions.begin(), rep.solutions.end(),
                    [&](const auto& s) { return detail::same_vector(s.a, a, T(cfg.dedup_tol)); }))
      continue;
    const T mag = std::abs(a.a1) + std::abs(a.a2) + std::abs(a.a3);
    const auto end = detail::exp_by_steps(a, static_cast<int>(64 * (T(1) + mag)));
    const T res = cover_residual(end, target);
    if (!(res < T(cfg.endpoint_tol))) continue;
    rep.solutions.push_back({a, std::sqrt(a.a3 * a.a3 - a.r() * a.r()), res});
  }
  detail::finish_report(rep);
  return rep;
}

/** @brief Finite-difference Jacobian of exp_sr in (theta, r, a3) and its determinant. */
template <std::floating_point T>
struct BasicFdJacobian {
  std::array<std::array<T, 3>, 3> J{};
  T det{};
};

using FdJacobian = BasicFdJacobian<double>;

/**
 * @brief Central-difference Jacobian of (c, Re w, Im w) = exp_sr(a) with
 * respect to (theta, r, a3).
 */
template <std::floating_point T>
BasicFdJacobian<T> fd_jacobian_expsr(const BasicAlgebraVector<T>& a, T h) {
  if (alpha(a) == T(0)) throw DomainError("fd_jacobian_expsr: undefined at alpha = 0");
  if (!(h >= T(1e-7) && h <= T(1e-4))) throw DomainError("fd_jacobian_expsr: h must lie in [1e-7, 1e-4]");
  const T x[3] = {a.theta(), a.r(), a.a3};
  auto endpoint = [](T th, T r, T a3) {
    const auto p = exp_sr(BasicAlgebraVector<T>{r * std::cos(th), r * std::sin(th), a3});
    return std::array<T, 3>{p.c, p.w.real(), p.w.imag()};
  };
  BasicFdJacobian<T> out;
  for (int i = 0; i < 3; ++i) {
    T xp[3] = {x[0], x[1], x[2]}, xm[3] = {x[0], x[1], x[2]};
    xp[i] += h;
    xm[i] -= h;
    const auto fp = endpoint(xp[0], xp[1], xp[2]), fm = endpoint(xm[0], xm[1], xm[2]);
    for (int m = 0; m < 3; ++m) out.J[m][i] = (fp[m] - fm[m]) / (2 * h);
  }
  Eigen::Matrix<T, 3, 3> M;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i) M(m, i) = out.J[m][i];
  out.det = M.determinant();
  return out;
}

/**
 * @brief Critical values of c on the SR exponential image over the circle
 * |w| = absw, for lobes j = 1..count.
 *
 * On a ray a = r (1, 0, b) with b > 1, |w| vanishes at r sqrt(b^2 - 1) = j pi.
 * Inside lobe j the solutions of |w| = absw form one arc joining the rising
 * and falling crossings; the minimum of c along that arc is returned.
 */
template <std::floating_point T>
std::vector<T> sr_fold_values(T absw, int count, const ShootingConfig& cfg = {}) {
  constexpr T pi = std::numbers::pi_v<T>;
  if (!(absw > T(0))) throw DomainError("sr_fold_values: requires |w| > 0");
  const T bmax = std::sqrt(T(1) + T(1) / (absw * absw));
  auto endpoint = [](T r, T b) { return detail::sr_factored_endpoint(BasicAlgebraVector<T>{r, T(0), r * b}); };
  // s in (-1, 1): b = bmax - (bmax - 1) s^2, the sign of s picks the crossing
  auto c_on_arc = [&](int j, T s) -> T {
    const T b = bmax - (bmax - 1) * s * s;
    const T q = std::sqrt((b - 1) * (b + 1));
    const T lo = T(j) * pi / q, hi = T(j + 1) * pi / q;
    const auto peak = detail::golden_min<T>([&](T r) { return -std::abs(endpoint(r, b).w); }, lo, hi, T(0));
    if (-peak.second < absw) return std::numeric_limits<T>::infinity();
    auto f = [&](T r) { return std::abs(endpoint(r, b).w) - absw; };
    const T r = s < T(0) ? detail::find_root<T>(f, lo, peak.first, T(0)).x : detail::find_root<T>(f, peak.first, hi, T(0)).x;
    return endpoint(r, b).c;
  };
  std::vector<T> out;
  const int n = std::max(cfg.grid_theta / 4, 64);
  const auto ss = detail::linspace<T>(T(-0.999), T(0.999), n);
  for (int j = 1; j <= count; ++j) {
    std::vector<T> cs(n);
    for (int i = 0; i < n; ++i) cs[i] = c_on_arc(j, ss[i]);
    const auto it = std::min_element(cs.begin(), cs.end());
    const std::ptrdiff_t i = it - cs.begin();
    const T lo = ss[std::max<std::ptrdiff_t>(i - 1, 0)], hi = ss[std::min<std::ptrdiff_t>(i + 1, n - 1)];
    out.push_back(detail::golden_min<T>([&](T s) { return c_on_arc(j, s); }, lo, hi, T(1e-12)).second);
  }
  return out;
}

/** @brief Claimed and oracle values closer than this confirm a claim. */
inline constexpr double adjudication_tol = 1e-6;

namespace detail {

template <std::floating_point T>
BasicAdjudicationCheck<T> make_check(const BasicCoverPoint<T>& p, T paper, T oracle) {
  return {p, paper, oracle, std::abs(paper - oracle)};
}

// longest two-leg broken Lorentzian geodesic through midpoints near the
// given geodesic
template <std::floating_point T>
T best_broken_length(const BasicCoverPoint<T>& target, const BasicAlgebraVector<T>& a) {
  ShootingConfig leg;
  leg.grid_theta = 96;
  leg.grid_beta = 160;
  leg.t_max = 8;
  leg.threads = 1;
  T best = 0;
  for (T s : {T(0.25), T(0.5), T(0.75)}) {
    for (int k = 0; k < 6; ++k) {
      const T ang = T(k) * std::numbers::pi_v<T> / 3;
      const BasicAlgebraVector<T> b{s * a.a1 + T(0.05) * std::cos(ang), s * a.a2 + T(0.05) * std::sin(ang), s * a.a3};
      if (!(b.a3 > b.r())) continue;
      const auto m = exp_cover(b);
      const auto rest = shoot_lorentz(cover_relative(m, target), leg);
      if (rest.found_count == 0) continue;
      best = std::max(best, std::sqrt(b.a3 * b.a3 - b.r() * b.r()) + rest.max_length);
    }
  }
  return best;
}

template <std::floating_point T>
std::string fmt(T v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", static_cast<double>(v));
  return buf;
}

}  // namespace detail

/**
 * @brief Runs the fixed docket of suspect claims against the oracles.
 *
 * Items: vertical SR distance, sign in the SR length formula, Lorentzian
 * distance formula, direction of the Lorentzian reachability inequality.
 * Grids are fixed, so the output is deterministic.
 */
template <std::floating_point T = double>
std::vector<BasicAdjudication<T>> adjudicate_claims() {
  constexpr T pi = std::numbers::pi_v<T>;
  std::vector<BasicAdjudication<T>> out;

  {
    // d((c, 0)) claimed to be |c|
    ShootingConfig cfg;
    cfg.t_max = 8;
    const BasicCoverPoint<T> p{T(1), T(0)};
    const auto rep = shoot_sr(p, cfg);
    BasicAdjudication<T> adj{"vertical-distance", "SR distance from the identity to (c, 0) equals |c|", {}, {}};
    adj.checks.push_back(detail::make_check(p, std::abs(p.c), rep.min_length));
    T worst = 0;
    for (std::size_t k = 0; k < rep.solutions.size(); ++k) {
      const T predicted = std::sqrt(p.c * p.c + 2 * pi * T(k + 1) * std::abs(p.c));
      worst = std::max(worst, std::abs(rep.solutions[k].length - predicted));
    }
    const bool holds = adj.delta() <= T(adjudication_tol);
    adj.verdict = std::string(holds ? "confirmed" : "contradicted") + ": " + std::to_string(rep.found_count) +
                  " geodesic families found, shortest length " + detail::fmt(rep.min_length) +
                  "; family k lengths differ from sqrt(c^2 + 2 pi k |c|) by at most " + detail::fmt(worst);
    out.push_back(adj);
  }

  {
    // l^2 = (|c| + k pi + s|phi2|)^2 + (pi k + s phi1)^2 with a plus sign
    const BasicCoverPoint<T> p{T(2), T(1)};
    const auto rep = shoot_sr(p, ShootingConfig{});
    const T W = std::abs(p.w), x = std::abs(p.c);
    BasicAdjudication<T> adj{"length-formula-sign",
                             "SR geodesic length squared is (|c| + k pi + s |phi2|)^2 + (pi k + s phi1)^2", {}, {}};
    T worst_plus = 0, worst_minus = 0;
    for (const auto& s : rep.solutions) {
      const T al = alpha(s.a);
      if (!(al < T(0))) continue;
      const T b = std::abs(s.a.a3) / s.a.r();
      const T nu = std::sqrt(-al);
      const long long k = static_cast<long long>(std::ceil(nu / pi - T(0.5)));
      const T sg = nu - pi * T(k) >= T(0) ? T(1) : T(-1);
      const T phi1 = std::asin(std::min(T(1), W * std::sqrt(b * b - 1)));
      const T phi2 = std::asin(std::min(T(1), W * b / std::sqrt(1 + W * W)));
      const T first = x + T(k) * pi + sg * std::abs(phi2), second = pi * T(k) + sg * phi1;
      const T plus = std::sqrt(first * first + second * second);
      const T minus = std::sqrt(std::max(T(0), first * first - second * second));
      adj.checks.push_back(detail::make_check(p, plus, s.length));
      worst_plus = std::max(worst_plus, std::abs(plus - s.length));
      worst_minus = std::max(worst_minus, std::abs(minus - s.length));
    }
    if (adj.checks.empty()) {
      adj.checks.push_back(detail::make_check(p, std::numeric_limits<T>::quiet_NaN(), rep.min_length));
      adj.verdict = "undecided: no oscillating geodesic found";
    } else {
      const bool holds = worst_plus <= T(adjudication_tol);
      adj.verdict = std::string(holds ? "confirmed" : "contradicted") + ": over " + std::to_string(adj.checks.size()) +
                    " oscillating geodesics the plus form misses the integrated length by up to " + detail::fmt(worst_plus) +
                    ", the minus form by up to " + detail::fmt(worst_minus);
    }
    out.push_back(adj);
  }

  {
    // d = asin(sqrt(tan^2 c - |w|^2))
    BasicAdjudication<T> adj{"lorentz-distance", "Lorentzian distance from the identity is asin(sqrt(tan^2 c - |w|^2))", {}, {}};
    T worst_paper = 0, worst_lib = 0, margin = std::numeric_limits<T>::infinity();
    for (const BasicCoverPoint<T>& p :
         {BasicCoverPoint<T>{-pi / 4, T(0)}, BasicCoverPoint<T>{T(-0.6), T(0.3)}, BasicCoverPoint<T>{T(-2.5), T(0.2)}}) {
      ShootingConfig cfg;
      cfg.t_max = 8;
      const auto rep = shoot_lorentz(p, cfg);
      const T t = std::tan(p.c);
      const T paper = std::asin(std::min(T(1), std::sqrt(t * t - std::norm(p.w))));
      adj.checks.push_back(detail::make_check(p, paper, rep.max_length));
      worst_paper = std::max(worst_paper, adj.checks.back().delta);
      worst_lib = std::max(worst_lib, std::abs(rep.max_length - lorentz_distance(p).value));
      if (rep.found_count > 0)
        margin = std::min(margin, rep.max_length - detail::best_broken_length(p, rep.solutions.back().a));
    }
    const bool holds = worst_paper <= T(adjudication_tol);
    adj.verdict = std::string(holds ? "confirmed" : "contradicted") + ": the timelike geodesic length differs from the formula by up to " +
                  detail::fmt(worst_paper) + " and from asin(sqrt(sin^2 c - |w|^2 cos^2 c)) (pi minus it below -pi/2) by up to " +
                  detail::fmt(worst_lib) + "; sampled broken geodesics fall short of it by at least " + detail::fmt(margin);
    out.push_back(adj);
  }

  {
    // reachable iff |w| < tan c, read literally
    BasicAdjudication<T> adj{"lorentz-reach-sign", "points with |w| < tan c are reached by a Lorentzian geodesic", {}, {}};
    const T c = -1;
    ShootingConfig cfg;
    cfg.t_max = 8;
    T worst = 0;
    std::string counts;
    for (T frac : {T(0.5), T(2)}) {
      const BasicCoverPoint<T> p{c, std::polar(frac * std::abs(std::tan(c)), T(0.4))};
      const T literal = std::abs(p.w) < std::tan(c) ? T(1) : T(0);
      const auto rep = shoot_lorentz(p, cfg);
      adj.checks.push_back(detail::make_check(p, literal, T(rep.found_count)));
      worst = std::max(worst, adj.checks.back().delta);
      counts += (counts.empty() ? "" : ", ") + std::to_string(rep.found_count) + " at |w| = " + detail::fmt(frac) + " |tan c|";
    }
    adj.verdict = std::string(worst == T(0) ? "confirmed" : "contradicted") + ": geodesics predicted by the literal inequality (c = -1) vs found: " + counts;
    out.push_back(adj);
  }
  return out;
}

}  // namespace su11

#endif  // SU11_ORACLES_HPP
