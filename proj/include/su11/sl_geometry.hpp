#ifndef SU11_SL_GEOMETRY_HPP
#define SU11_SL_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "su11/detail/roots.hpp"
#include "su11/errors.hpp"
#include "su11/group.hpp"
#include "su11/scalar_kernels.hpp"
#include "su11/types.hpp"

namespace su11 {

/** @brief Tolerance of the set membership tests. */
inline constexpr double sl_member_tol = 1e-9;
/** @brief Endpoint mismatch, per unit of 1 + |a3|, above which an inverted covector is rejected. */
inline constexpr double sl_verify_tol = 1e-7;
/** @brief Grid points per branch in the a1 search. */
inline constexpr int sl_grid_points = 6000;

/**
 * @brief Parameters (k, s, x1, y2, sign x2) of a point of Omega_k.
 */
template <std::floating_point T>
struct BasicSLEndpointParams {
  long long k = 0;
  T s{};
  T x1{};
  T y2{};
  int sign_x2 = 1;
};

using SLEndpointParams = BasicSLEndpointParams<double>;

/** @brief Number of timelike future-directed geodesics from the identity. */
enum class SLClass { NotReachable, UniqueA, TwoB, ThreeC, CountableXi };

/** @brief 1, 2, 3 for A, B, C; 0 when unreachable; -1 for the countable set Xi. */
inline int expected_geodesics(SLClass c) {
  switch (c) {
    case SLClass::UniqueA: return 1;
    case SLClass::TwoB: return 2;
    case SLClass::ThreeC: return 3;
    case SLClass::CountableXi: return -1;
    default: return 0;
  }
}

/**
 * @brief Initial covectors of the geodesics reaching a point; when free_theta
 * is set the single entry represents the orbit over theta with
 * (a2, a3) = r (sinh theta, cosh theta).
 */
template <std::floating_point T>
struct BasicSLSolutions {
  std::vector<BasicAlgebraVector<T>> initial;
  bool free_theta = false;
};

using SLSolutions = BasicSLSolutions<double>;

/** @brief Lorentzian geodesics from the identity, with one witness covector. */
template <std::floating_point T>
struct BasicLorentzReach {
  enum class Kind { None, Unique, UncountableSimilar, UncountableDifferent };
  Kind kind = Kind::None;
  std::optional<BasicAlgebraVector<T>> witness;
};

using LorentzReach = BasicLorentzReach<double>;

/**
 * @brief Lorentzian distance; lower_bound marks points where only d >= pi is
 * known. paper_value holds the printed formula where it is defined.
 */
template <std::floating_point T>
struct BasicLorentzDistance {
  T value{};
  std::optional<T> paper_value;
  bool lower_bound = false;
};

using LorentzDistance = BasicLorentzDistance<double>;

/** @brief Metric whose causal future is queried. */
enum class Causality { Lorentz, SubLorentz };

/**
 * @brief Sub-Lorentzian normal geodesic e^{ta} e^{-t a1 X} in the cover.
 */
template <std::floating_point T>
BasicCoverPoint<T> sl_geodesic_cover(const BasicAlgebraVector<T>& a, T t) {
  const T al = alpha(a);
  const T C = cfun(al, t), S = sfun(al, t);
  const T sh = std::sinh(a.a1 * t), ch = std::cosh(a.a1 * t);
  const T n2 = T(1) + (a.a1 * a.a1 + a.a2 * a.a2) * S * S;
  // the denominator stays positive, so atan2 agrees with the atan form
  const T num = S * (a.a2 * C - a.a1 * a.a3 * S) * sh;
  const T den = n2 * ch - S * (a.a1 * C + a.a2 * a.a3 * S) * sh;
  const T c = -phi(a * t) + std::atan2(num, den);
  const std::complex<T> w = std::complex<T>(C, -a.a3 * S) * sh - std::complex<T>(a.a1, -a.a2) * S * ch;
  return {c, w};
}

namespace detail {

/** @brief Lightcone coordinates of a cover point. */
template <std::floating_point T>
struct Lightcone {
  T u1, u2, v1, v2;
};

template <std::floating_point T>
Lightcone<T> lightcone(const BasicCoverPoint<T>& p) {
  const T R = std::sqrt(T(1) + std::norm(p.w));
  const T x1 = R * std::cos(p.c), y1 = R * std::sin(p.c);
  const T x2 = p.w.real(), y2 = p.w.imag();
  const T v1 = y1 + y2, v2 = y1 - y2;
  T u1 = x1 + x2, u2 = x1 - x2;
  // u1 u2 + v1 v2 = 1 recovers the cancelling coordinate
  if (std::abs(u1) < std::abs(u2)) u1 = (T(1) - v1 * v2) / u2;
  else if (u1 != T(0)) u2 = (T(1) - v1 * v2) / u1;
  return {u1, u2, v1, v2};
}

template <std::floating_point T>
std::optional<long long> xi_index(const BasicCoverPoint<T>& p) {
  constexpr T pi = std::numbers::pi_v<T>;
  const T m = -p.c / pi;
  const T k = std::round(m);
  const T tol = T(sl_member_tol);
  if (k >= T(1) && std::abs(p.c + pi * k) <= tol * std::max(T(1), k) && std::abs(p.w.imag()) <= tol)
    return static_cast<long long>(k);
  return std::nullopt;
}

template <std::floating_point T>
std::optional<BasicSLEndpointParams<T>> endpoint_params(const BasicCoverPoint<T>& p) {
  constexpr T pi = std::numbers::pi_v<T>;
  if (!(p.c < T(0)) || xi_index(p)) return std::nullopt;
  const auto lc = lightcone(p);
  const T s2 = lc.v1 * lc.v2;
  if (!(s2 > T(0))) return std::nullopt;
  const long long k = static_cast<long long>(std::floor(-p.c / pi));
  const T x1 = std::sqrt(T(1) + std::norm(p.w)) * std::cos(p.c);
  return BasicSLEndpointParams<T>{k, std::sqrt(s2), (k % 2 ? -x1 : x1), p.w.imag(), p.w.real() >= T(0) ? 1 : -1};
}

}  // namespace detail

/**
 * @brief Set parameters of p; throws NotInDomain outside the parametrized
 * sets (including Xi, where s = 0).
 */
template <std::floating_point T>
BasicSLEndpointParams<T> sl_endpoint_params(const BasicCoverPoint<T>& p) {
  const auto q = detail::endpoint_params(p);
  if (!q) throw NotInDomain("sl_endpoint_params: no timelike geodesic reaches this point");
  return *q;
}

/**
 * @brief Classification of p into A, B, C, Xi or unreachable.
 */
template <std::floating_point T>
SLClass sl_classify(const BasicCoverPoint<T>& p) {
  if (detail::xi_index(p)) return SLClass::CountableXi;
  const auto q = detail::endpoint_params(p);
  if (!q) return SLClass::NotReachable;
  const T s = q->s, x1 = q->x1, tol = T(sl_member_tol);
  if (q->k == 0) return x1 < T(1) - s * s / 2 - tol ? SLClass::UniqueA : SLClass::NotReachable;
  const T om = omega<T>(q->k);
  if (s <= om) return SLClass::UniqueA;
  const T F = bigF(s, om);
  const T ftol = tol * (T(1) + std::abs(F));
  const bool at_F = std::abs(x1 - F) <= ftol;
  if (std::abs(s - T(1)) <= tol) {
    if (x1 <= tol || at_F) return SLClass::UniqueA;
    return x1 < F ? SLClass::TwoB : SLClass::NotReachable;
  }
  if (s > T(1)) {
    if (at_F) return SLClass::UniqueA;
    return x1 < F ? SLClass::TwoB : SLClass::NotReachable;
  }
  const T root = std::sqrt((T(1) - s) * (T(1) + s));
  if (x1 <= -root + tol) return SLClass::UniqueA;
  if (at_F) return SLClass::TwoB;
  return x1 > F ? SLClass::UniqueA : SLClass::ThreeC;
}

namespace detail {

/**
 * @brief Root search in a1 for the lightcone system
 * 2 C(alpha) = u1 e^{-a1} + u2 e^{a1}, 2 a1 S(alpha) = u2 e^{a1} - u1 e^{-a1},
 * one continuous alpha-branch per nu-interval.
 */
template <std::floating_point T>
class SLInverter {
 public:
  SLInverter(const BasicCoverPoint<T>& p) : p_(p), lc_(lightcone(p)) {}

  std::vector<BasicAlgebraVector<T>> solve() {
    constexpr T pi = std::numbers::pi_v<T>;
    const T A = T(40) + 2 * std::log1p(std::abs(p_.w));
    std::vector<T> grid;
    const T tau = std::asinh(A);
    for (int i = 0; i < sl_grid_points; ++i)
      grid.push_back(std::sinh(-tau + 2 * tau * T(i) / T(sl_grid_points - 1)));
    // a1 where P = +-1; the discriminant of u2 E^2 -+ 2E + u1 is s^2
    const T s = std::sqrt(std::max(lc_.v1 * lc_.v2, T(0)));
    for (T level : {T(1), T(-1)}) {
      for (T sg : {T(1), T(-1)}) {
        const T e = lc_.u2 != T(0) ? (level + sg * s) / lc_.u2 : level * lc_.u1 / 2;
        if (e > T(0) && std::abs(std::log(e)) < A) grid.push_back(std::log(e));
      }
    }
    std::sort(grid.begin(), grid.end());
    const long long j_max = static_cast<long long>(std::ceil(-p_.c / pi)) + 2;
    std::vector<T> vals(grid.size());
    for (long long j = 0; j <= j_max; ++j) {
      for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = residual(grid[i], j);
      scan(grid, vals, j);
    }
    return found_;
  }

 private:
  T P(T a1) const { return (lc_.u1 * std::exp(-a1) + lc_.u2 * std::exp(a1)) / 2; }
  T Q(T a1) const { return (lc_.u2 * std::exp(a1) - lc_.u1 * std::exp(-a1)) / 2; }
  T scale(T a1) const { return T(1) + std::abs(lc_.u1) * std::exp(-a1) + std::abs(lc_.u2) * std::exp(a1); }

  // alpha on branch j; NaN where the branch is undefined
  T branch_alpha(T a1, long long j) const {
    constexpr T pi = std::numbers::pi_v<T>;
    const T nan = std::numeric_limits<T>::quiet_NaN();
    const T edge = T(1e-12);
    T P0 = P(a1);
    if (j == 0 && P0 >= T(1)) {
      const T mu = std::acosh(P0);
      return mu * mu;
    }
    if (P0 < T(-1) - edge || P0 > T(1) + edge) return nan;
    P0 = std::clamp(P0, T(-1), T(1));
    const T ac = std::acos(P0);
    const T nu = j % 2 == 0 ? T(j) * pi + ac : T(j + 1) * pi - ac;
    return -nu * nu;
  }

  T residual(T a1, long long j) const {
    const T al = branch_alpha(a1, j);
    if (std::isnan(al)) return al;
    return a1 * sfun(al) - Q(a1);
  }

  void scan(const std::vector<T>& x, const std::vector<T>& f, long long j) {
    auto res = [&](T a1) { return residual(a1, j); };
    const std::size_t n = x.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::isnan(f[i]) || std::isnan(f[i + 1])) continue;
      if (f[i] == T(0)) accept(x[i], j, false);
      else if ((f[i] < T(0)) != (f[i + 1] < T(0)) && f[i + 1] != T(0))
        accept(find_root<T>(res, x[i], x[i + 1], T(0)).x, j, false);
      if (i == 0 || std::isnan(f[i - 1])) continue;
      const bool same = (f[i - 1] > T(0)) == (f[i] > T(0)) && (f[i] > T(0)) == (f[i + 1] > T(0));
      if (!same || !(std::abs(f[i]) < std::abs(f[i - 1]) && std::abs(f[i]) <= std::abs(f[i + 1]))) continue;
      // extremum of f toward zero: a double root or a pair closer than the grid
      const T orient = f[i] > T(0) ? T(1) : T(-1);
      auto toward_zero = [&](T a1) {
        const T r = residual(a1, j);
        return std::isnan(r) ? std::numeric_limits<T>::infinity() : orient * r;
      };
      const T xm = golden_min<T>(toward_zero, x[i - 1], x[i + 1], T(0)).first;
      const T sm = res(xm);
      if (sm != T(0) && (sm > T(0)) != (f[i] > T(0))) {
        accept(find_root<T>(res, x[i - 1], xm, T(0)).x, j, false);
        accept(find_root<T>(res, xm, x[i + 1], T(0)).x, j, false);
      } else {
        accept(xm, j, true);
      }
    }
  }

  void accept(T a1, long long j, bool fold) {
    const T al = branch_alpha(a1, j);
    if (std::isnan(al)) return;
    if (fold && std::abs(residual(a1, j)) > T(sl_member_tol) * scale(a1)) return;
    const T S = sfun(al);
    if (S == T(0) || !(lc_.v1 * S < T(0)) || !(lc_.v2 * S < T(0))) return;
    const T r2 = a1 * a1 - al;
    if (!(r2 > T(0))) return;
    const T r = std::sqrt(r2);
    const T theta = a1 + std::log(lc_.v2 / lc_.v1) / 2;
    const BasicAlgebraVector<T> a{a1, r * std::sinh(theta), r * std::cosh(theta)};
    const auto e = sl_geodesic_cover(a, T(1));
    const T err = std::abs(e.c - p_.c) + std::abs(e.w - p_.w) / (T(1) + std::abs(p_.w));
    if (!(err <= T(sl_verify_tol) * (T(1) + std::abs(a.a3)))) return;
    for (const auto& b : found_) {
      const T d = std::max({std::abs(a.a1 - b.a1), std::abs(a.a2 - b.a2), std::abs(a.a3 - b.a3)});
      if (d <= T(1e-6) * (T(1) + std::abs(b.a3))) return;
    }
    found_.push_back(a);
  }

  BasicCoverPoint<T> p_;
  Lightcone<T> lc_;
  std::vector<BasicAlgebraVector<T>> found_;
};

}  // namespace detail

/**
 * @brief Initial covectors of all timelike future-directed geodesics from the
 * identity ending at p at t = 1, sorted by a1.
 *
 * Throws NotInDomain for unreachable points and NumericalFailure when the
 * number found disagrees with sl_classify.
 */
template <std::floating_point T>
BasicSLSolutions<T> sl_solve_initial(const BasicCoverPoint<T>& p) {
  constexpr T pi = std::numbers::pi_v<T>;
  const SLClass cls = sl_classify(p);
  if (cls == SLClass::NotReachable) throw NotInDomain("sl_solve_initial: no timelike geodesic reaches this point");
  if (cls == SLClass::CountableXi) {
    const long long k = *detail::xi_index(p);
    const T a1 = (k % 2 ? T(-1) : T(1)) * std::asinh(p.w.real());
    return {{{a1, T(0), std::hypot(a1, pi * T(k))}}, true};
  }
  auto found = detail::SLInverter<T>(p).solve();
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.a1 < y.a1; });
  const int expected = expected_geodesics(cls);
  if (static_cast<int>(found.size()) != expected)
    throw NumericalFailure("sl_solve_initial: found " + std::to_string(found.size()) + " geodesics, classification predicts " +
                           std::to_string(expected));
  return {std::move(found), false};
}

/**
 * @brief Lorentzian geodesics (one-parameter subgroups) from the identity to p.
 */
template <std::floating_point T>
BasicLorentzReach<T> lorentz_reachable(const BasicCoverPoint<T>& p) {
  using R = BasicLorentzReach<T>;
  constexpr T pi = std::numbers::pi_v<T>;
  const T c = p.c, W = std::abs(p.w), tol = T(sl_member_tol);
  if (!(c < T(0))) return {};
  if (W <= tol * tol) {
    const T m = -c / pi;
    const bool multiple = std::abs(m - std::round(m)) * pi <= tol * std::max(T(1), m);
    return {multiple ? R::Kind::UncountableDifferent : R::Kind::UncountableSimilar, BasicAlgebraVector<T>{0, 0, -c}};
  }
  const T sc = std::sin(c), cc = std::cos(c);
  const T s2 = sc * sc - W * W * cc * cc;
  if (!(s2 > T(0))) return {};
  const long long k = static_cast<long long>(std::ceil(-c / pi - T(0.5)));
  const T sg = (-c - pi * T(k)) >= T(0) ? T(1) : T(-1);
  const T sin_a = sg * std::min(std::sqrt(s2), T(1));
  const T nu = pi * T(k) + std::asin(sin_a);
  const T r = nu * W / std::abs(sin_a);
  // w = -(a1 - i a2) S with S = (-1)^k sin(alpha') / nu
  const T theta = -std::arg(-(k % 2 ? T(-1) : T(1)) * sg * p.w);
  return {R::Kind::Unique, BasicAlgebraVector<T>{r * std::cos(theta), r * std::sin(theta), std::hypot(r, nu)}};
}

/** @brief Timelike future of the identity for the Lorentzian metric. */
template <std::floating_point T>
bool in_future_lorentz(const BasicCoverPoint<T>& p) {
  return p.c < -std::atan(std::abs(p.w));
}

namespace detail {

template <std::floating_point T>
T sublorentz_threshold(const std::complex<T>& w) {
  const T x = std::abs(w.real()), y = w.imag();
  return std::arg(std::complex<T>(T(1) - x, -std::sqrt(y * y + 2 * x)));
}

}  // namespace detail

/** @brief Timelike future of the identity for the sub-Lorentzian metric. */
template <std::floating_point T>
bool in_future_sublorentz(const BasicCoverPoint<T>& p) {
  return p.c < detail::sublorentz_threshold(p.w);
}

/** @brief Causal future of the identity, the closure of the timelike future. */
template <std::floating_point T>
bool causal_future_member(const BasicCoverPoint<T>& p, Causality which) {
  if (which == Causality::Lorentz) return p.c <= -std::atan(std::abs(p.w));
  return p.c <= detail::sublorentz_threshold(p.w);
}

/**
 * @brief Lorentzian distance from the identity.
 *
 * On the band -pi + atan|w| < c < -atan|w| the value is the length of the
 * unique geodesic, asin(sqrt(sin^2 c - |w|^2 cos^2 c)) or pi minus it.
 */
template <std::floating_point T>
BasicLorentzDistance<T> lorentz_distance(const BasicCoverPoint<T>& p) {
  constexpr T pi = std::numbers::pi_v<T>;
  const T c = p.c, W = std::abs(p.w);
  if (c >= -std::atan(W)) return {T(0), T(0), false};
  if (c <= -pi + std::atan(W)) return {pi, pi, true};
  if (std::abs(c + pi / 2) <= T(sl_member_tol)) return {pi / 2, pi / 2, false};
  const T sc = std::sin(c), cc = std::cos(c);
  T v = std::asin(std::min(std::sqrt(std::max(sc * sc - W * W * cc * cc, T(0))), T(1)));
  const T t2 = std::tan(c) * std::tan(c) - W * W;
  std::optional<T> paper;
  if (t2 <= T(1)) paper = std::asin(std::sqrt(std::max(t2, T(0))));
  if (c < -pi / 2) {
    v = pi - v;
    if (paper) paper = pi - *paper;
  }
  return {v, paper, false};
}

}  // namespace su11

#endif  // SU11_SL_GEOMETRY_HPP
