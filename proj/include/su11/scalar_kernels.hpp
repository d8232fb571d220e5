#ifndef SU11_SCALAR_KERNELS_HPP
#define SU11_SCALAR_KERNELS_HPP

#include <cmath>
#include <concepts>
#include <limits>
#include <mutex>
#include <numbers>
#include <vector>

#include "su11/detail/roots.hpp"
#include "su11/errors.hpp"
#include "su11/types.hpp"

namespace su11 {

/** @brief Default argument tolerance of the bracketed solves. */
inline constexpr double root_xtol = 1e-12;
/** @brief Below this value of |alpha| t^2 the C and S series are used. */
inline constexpr double series_switch = 1e-8;
/** @brief Distance to pi/2 mod pi at which phi uses its limit branch. */
inline constexpr double phi_seam_tol = 1e-12;
/** @brief Indices above this are solved on demand instead of memoized. */
inline constexpr int spectral_cache_limit = 4096;

/** @brief alpha(a) = a1^2 + a2^2 - a3^2. */
template <std::floating_point T>
T alpha(const BasicAlgebraVector<T>& a) {
  return a.a1 * a.a1 + a.a2 * a.a2 - a.a3 * a.a3;
}

/**
 * @brief C(alpha, t): cosh(sqrt(alpha) t) for alpha >= 0, cos(sqrt(-alpha) t)
 * otherwise.
 */
template <std::floating_point T>
T cfun(T al, T t = T(1)) {
  const T z = al * t * t;
  if (std::abs(z) < T(series_switch))
    return T(1) + z / 2 * (T(1) + z / 12 * (T(1) + z / 30));
  if (al > T(0)) return std::cosh(std::sqrt(al) * t);
  return std::cos(std::sqrt(-al) * t);
}

/**
 * @brief S(alpha, t): sinh(sqrt(alpha) t)/sqrt(alpha), t, or
 * sin(sqrt(-alpha) t)/sqrt(-alpha).
 */
template <std::floating_point T>
T sfun(T al, T t = T(1)) {
  const T z = al * t * t;
  if (std::abs(z) < T(series_switch))
    return t * (T(1) + z / 6 * (T(1) + z / 20 * (T(1) + z / 42)));
  if (al > T(0)) {
    const T s = std::sqrt(al);
    return std::sinh(s * t) / s;
  }
  const T s = std::sqrt(-al);
  return std::sin(s * t) / s;
}

/**
 * @brief Continuous argument function phi with -phi(a) = arg(C - i a3 S)
 * unwrapped along t -> t a.
 */
template <std::floating_point T>
T phi(const BasicAlgebraVector<T>& a) {
  constexpr T pi = std::numbers::pi_v<T>;
  const T al = alpha(a);
  if (al > T(0)) {
    const T s = std::sqrt(al);
    return std::atan(a.a3 / s * std::tanh(s));
  }
  if (al == T(0)) return std::atan(a.a3);
  const T s = std::sqrt(-al);
  const T sg = a.a3 > T(0) ? T(1) : (a.a3 < T(0) ? T(-1) : T(0));
  if (std::abs(std::remainder(s - pi / 2, pi)) < T(phi_seam_tol)) return sg * s;
  return std::atan(a.a3 / s * std::tan(s)) + sg * pi * std::ceil(s / pi - T(0.5));
}

namespace detail {

struct SpectralCache {
  std::mutex mutex;
  std::vector<long double> chi;
  std::vector<long double> omega;
};

inline SpectralCache& spectral_cache() {
  static SpectralCache cache;
  return cache;
}

inline long double solve_chi(long long k) {
  constexpr long double pi = std::numbers::pi_v<long double>;
  // chi = pi k + d with d = atan(pi k + d); the map contracts by 1/(1+chi^2)
  long double d = pi / 2;
  for (int i = 0; i < 200; ++i) {
    const long double next = std::atan(pi * k + d);
    if (next == d) break;
    d = next;
  }
  return pi * k + d;
}

inline long double solve_omega(long long k) {
  constexpr long double pi = std::numbers::pi_v<long double>;
  auto g = [k](long double w) {
    return w / std::sqrt((1.0L - w) * (1.0L + w)) - std::asin(w) - pi * k;
  };
  const long double hi = std::nextafter(1.0L, 0.0L);
  return find_root<long double>(g, 0.0L, hi, 0.0L).x;
}

}  // namespace detail

/**
 * @brief chi_k, the root of tan x = x in (pi k, pi k + pi/2), memoized.
 */
template <std::floating_point T = double>
T chi(long long k) {
  if (k < 1) throw DomainError("chi: k must be >= 1");
  if (k > spectral_cache_limit) return static_cast<T>(detail::solve_chi(k));
  auto& cache = detail::spectral_cache();
  std::lock_guard lock(cache.mutex);
  while (static_cast<long long>(cache.chi.size()) < k)
    cache.chi.push_back(detail::solve_chi(static_cast<long long>(cache.chi.size()) + 1));
  return static_cast<T>(cache.chi[k - 1]);
}

/**
 * @brief omega_k in (0,1) with omega/sqrt(1-omega^2) - asin(omega) = pi k,
 * memoized.
 */
template <std::floating_point T = double>
T omega(long long k) {
  if (k < 1) throw DomainError("omega: k must be >= 1");
  if (k > spectral_cache_limit) return static_cast<T>(detail::solve_omega(k));
  auto& cache = detail::spectral_cache();
  std::lock_guard lock(cache.mutex);
  while (static_cast<long long>(cache.omega.size()) < k)
    cache.omega.push_back(detail::solve_omega(static_cast<long long>(cache.omega.size()) + 1));
  return static_cast<T>(cache.omega[k - 1]);
}

/**
 * @brief f_+(s;k) for sign = +1 and f_-(s;k) for sign = -1.
 */
template <std::floating_point T>
T f_pm(T s, int k, int sign) {
  constexpr T pi = std::numbers::pi_v<T>;
  if (std::abs(s) < T(1)) return std::sqrt((T(1) - s) * (T(1) + s));
  const T q = std::sqrt((s - T(1)) * (s + T(1)));
  return -T(sign) * std::sinh((2 * k + sign) * pi / 2 * q);
}

/**
 * @brief F(s, omega) = sqrt(1-omega^2) cosh q - sqrt(s^2-omega^2) sinh q with
 * q = sqrt((s^2-omega^2)/(1-omega^2)).
 */
template <std::floating_point T>
T bigF(T s, T om) {
  const T d = s * s - om * om;
  if (d < T(0)) throw DomainError("bigF: requires s^2 >= omega^2");
  const T e = (T(1) - om) * (T(1) + om);
  const T q = std::sqrt(d / e);
  return std::sqrt(e) * std::cosh(q) - std::sqrt(d) * std::sinh(q);
}

}  // namespace su11

#endif  // SU11_SCALAR_KERNELS_HPP
