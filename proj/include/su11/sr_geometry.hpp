#ifndef SU11_SR_GEOMETRY_HPP
#define SU11_SR_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>

#include "su11/detail/roots.hpp"
#include "su11/errors.hpp"
#include "su11/group.hpp"
#include "su11/scalar_kernels.hpp"
#include "su11/types.hpp"

namespace su11 {

/** @brief Tolerance of the region tests in sr_distance_cover. */
inline constexpr double sr_region_tol = 1e-9;
/** @brief Tolerance of the equality tests in the cut locus predicates. */
inline constexpr double cut_locus_tol = 1e-10;
/** @brief Largest k the geodesic count will resolve. */
inline constexpr long long count_k_cap = 1'000'000'000'000'000LL;

/**
 * @brief Number of geodesics joining the identity to a point.
 */
struct GeodesicCount {
  enum class Kind { Finite, CountablyInfinite, UncountableGeomCountable };
  Kind kind = Kind::Finite;
  /** @brief Number of geodesics when kind is Finite, else 0. */
  std::int64_t n = 0;

  static GeodesicCount finite(std::int64_t n) { return {Kind::Finite, n}; }
  bool operator==(const GeodesicCount&) const = default;
};

/** @brief Region of the distance formula. */
enum class DistanceCase { VerticalA, HorizontalB, BetaLow_c, Boundary_d, BetaHigh_e, BetaHigh_f };

/**
 * @brief Sub-Riemannian distance from the identity with its region and root.
 */
template <std::floating_point T>
struct BasicDistanceResult {
  T value{};
  DistanceCase case_tag{};
  std::optional<T> beta;
  /** @brief Literal printed value |c| for vertical points, unset otherwise. */
  std::optional<T> paper_value;
};

using DistanceResult = BasicDistanceResult<double>;

/**
 * @brief Normal geodesic with initial covector a, lifted to the cover.
 */
template <std::floating_point T>
BasicCoverPoint<T> sr_geodesic_cover(const BasicAlgebraVector<T>& a, T t) {
  if (!(a.r() > T(0))) throw DomainError("sr_geodesic_cover: requires r > 0");
  const T al = alpha(a);
  const T c = -phi(a * t) + a.a3 * t;
  const std::complex<T> w = -std::complex<T>(a.a1, -a.a2) * sfun(al, t) * std::polar(T(1), -a.a3 * t);
  return {c, w};
}

/**
 * @brief Normal geodesic with initial covector a in SU(1,1).
 */
template <std::floating_point T>
BasicMatrixPoint<T> sr_geodesic_matrix(const BasicAlgebraVector<T>& a, T t) {
  if (!(a.r() > T(0))) throw DomainError("sr_geodesic_matrix: requires r > 0");
  const T al = alpha(a);
  const T s = sfun(al, t);
  const std::complex<T> z1 = std::complex<T>(cfun(al, t), -a.a3 * s) * std::polar(T(1), a.a3 * t);
  const std::complex<T> z2 = -std::complex<T>(a.a1, -a.a2) * s * std::polar(T(1), -a.a3 * t);
  return {z1, z2};
}

/**
 * @brief Sub-Riemannian exponential map, the geodesic at time 1.
 */
template <std::floating_point T>
BasicCoverPoint<T> exp_sr(const BasicAlgebraVector<T>& a) {
  return sr_geodesic_cover(a, T(1));
}

/**
 * @brief Smallest |c| with 2k geodesics at horizontal modulus absw.
 */
template <std::floating_point T>
T count_threshold(T absw, long long k) {
  if (k < 1) throw DomainError("count_threshold: k must be >= 1");
  using L = long double;
  const L x = chi<L>(k);
  const L w2 = L(absw) * L(absw);
  const L r = std::sqrt(w2 + x * x + w2 * x * x);
  // R - chi and atan R - atan chi without cancellation
  const L d = w2 * (1 + x * x) / (r + x);
  return static_cast<T>(d - std::atan(d / (1 + r * x)));
}

/**
 * @brief Number of geodesics from the identity to p.
 *
 * Scans k upward while the cap stays within the memoized range and bisects
 * on k beyond it; thresholds increase with k.
 */
template <std::floating_point T>
GeodesicCount count_geodesics_cover(const BasicCoverPoint<T>& p) {
  const T x = std::abs(p.c), absw = std::abs(p.w);
  if (x == T(0) && absw == T(0)) throw DomainError("count_geodesics_cover: identity");
  if (absw == T(0)) return {GeodesicCount::Kind::UncountableGeomCountable, 0};
  if (x == T(0)) return GeodesicCount::finite(1);
  const long double gap = static_cast<long double>(absw) * absw / (std::sqrt(1.0L + static_cast<long double>(absw) * absw) + 1);
  const long double bound = std::ceil(x / (std::numbers::pi_v<long double> * gap)) + 1;
  if (!(bound <= static_cast<long double>(count_k_cap)))
    throw NumericalFailure("count_geodesics_cover: count exceeds representable range");
  const long long k_max = static_cast<long long>(bound);
  long long k = 0;
  if (k_max <= spectral_cache_limit) {
    while (k < k_max && x >= count_threshold(absw, k + 1)) ++k;
  } else {
    long long lo = 0, hi = k_max;
    while (hi - lo > 1) {
      const long long mid = lo + (hi - lo) / 2;
      (x >= count_threshold(absw, mid) ? lo : hi) = mid;
    }
    k = lo;
  }
  if (k == 0) return GeodesicCount::finite(1);
  return GeodesicCount::finite(x == count_threshold(absw, k) ? 2 * k : 2 * k + 1);
}

namespace detail {

template <std::floating_point T>
T asin_clamped(T v) {
  return std::asin(std::clamp(v, T(-1), T(1)));
}

}  // namespace detail

/**
 * @brief Sub-Riemannian distance from the identity to a cover point.
 *
 * Vertical points return the length sqrt(c^2 + 2 pi |c|) of the shortest
 * geodesic family; paper_value keeps the literal |c|.
 */
template <std::floating_point T>
BasicDistanceResult<T> sr_distance_cover(const BasicCoverPoint<T>& p) {
  constexpr T pi = std::numbers::pi_v<T>;
  const T x = std::abs(p.c), W = std::abs(p.w);
  if (x == T(0) && W == T(0)) throw DomainError("sr_distance_cover: identity");
  if (W == T(0)) return {std::sqrt(x * x + 2 * pi * x), DistanceCase::VerticalA, std::nullopt, x};
  const T tol = T(sr_region_tol);
  if (x <= tol) return {std::asinh(W), DistanceCase::HorizontalB, std::nullopt, std::nullopt};
  const T n = std::sqrt(T(1) + W * W);
  const T phi2_scale = W / n;
  const T b1 = W - std::atan(W);
  const T b2 = pi / 2 * W * W / (n + 1);
  const T eps = T(1e-14);
  if (std::abs(x - b1) <= tol) return {W, DistanceCase::Boundary_d, T(1), std::nullopt};
  if (x < b1) {
    auto g = [&](T b) {
      const T u = std::sqrt((T(1) - b) * (T(1) + b));
      return (x + detail::asin_clamped(b * phi2_scale)) / b - std::asinh(W * u) / u;
    };
    const T b = detail::find_root<T>(g, eps, T(1) - eps, T(0)).x;
    return {(x + detail::asin_clamped(b * phi2_scale)) / b, DistanceCase::BetaLow_c, b, std::nullopt};
  }
  const T b_max = n / W;
  if (std::abs(x - b2) <= tol)
    return {(x + pi / 2) / b_max, DistanceCase::BetaHigh_e, b_max, std::nullopt};
  if (x < b2) {
    auto g = [&](T b) {
      const T u = std::sqrt((b - T(1)) * (b + T(1)));
      return (x + detail::asin_clamped(b * phi2_scale)) / b - detail::asin_clamped(W * u) / u;
    };
    const T b = detail::find_root<T>(g, T(1) + eps, b_max, T(0)).x;
    return {(x + detail::asin_clamped(b * phi2_scale)) / b, DistanceCase::BetaHigh_e, b, std::nullopt};
  }
  auto g = [&](T b) {
    const T u = std::sqrt((b - T(1)) * (b + T(1)));
    return u / b * (x + pi - detail::asin_clamped(b * phi2_scale)) - (pi - detail::asin_clamped(W * u));
  };
  const T b = detail::find_root<T>(g, T(1) + eps, b_max, T(0)).x;
  return {(x + pi - detail::asin_clamped(b * phi2_scale)) / b, DistanceCase::BetaHigh_f, b, std::nullopt};
}

/**
 * @brief Sub-Riemannian distance from the identity in SU(1,1).
 */
template <std::floating_point T>
T sr_distance_matrix(const BasicMatrixPoint<T>& g) {
  return sr_distance_cover(BasicCoverPoint<T>{std::arg(g.z1), g.z2}).value;
}

/** @brief Cut locus of the identity in the cover: the vertical line. */
template <std::floating_point T>
bool cut_locus_member_cover(const BasicCoverPoint<T>& p) {
  return std::abs(p.w) <= T(cut_locus_tol) && std::abs(p.c) > T(cut_locus_tol);
}

/** @brief Cut locus of the identity in SU(1,1). */
template <std::floating_point T>
bool cut_locus_member_matrix(const BasicMatrixPoint<T>& g) {
  const T tol = T(cut_locus_tol);
  if (std::abs(g.z1.imag()) <= tol && g.z1.real() < T(0)) return true;
  return std::abs(g.z2) <= tol && std::abs(g.z1 - T(1)) > tol;
}

/**
 * @brief |c| of the j-th even component of the conjugate locus.
 */
template <std::floating_point T>
T conjugate_locus_c(T absw, long long j) {
  return count_threshold(absw, j);
}

/**
 * @brief z1 of the j-th conjugate locus component in SU(1,1); sign picks
 * the branch with c of that sign.
 */
template <std::floating_point T>
std::complex<T> conjugate_locus_matrix_z1(T absz2, long long j, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("conjugate_locus_matrix_z1: sign must be +-1");
  return std::sqrt(T(1) + absz2 * absz2) * std::polar(T(1), T(sign) * conjugate_locus_c(absz2, j));
}

/**
 * @brief Jacobian determinant of exp_sr in (theta, r, a3) coordinates.
 */
template <std::floating_point T>
T jac_det_exp_sr(const BasicAlgebraVector<T>& a) {
  const T r = a.r();
  if (!(r > T(0))) throw DomainError("jac_det_exp_sr: requires r > 0");
  const T al = alpha(a);
  if (al == T(0)) throw DomainError("jac_det_exp_sr: undefined at alpha = 0");
  const T s = sfun(al, T(1)), c = cfun(al, T(1));
  return r * r * r * s * (c - s) / al;
}

}  // namespace su11

#endif  // SU11_SR_GEOMETRY_HPP
