#ifndef SU11_DETAIL_ROOTS_HPP
#define SU11_DETAIL_ROOTS_HPP

#include <cmath>
#include <string>
#include <utility>

#include "su11/errors.hpp"

namespace su11::detail {

/** @brief Result of a bracketed solve. */
template <class T>
struct RootResult {
  T x{};
  T fx{};
  int iterations{};
};

/**
 * @brief Bisection refined by a safeguarded secant step.
 *
 * Requires f(lo) and f(hi) of opposite sign (or one of them zero). Stops when
 * the bracket is narrower than xtol or cannot shrink further in T.
 */
template <class T, class F>
RootResult<T> find_root(F&& f, T lo, T hi, T xtol, int max_iter = 200) {
  T flo = f(lo), fhi = f(hi);
  if (flo == T(0)) return {lo, flo, 0};
  if (fhi == T(0)) return {hi, fhi, 0};
  if (std::isnan(flo) || std::isnan(fhi) || (flo < T(0)) == (fhi < T(0)))
    throw NumericalFailure("find_root: bracket has no sign change");
  T prev_width = hi - lo;
  for (int it = 1; it <= max_iter; ++it) {
    const T width = hi - lo;
    const T mid = lo + width / 2;
    if (width <= xtol || mid <= lo || mid >= hi) {
      return std::abs(flo) < std::abs(fhi) ? RootResult<T>{lo, flo, it}
                                           : RootResult<T>{hi, fhi, it};
    }
    T x = hi - fhi * (hi - lo) / (fhi - flo);
    // fall back to bisection when the secant step leaves the interior or the
    // bracket stopped halving
    const T guard = width / 64;
    if (!(x > lo + guard && x < hi - guard) || width > prev_width / 2) x = mid;
    prev_width = width;
    const T fx = f(x);
    if (fx == T(0)) return {x, fx, it};
    if ((fx < T(0)) == (flo < T(0))) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  }
  throw NumericalFailure("find_root: iteration cap reached");
}

/**
 * @brief Golden-section search for the minimum of f on [lo, hi].
 */
template <class T, class F>
std::pair<T, T> golden_min(F&& f, T lo, T hi, T xtol, int max_iter = 200) {
  const T g = (std::sqrt(T(5)) - 1) / 2;
  T x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  T f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::pair<T, T>{x1, f1} : std::pair<T, T>{x2, f2};
}

}  // namespace su11::detail

#endif  // SU11_DETAIL_ROOTS_HPP
