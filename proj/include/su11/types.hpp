#ifndef SU11_TYPES_HPP
#define SU11_TYPES_HPP

#include <cmath>
#include <complex>
#include <optional>

namespace su11 {

/**
 * @brief Element a1 X + a2 Y + a3 Z of su(1,1).
 */
template <class T>
struct BasicAlgebraVector {
  T a1{}, a2{}, a3{};

  /** @brief Horizontal radius sqrt(a1^2 + a2^2). */
  T r() const { return std::hypot(a1, a2); }
  /** @brief Horizontal angle arg(a1 + i a2) in (-pi, pi]. */
  T theta() const { return std::atan2(a2, a1); }
  /** @brief Signed rate a1^2 + a2^2 - a3^2. */
  T alpha() const { return a1 * a1 + a2 * a2 - a3 * a3; }
  /** @brief a3 / r, only when r > 0. */
  std::optional<T> beta() const {
    const T rr = r();
    if (rr > T(0)) return a3 / rr;
    return std::nullopt;
  }

  BasicAlgebraVector operator*(T s) const { return {a1 * s, a2 * s, a3 * s}; }
  BasicAlgebraVector operator+(const BasicAlgebraVector& o) const {
    return {a1 + o.a1, a2 + o.a2, a3 + o.a3};
  }
  BasicAlgebraVector operator-(const BasicAlgebraVector& o) const {
    return {a1 - o.a1, a2 - o.a2, a3 - o.a3};
  }
};

/**
 * @brief Point (c, w) of the universal cover R x C.
 */
template <class T>
struct BasicCoverPoint {
  T c{};
  std::complex<T> w{};
};

/**
 * @brief Point (z1, z2) of SU(1,1), |z1|^2 - |z2|^2 = 1.
 */
template <class T>
struct BasicMatrixPoint {
  std::complex<T> z1{1};
  std::complex<T> z2{};
};

/**
 * @brief Tangent vector dc d/dc + dw d/dw (+ conj) at a cover point.
 */
template <class T>
struct BasicTangentTriple {
  T dc{};
  std::complex<T> dw{};
};

using AlgebraVector = BasicAlgebraVector<double>;
using CoverPoint = BasicCoverPoint<double>;
using MatrixPoint = BasicMatrixPoint<double>;
using TangentTriple = BasicTangentTriple<double>;
using cplx = std::complex<double>;

}  // namespace su11

#endif  // SU11_TYPES_HPP
