#ifndef SU11_GROUP_HPP
#define SU11_GROUP_HPP

#include <array>
#include <cmath>
#include <complex>

#include "su11/scalar_kernels.hpp"
#include "su11/types.hpp"

namespace su11 {

/** @brief Covering map (c, w) -> (sqrt(1+|w|^2) e^{ic}, w). */
template <std::floating_point T>
BasicMatrixPoint<T> cover_to_matrix(const BasicCoverPoint<T>& p) {
  return {std::sqrt(T(1) + std::norm(p.w)) * std::polar(T(1), p.c), p.w};
}

/** @brief The lift (Arg z1, z2) with Arg in (-pi, pi]. */
template <std::floating_point T>
BasicCoverPoint<T> principal_lift(const BasicMatrixPoint<T>& g) {
  return {std::arg(g.z1), g.z2};
}

/** @brief Group law of the universal cover. */
template <std::floating_point T>
BasicCoverPoint<T> cover_mul(const BasicCoverPoint<T>& p, const BasicCoverPoint<T>& q) {
  const T n1 = T(1) + std::norm(p.w), n2 = T(1) + std::norm(q.w);
  const std::complex<T> m = p.w * std::conj(q.w) * std::polar(T(1), -(p.c + q.c));
  // the denominator is positive, so atan2 equals the atan of the quotient
  const T c = p.c + q.c + std::atan2(m.imag(), std::sqrt(n1 * n2) + m.real());
  const std::complex<T> w = q.w * std::sqrt(n1) * std::polar(T(1), p.c) +
                            p.w * std::sqrt(n2) * std::polar(T(1), -q.c);
  return {c, w};
}

/** @brief Inverse in the cover, (-c, -w). */
template <std::floating_point T>
BasicCoverPoint<T> cover_inv(const BasicCoverPoint<T>& p) {
  return {-p.c, -p.w};
}

/** @brief p^{-1} q, the point q seen from p. */
template <std::floating_point T>
BasicCoverPoint<T> cover_relative(const BasicCoverPoint<T>& p, const BasicCoverPoint<T>& q) {
  return cover_mul(cover_inv(p), q);
}

/** @brief Product in SU(1,1). */
template <std::floating_point T>
BasicMatrixPoint<T> mat_mul(const BasicMatrixPoint<T>& g, const BasicMatrixPoint<T>& h) {
  return {g.z1 * h.z1 + g.z2 * std::conj(h.z2), g.z1 * h.z2 + g.z2 * std::conj(h.z1)};
}

/** @brief Inverse in SU(1,1), (conj z1, -z2). */
template <std::floating_point T>
BasicMatrixPoint<T> mat_inv(const BasicMatrixPoint<T>& g) {
  return {std::conj(g.z1), -g.z2};
}

/** @brief exp(a) = C(alpha) 1 + S(alpha) a in SU(1,1). */
template <std::floating_point T>
BasicMatrixPoint<T> exp_matrix(const BasicAlgebraVector<T>& a) {
  const T al = alpha(a);
  const T C = cfun(al), S = sfun(al);
  return {std::complex<T>(C, -a.a3 * S), -std::complex<T>(a.a1, -a.a2) * S};
}

/** @brief exp(a) in the cover, (-phi(a), -(a1 - i a2) S(alpha)). */
template <std::floating_point T>
BasicCoverPoint<T> exp_cover(const BasicAlgebraVector<T>& a) {
  return {-phi(a), -std::complex<T>(a.a1, -a.a2) * sfun(alpha(a))};
}

/** @brief Image of g under the isomorphism SU(1,1) -> SL(2,R). */
template <std::floating_point T>
std::array<std::array<T, 2>, 2> to_sl2(const BasicMatrixPoint<T>& g) {
  const T x1 = g.z1.real(), y1 = g.z1.imag(), x2 = g.z2.real(), y2 = g.z2.imag();
  return {{{x1 + y2, -y1 - x2}, {y1 - x2, x1 - y2}}};
}

/** @brief Bi-invariant metric u1 v1 + u2 v2 - u3 v3. */
template <std::floating_point T>
T metric_rho(const BasicAlgebraVector<T>& u, const BasicAlgebraVector<T>& v) {
  return u.a1 * v.a1 + u.a2 * v.a2 - u.a3 * v.a3;
}

/** @brief Left-invariant fields X~, Y~, Z~ evaluated at p. */
template <std::floating_point T>
std::array<BasicTangentTriple<T>, 3> frame_at(const BasicCoverPoint<T>& p) {
  const T n = std::sqrt(T(1) + std::norm(p.w));
  const std::complex<T> e = std::polar(T(1), p.c);
  const std::complex<T> we = p.w * std::conj(e);
  const std::complex<T> i(0, 1);
  return {{{-we.imag() / n, -n * e}, {-we.real() / n, i * n * e}, {T(-1), i * p.w}}};
}

/** @brief dL_p applied to the algebra vector a. */
template <std::floating_point T>
BasicTangentTriple<T> left_action(const BasicCoverPoint<T>& p, const BasicAlgebraVector<T>& a) {
  const auto f = frame_at(p);
  return {a.a1 * f[0].dc + a.a2 * f[1].dc + a.a3 * f[2].dc,
          a.a1 * f[0].dw + a.a2 * f[1].dw + a.a3 * f[2].dw};
}

/**
 * @brief Coefficients (u1, u2, u3) of v in the frame at p.
 */
template <std::floating_point T>
BasicAlgebraVector<T> frame_coordinates(const BasicCoverPoint<T>& p, const BasicTangentTriple<T>& v) {
  const auto f = frame_at(p);
  T m[3][4];
  for (int j = 0; j < 3; ++j) {
    m[0][j] = f[j].dc;
    m[1][j] = f[j].dw.real();
    m[2][j] = f[j].dw.imag();
  }
  m[0][3] = v.dc;
  m[1][3] = v.dw.real();
  m[2][3] = v.dw.imag();
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
    for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      const T q = m[row][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[row][j] -= q * m[col][j];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace su11

#endif  // SU11_GROUP_HPP
