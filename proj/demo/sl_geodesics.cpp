// Sub-Lorentzian classification and inversion: endpoint -> initial covectors -> endpoint.
#include <cmath>
#include <cstdio>

#include "su11/su11.hpp"

int main() {
  using su11::AlgebraVector;
  const AlgebraVector seeds[] = {{0.3, 0.1, 1.2}, {-0.8, 0.4, 2.9}, {1.1, -2.0, 5.0}};
  const char* names[] = {"not-reachable", "A (1)", "B (2)", "C (3)", "Xi (countable)"};
  for (const auto& a : seeds) {
    const auto p = su11::sl_geodesic_cover(a, 1.0);
    const auto cls = su11::sl_classify(p);
    const auto sols = su11::sl_solve_initial(p);
    std::printf("a = (%.3f, %.3f, %.3f) -> (c, w) = (%.6f, %.6f%+.6fi), class %s\n", a.a1, a.a2, a.a3, p.c, p.w.real(), p.w.imag(),
                names[static_cast<int>(cls)]);
    for (const auto& b : sols.initial) {
      const auto q = su11::sl_geodesic_cover(b, 1.0);
      std::printf("   b = (%.9f, %.9f, %.9f)  length %.9f  endpoint error %.2e\n", b.a1, b.a2, b.a3, std::sqrt(b.a3 * b.a3 - b.a2 * b.a2),
                  std::abs(q.c - p.c) + std::abs(q.w - p.w));
    }
  }
  const su11::CoverPoint q{-0.5, {0.4, 0.0}};
  std::printf("(-0.5, 0.4): Lorentzian future %d, sub-Lorentzian future %d, Lorentzian distance %.9f\n", su11::in_future_lorentz(q),
              su11::in_future_sublorentz(q), su11::lorentz_distance(q).value);
}
