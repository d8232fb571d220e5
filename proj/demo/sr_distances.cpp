// Sub-Riemannian distances and geodesic counts, checked against the shooting oracle.
#include <cstdio>

#include "su11/su11.hpp"

int main() {
  using su11::CoverPoint;
  const CoverPoint points[] = {{0.0, {2.0, 0.0}}, {0.2, {1.0, 0.5}}, {2.0, {1.0, 0.0}}, {3.5, {1.0, 0.0}}, {1.0, {0.0, 0.0}}};
  std::printf("%8s %18s %10s %12s %6s %12s %6s\n", "c", "w", "case", "distance", "count", "oracle min", "found");
  for (const auto& p : points) {
    const auto d = su11::sr_distance_cover(p);
    const auto n = su11::count_geodesics_cover(p);
    const auto rep = su11::shoot_sr(p);
    const char* cases[] = {"a", "b", "c", "d", "e", "f"};
    char w[32];
    std::snprintf(w, sizeof w, "%.3g%+.3gi", p.w.real(), p.w.imag());
    std::printf("%8.3g %18s %10s %12.9f %6lld %12.9f %6d\n", p.c, w, cases[static_cast<int>(d.case_tag)], d.value,
                n.kind == su11::GeodesicCount::Kind::Finite ? static_cast<long long>(n.n) : -1LL, rep.min_length, rep.found_count);
  }
  // count -1: a circle of geodesics; the oracle lists one representative per length
}
