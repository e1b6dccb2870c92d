#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

// Panelized 1-D quadrature rules and small geometric helpers shared by the
// numeric modules.

namespace maxdens {

enum class QuadScheme { midpoint, gauss_legendre_panels };

struct QuadratureSpec {
  double truncation_radius = 0.0;  // 0 = choose automatically
  int nodes = 4096;                // node budget for the exact-evaluation range
  QuadScheme scheme = QuadScheme::gauss_legendre_panels;
};

namespace quad {

inline constexpr std::array<double, 16> kGL16Nodes = {
    -0.98940093499164994, -0.9445750230732326,  -0.86563120238783176, -0.755404408355003,
    -0.61787624440264377, -0.45801677765722737, -0.28160355077925892, -0.095012509837637454,
    0.095012509837637454, 0.28160355077925892,  0.45801677765722737,  0.61787624440264377,
    0.755404408355003,    0.86563120238783176,  0.9445750230732326,   0.98940093499164994};

inline constexpr std::array<double, 16> kGL16Weights = {
    0.027152459411754037, 0.062253523938647706, 0.095158511682492591, 0.12462897125553403,
    0.14959598881657676,  0.16915651939500262,  0.18260341504492361,  0.18945061045506859,
    0.18945061045506859,  0.18260341504492361,  0.16915651939500262,  0.14959598881657676,
    0.12462897125553403,  0.095158511682492591, 0.062253523938647706, 0.027152459411754037};

// Integral of f over [a, b] split into npanels panels; 16-point Gauss-Legendre
// or 16 midpoint cells per panel.
template <typename F>
double panel_integrate(F&& f, double a, double b, std::size_t npanels,
                       QuadScheme scheme = QuadScheme::gauss_legendre_panels) {
  if (!(b > a)) return 0.0;
  if (npanels == 0) npanels = 1;
  const double w = (b - a) / static_cast<double>(npanels);
  double total = 0.0;
  for (std::size_t p = 0; p < npanels; ++p) {
    const double lo = a + w * static_cast<double>(p);
    double s = 0.0;
    if (scheme == QuadScheme::gauss_legendre_panels) {
      const double mid = lo + 0.5 * w, half = 0.5 * w;
      for (std::size_t i = 0; i < 16; ++i) s += kGL16Weights[i] * f(mid + half * kGL16Nodes[i]);
      s *= half;
    } else {
      const double h = w / 16.0;
      for (std::size_t i = 0; i < 16; ++i) s += f(lo + (static_cast<double>(i) + 0.5) * h);
      s *= h;
    }
    total += s;
  }
  return total;
}

}  // namespace quad

// Axis-aligned bounding box of the polytope {x : lo_i <= a_i . x <= hi_i}
// with rows a_i in R^N, N <= 3, found by enumerating candidate vertices.
struct SlabBox {
  bool empty = false;
  std::vector<double> lo, hi;  // per axis
};

SlabBox bounding_box_of_slabs(const std::vector<std::vector<double>>& rows,
                              const std::vector<double>& lo, const std::vector<double>& hi);

}  // namespace maxdens
