#pragma once

#include <vector>

#include "maxdensity/measures.hpp"
#include "maxdensity/quadrature.hpp"

// Symmetric decreasing rearrangement on grids, its radial analogue across
// dimensions, and desk-scale checks that rearrangement can only increase the
// maximum of a convolution (sum case) and multilinear integrals (Riesz /
// Brascamp-Lieb-Luttinger form) at d = 1.

namespace maxdens {

// Piecewise-constant density on an even-cell grid centered at 0, arranged
// nonincreasing from the center outward.
struct SymmetricGrid {
  double cell_width = 0.0;
  std::vector<double> values;  // even length

  double half_width() const { return cell_width * static_cast<double>(values.size()) / 2.0; }
  GridDensity to_grid() const { return GridDensity{-half_width(), cell_width, values}; }
};

// Center-out rearrangement: the sorted cell values are placed at positions
// 0, -1, +1, -2, ... around the grid midpoint. Values are a permutation of
// the input (padded to even length), so M and level-set measures are
// preserved exactly. Ties keep the center-out order of the input, which
// makes the map idempotent.
SymmetricGrid decreasing_rearrangement_grid(const GridDensity& f);

struct RadialShell {
  double radius = 0.0;
  double height = 0.0;
};

// Nested balls matching cumulative super-level-set volumes; heights
// nonincreasing in radius.
std::vector<RadialShell> radial_rearrangement(const std::vector<std::pair<double, double>>& level_sets,
                                              int d);

struct ComparisonReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

// Midpoint-quadrature comparison of int prod_i f_i((A x)_i) dx against the
// same integral with every f_i replaced by its rearrangement. A is n x N with
// N <= 3, n <= 4; a zero row is rejected.
ComparisonReport bll_check_1d(const std::vector<GridDensity>& f_list,
                              const std::vector<std::vector<double>>& a_matrix, int quad_cells = 512);

// M(f_1 * ... * f_n) <= M(f_1^* * ... * f_n^*) on a common cell width.
ComparisonReport rearranged_max_bound(const std::vector<GridDensity>& f_list);

}  // namespace maxdens
