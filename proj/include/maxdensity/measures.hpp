#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Density representations and the maximum-of-density functional M.
//
// Two carriers are supported here: finite index sets with counting reference
// measure (DiscreteDensity) and the real line with Lebesgue reference measure,
// discretized as piecewise-constant functions on a uniform grid (GridDensity).
// M(mu) = sup mu(A)/alpha(A); on these carriers it reduces to a maximum over
// atoms or cells.

namespace maxdens {

inline constexpr double kMassTolDiscrete = 1e-12;  // absolute, counting measure
inline constexpr double kMassTolGrid = 1e-9;       // relative, Lebesgue

// Probability mass vector on an indexed finite carrier (group elements,
// abstract points). Counting reference measure: M is the largest mass.
struct DiscreteDensity {
  std::vector<double> masses;

  std::size_t carrier_size() const { return masses.size(); }
};

// Piecewise-constant probability density on a uniform 1-D grid. Cell i covers
// [left + i*h, left + (i+1)*h) and carries density height values[i].
struct GridDensity {
  double left = 0.0;
  double cell_width = 0.0;
  std::vector<double> values;

  double right() const { return left + cell_width * static_cast<double>(values.size()); }
  std::size_t cells() const { return values.size(); }

  // Density height at point x (0 outside the carrier).
  double at(double x) const {
    double t = (x - left) / cell_width;
    if (t < 0.0) return 0.0;
    auto i = static_cast<std::size_t>(t);
    return i < values.size() ? values[i] : 0.0;
  }
};

// Extended nonnegative real; infinity encodes laws with atoms relative to a
// non-atomic reference measure (Dirac convention).
struct MaxFunctional {
  double value = 0.0;

  bool finite() const { return std::isfinite(value); }
};

void validate(const DiscreteDensity& mu);
void validate(const GridDensity& f);

DiscreteDensity make_discrete(std::vector<double> masses);
GridDensity make_grid(double left, double cell_width, std::vector<double> values);

// Unit-mass indicator of [a,b) sampled at cell width h. Cells straddling the
// endpoints get fractional heights so the mass is exact.
GridDensity indicator_density(double a, double b, double h);

MaxFunctional m_discrete(const DiscreteDensity& mu);
MaxFunctional m_grid(const GridDensity& f);

// N_infinity(X) = M^{-2/d}; 0 when M is infinite, infinite when M = 0.
double renyi_infinity_power(const MaxFunctional& m, int dimension);
double renyi_infinity_power(double m_value, int dimension);

// Exact convolution of two piecewise-constant densities with a common cell
// width, cell-averaged back onto the common grid. Mass is preserved and the
// maximum never exceeds the true convolution's essential sup.
GridDensity convolve_grids(const GridDensity& f, const GridDensity& g);

// Law of c*X for a grid density (c != 0).
GridDensity scale_density(const GridDensity& f, double c);

// Mass-preserving resample onto the grid {new_left + k*new_h}. The target
// window is derived from the support of f.
GridDensity resample(const GridDensity& f, double new_h);
GridDensity resample(const GridDensity& f, double new_left, double new_h, std::size_t n_cells);

}  // namespace maxdens
