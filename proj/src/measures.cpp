#include "maxdensity/measures.hpp"

#include <algorithm>
#include <cmath>

namespace maxdens {

namespace {

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void check_nonneg(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative or NaN entry");
  }
}

}  // namespace

void validate(const DiscreteDensity& mu) {
  if (mu.masses.empty()) throw std::invalid_argument("DiscreteDensity: empty carrier");
  check_nonneg(mu.masses, "DiscreteDensity");
  double s = sum(mu.masses);
  if (std::abs(s - 1.0) > kMassTolDiscrete)
    throw std::invalid_argument("DiscreteDensity: total mass " + std::to_string(s) + " != 1");
}

void validate(const GridDensity& f) {
  if (f.values.empty()) throw std::invalid_argument("GridDensity: empty carrier");
  if (!(f.cell_width > 0.0)) throw std::invalid_argument("GridDensity: cell_width must be positive");
  check_nonneg(f.values, "GridDensity");
  double s = f.cell_width * sum(f.values);
  if (std::abs(s - 1.0) > kMassTolGrid)
    throw std::invalid_argument("GridDensity: total mass " + std::to_string(s) + " != 1");
}

DiscreteDensity make_discrete(std::vector<double> masses) {
  DiscreteDensity mu{std::move(masses)};
  validate(mu);
  return mu;
}

GridDensity make_grid(double left, double cell_width, std::vector<double> values) {
  GridDensity f{left, cell_width, std::move(values)};
  validate(f);
  return f;
}

GridDensity indicator_density(double a, double b, double h) {
  if (!(b > a) || !(h > 0.0)) throw std::invalid_argument("indicator_density: need a < b, h > 0");
  double height = 1.0 / (b - a);
  double left = std::floor(a / h) * h;
  auto n = static_cast<std::size_t>(std::ceil((b - left) / h - 1e-12));
  std::vector<double> vals(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double lo = left + static_cast<double>(i) * h;
    double hi = lo + h;
    double overlap = std::min(hi, b) - std::max(lo, a);
    if (overlap > 0.0) vals[i] = height * overlap / h;
  }
  // compensate rounding so the invariant holds exactly enough
  double s = sum(vals) * h;
  for (double& v : vals) v /= s;
  return GridDensity{left, h, std::move(vals)};
}

MaxFunctional m_discrete(const DiscreteDensity& mu) {
  return MaxFunctional{*std::max_element(mu.masses.begin(), mu.masses.end())};
}

MaxFunctional m_grid(const GridDensity& f) {
  return MaxFunctional{*std::max_element(f.values.begin(), f.values.end())};
}

double renyi_infinity_power(double m_value, int dimension) {
  if (m_value < 0.0 || dimension < 1) throw std::invalid_argument("renyi_infinity_power: bad arguments");
  if (std::isinf(m_value)) return 0.0;
  if (m_value == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(m_value, -2.0 / static_cast<double>(dimension));
}

double renyi_infinity_power(const MaxFunctional& m, int dimension) {
  return renyi_infinity_power(m.value, dimension);
}

GridDensity convolve_grids(const GridDensity& f, const GridDensity& g) {
  double h = f.cell_width;
  if (std::abs(f.cell_width - g.cell_width) > 1e-12 * std::max(f.cell_width, g.cell_width))
    throw std::invalid_argument("convolve_grids: incompatible cell widths");
  const auto& a = f.values;
  const auto& b = g.values;
  std::size_t m = a.size(), n = b.size();
  // c[s] = sum_{i+j=s} a_i b_j; the exact convolution of the two piecewise
  // constant functions is piecewise linear with nodal coefficients h*c, and
  // its cell average over output cell k is (h/2)(c[k-1] + c[k]).
  std::vector<double> c(m + n - 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double ai = a[i];
    if (ai == 0.0) continue;
    double* out = c.data() + i;
    for (std::size_t j = 0; j < n; ++j) out[j] += ai * b[j];
  }
  std::vector<double> vals(m + n, 0.0);
  for (std::size_t k = 0; k < m + n; ++k) {
    double lo = (k == 0) ? 0.0 : c[k - 1];
    double hi = (k == m + n - 1) ? 0.0 : c[k];
    vals[k] = 0.5 * h * (lo + hi);
  }
  return GridDensity{f.left + g.left, h, std::move(vals)};
}

GridDensity scale_density(const GridDensity& f, double c) {
  if (c == 0.0) throw std::invalid_argument("scale_density: zero scale");
  double ac = std::abs(c);
  std::vector<double> vals(f.values.size());
  if (c > 0.0) {
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f.values[i] / ac;
    return GridDensity{f.left * c, f.cell_width * ac, std::move(vals)};
  }
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f.values[vals.size() - 1 - i] / ac;
  return GridDensity{f.right() * c, f.cell_width * ac, std::move(vals)};
}

GridDensity resample(const GridDensity& f, double new_left, double new_h, std::size_t n_cells) {
  std::vector<double> mass(n_cells, 0.0);
  double h = f.cell_width;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i] == 0.0) continue;
    double lo = f.left + static_cast<double>(i) * h;
    double hi = lo + h;
    auto j0 = static_cast<long>(std::floor((lo - new_left) / new_h));
    auto j1 = static_cast<long>(std::floor((hi - new_left) / new_h + 1e-15));
    for (long j = std::max<long>(j0, 0); j <= j1 && j < static_cast<long>(n_cells); ++j) {
      double cl = new_left + static_cast<double>(j) * new_h;
      double overlap = std::min(hi, cl + new_h) - std::max(lo, cl);
      if (overlap > 0.0) mass[static_cast<std::size_t>(j)] += f.values[i] * overlap;
    }
  }
  for (double& v : mass) v /= new_h;
  return GridDensity{new_left, new_h, std::move(mass)};
}

GridDensity resample(const GridDensity& f, double new_h) {
  double new_left = std::floor(f.left / new_h) * new_h;
  auto n = static_cast<std::size_t>(std::ceil((f.right() - new_left) / new_h)) + 1;
  return resample(f, new_left, new_h, n);
}

}  // namespace maxdens
