#include "maxdensity/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxdensity/ball_fourier.hpp"

namespace maxdens {

namespace {

// center-out visiting order: mid, mid-1, mid+1, mid-2, ...
std::size_t center_out_position(std::size_t rank, std::size_t mid) {
  return (rank % 2 == 0) ? mid + rank / 2 : mid - 1 - rank / 2;
}

std::size_t center_out_rank(std::size_t pos, std::size_t mid) {
  return (pos >= mid) ? 2 * (pos - mid) : 2 * (mid - 1 - pos) + 1;
}

}  // namespace

SymmetricGrid decreasing_rearrangement_grid(const GridDensity& f) {
  validate(f);
  std::size_t n = f.values.size();
  if (n % 2 == 1) ++n;  // pad with one empty cell
  std::vector<double> padded(f.values);
  padded.resize(n, 0.0);

  const std::size_t mid = n / 2;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (padded[i] != padded[j]) return padded[i] > padded[j];
    return center_out_rank(i, mid) < center_out_rank(j, mid);
  });

  SymmetricGrid out;
  out.cell_width = f.cell_width;
  out.values.assign(n, 0.0);
  for (std::size_t rank = 0; rank < n; ++rank)
    out.values[center_out_position(rank, mid)] = padded[order[rank]];
  return out;
}

std::vector<RadialShell> radial_rearrangement(
    const std::vector<std::pair<double, double>>& level_sets, int d) {
  if (level_sets.empty()) throw std::invalid_argument("radial_rearrangement: no level sets");
  if (d < 1) throw std::invalid_argument("radial_rearrangement: d >= 1 required");
  auto sorted = level_sets;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].first > 0.0) || !(sorted[i].second > 0.0))
      throw std::invalid_argument("radial_rearrangement: heights and volumes must be positive");
    if (i > 0 && sorted[i].first == sorted[i - 1].first)
      throw std::invalid_argument("radial_rearrangement: heights must be distinct");
  }
  const double omega = unit_ball_volume(d);
  std::vector<RadialShell> out;
  out.reserve(sorted.size());
  double cumulative = 0.0;
  for (const auto& [height, volume] : sorted) {
    cumulative += volume;
    out.push_back(RadialShell{std::pow(cumulative / omega, 1.0 / d), height});
  }
  return out;
}

namespace {

double product_integral(const std::vector<GridDensity>& fs,
                        const std::vector<std::vector<double>>& rows, int q) {
  const std::size_t n = fs.size();
  const std::size_t N = rows[0].size();
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = fs[i].left;
    hi[i] = fs[i].right();
  }
  SlabBox box = bounding_box_of_slabs(rows, lo, hi);
  if (box.empty) return 0.0;

  std::vector<double> step(N);
  for (std::size_t j = 0; j < N; ++j) step[j] = (box.hi[j] - box.lo[j]) / q;
  double cell = 1.0;
  for (double s : step) {
    if (!(s > 0.0)) return 0.0;
    cell *= s;
  }

  double total = 0.0;
  std::vector<double> x(N);
  std::vector<int> idx(N, 0);
  for (;;) {
    for (std::size_t j = 0; j < N; ++j) x[j] = box.lo[j] + (idx[j] + 0.5) * step[j];
    double v = 1.0;
    for (std::size_t i = 0; i < n && v != 0.0; ++i) {
      double t = 0.0;
      for (std::size_t j = 0; j < N; ++j) t += rows[i][j] * x[j];
      v *= fs[i].at(t);
    }
    total += v;
    std::size_t j = N;
    bool advanced = false;
    while (j > 0) {
      --j;
      if (++idx[j] < q) {
        advanced = true;
        break;
      }
      idx[j] = 0;
    }
    if (!advanced) break;
  }
  return total * cell;
}

}  // namespace

ComparisonReport bll_check_1d(const std::vector<GridDensity>& f_list,
                              const std::vector<std::vector<double>>& a_matrix, int quad_cells) {
  if (f_list.empty() || a_matrix.size() != f_list.size())
    throw std::invalid_argument("bll_check_1d: need one matrix row per density");
  const std::size_t N = a_matrix[0].size();
  if (N < 1 || N > 3) throw std::invalid_argument("bll_check_1d: N <= 3 required");
  if (f_list.size() > 4) throw std::invalid_argument("bll_check_1d: n <= 4 required");
  for (const auto& row : a_matrix) {
    if (row.size() != N) throw std::invalid_argument("bll_check_1d: ragged matrix");
    double nrm = 0.0;
    for (double v : row) nrm += v * v;
    if (nrm < 1e-24) throw std::invalid_argument("bll_check_1d: zero row in A");
  }
  int q = std::min(quad_cells, 512);
  if (q < 8) throw std::invalid_argument("bll_check_1d: quad_cells too small");

  std::vector<GridDensity> rearranged;
  rearranged.reserve(f_list.size());
  for (const auto& f : f_list) rearranged.push_back(decreasing_rearrangement_grid(f).to_grid());

  ComparisonReport rep;
  rep.lhs = product_integral(f_list, a_matrix, q);
  rep.rhs = product_integral(rearranged, a_matrix, q);
  rep.satisfied = rep.lhs <= rep.rhs * (1.0 + 1e-6) + 1e-9;
  return rep;
}

ComparisonReport rearranged_max_bound(const std::vector<GridDensity>& f_list) {
  if (f_list.size() < 2) throw std::invalid_argument("rearranged_max_bound: need >= 2 densities");
  for (const auto& f : f_list) {
    if (std::abs(f.cell_width - f_list[0].cell_width) >
        1e-12 * std::max(f.cell_width, f_list[0].cell_width))
      throw std::invalid_argument("rearranged_max_bound: common cell width required");
  }
  GridDensity conv = f_list[0];
  GridDensity conv_star = decreasing_rearrangement_grid(f_list[0]).to_grid();
  for (std::size_t i = 1; i < f_list.size(); ++i) {
    conv = convolve_grids(conv, f_list[i]);
    conv_star = convolve_grids(conv_star, decreasing_rearrangement_grid(f_list[i]).to_grid());
  }
  ComparisonReport rep;
  rep.lhs = m_grid(conv).value;
  rep.rhs = m_grid(conv_star).value;
  rep.satisfied = rep.lhs <= rep.rhs + 1e-9;
  return rep;
}

}  // namespace maxdens
