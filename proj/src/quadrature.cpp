#include "maxdensity/quadrature.hpp"

#include <algorithm>
#include <limits>

namespace maxdens {

namespace {

// Solve the N x N system M x = b by Gaussian elimination; false if singular.
bool solve_small(std::vector<std::vector<double>> m, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-12) return false;
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return true;
}

}  // namespace

SlabBox bounding_box_of_slabs(const std::vector<std::vector<double>>& rows,
                              const std::vector<double>& lo, const std::vector<double>& hi) {
  const std::size_t n = rows.size();
  if (n == 0) throw std::invalid_argument("bounding_box_of_slabs: no constraints");
  const std::size_t N = rows[0].size();
  if (N < 1 || N > 3) throw std::invalid_argument("bounding_box_of_slabs: N must be 1..3");

  // hyperplanes a_i.x = c with c in {lo_i, hi_i}
  std::vector<std::pair<std::size_t, double>> planes;
  for (std::size_t i = 0; i < n; ++i) {
    planes.emplace_back(i, lo[i]);
    planes.emplace_back(i, hi[i]);
  }

  auto feasible = [&](const std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
      double t = 0.0;
      for (std::size_t j = 0; j < N; ++j) t += rows[i][j] * x[j];
      double span = std::max(1.0, std::abs(hi[i]) + std::abs(lo[i]));
      if (t < lo[i] - 1e-9 * span || t > hi[i] + 1e-9 * span) return false;
    }
    return true;
  };

  SlabBox box;
  box.lo.assign(N, std::numeric_limits<double>::infinity());
  box.hi.assign(N, -std::numeric_limits<double>::infinity());
  bool any = false;

  std::vector<std::size_t> pick(N);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == N) {
      std::vector<std::vector<double>> m(N);
      std::vector<double> b(N);
      for (std::size_t i = 0; i < N; ++i) {
        m[i] = rows[planes[pick[i]].first];
        b[i] = planes[pick[i]].second;
      }
      std::vector<double> x;
      if (solve_small(m, b, x) && feasible(x)) {
        any = true;
        for (std::size_t j = 0; j < N; ++j) {
          box.lo[j] = std::min(box.lo[j], x[j]);
          box.hi[j] = std::max(box.hi[j], x[j]);
        }
      }
      return;
    }
    for (std::size_t i = start; i < planes.size(); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);

  box.empty = !any;
  return box;
}

}  // namespace maxdens
