#include "maxdensity/projections.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "maxdensity/quadrature.hpp"

namespace maxdens {

Eigen::MatrixXd kronecker_lift(const Eigen::MatrixXd& t, int d) {
  if (d < 1) throw std::invalid_argument("kronecker_lift: d >= 1 required");
  if (t.size() == 0 || t.lpNorm<Eigen::Infinity>() == 0.0)
    throw std::invalid_argument("kronecker_lift: T must be nonzero");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(t.rows() * d, t.cols() * d);
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      out.block(i * d, j * d, d, d) = t(i, j) * Eigen::MatrixXd::Identity(d, d);
  return out;
}

ProjectionDecomposition decompose_projection(const Eigen::MatrixXd& p) {
  if (p.rows() != p.cols()) throw std::invalid_argument("decompose_projection: square matrix required");
  const double tol = 1e-10;
  if ((p - p.transpose()).lpNorm<Eigen::Infinity>() > tol)
    throw std::invalid_argument("decompose_projection: P = P^T violated");
  if ((p * p - p).lpNorm<Eigen::Infinity>() > tol)
    throw std::invalid_argument("decompose_projection: P^2 = P violated");

  ProjectionDecomposition dec;
  dec.n = static_cast<int>(p.rows());
  dec.k = static_cast<int>(std::lround(p.trace()));
  dec.a.resize(dec.n);
  dec.c.resize(dec.n);
  dec.gamma_c1.resize(dec.n);
  dec.gamma_c2.resize(dec.n);
  dec.u = Eigen::MatrixXd::Zero(dec.n, dec.n);
  Eigen::MatrixXd complement = Eigen::MatrixXd::Identity(dec.n, dec.n) - p;
  for (int i = 0; i < dec.n; ++i) {
    dec.a(i) = p.col(i).norm();
    dec.c(i) = complement.col(i).norm();
    dec.gamma_c1(i) = dec.a(i) * dec.a(i);
    dec.gamma_c2(i) = 1.0 - dec.c(i) * dec.c(i);
    if (dec.a(i) > 1e-12) dec.u.col(i) = p.col(i) / dec.a(i);
  }
  return dec;
}

KernelBasis make_kernel_basis(const Eigen::MatrixXd& t) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t, Eigen::ComputeFullV);
  double scale = svd.singularValues()(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-12 * scale) ++rank;
  KernelBasis basis;
  basis.columns = svd.matrixV().rightCols(t.cols() - rank);
  return basis;
}

void validate_kernel_basis(const Eigen::MatrixXd& t, const KernelBasis& a) {
  if (a.columns.cols() == 0) return;  // trivial kernel
  if (a.columns.rows() != t.cols())
    throw std::invalid_argument("KernelBasis: dimension mismatch with T");
  double scale = std::max(1.0, t.lpNorm<Eigen::Infinity>() * a.columns.lpNorm<Eigen::Infinity>());
  if ((t * a.columns).lpNorm<Eigen::Infinity>() > 1e-10 * scale)
    throw std::invalid_argument("KernelBasis: T A != 0");
  double gram = (a.columns.transpose() * a.columns).determinant();
  if (gram <= 1e-12) throw std::invalid_argument("KernelBasis: columns not independent");
}

double pushforward_constant(const Eigen::MatrixXd& t, const KernelBasis& a, int d) {
  if (d < 1) throw std::invalid_argument("pushforward_constant: d >= 1 required");
  validate_kernel_basis(t, a);
  if (t.cols() - a.columns.cols() != t.rows())
    throw std::invalid_argument("pushforward_constant: kernel dimension does not match rank");
  double det_t = (t * t.transpose()).determinant();
  if (!(det_t > 1e-12)) throw std::invalid_argument("pushforward_constant: T is rank deficient");
  double det_a = (a.columns.cols() == 0)
                     ? 1.0
                     : (a.columns.transpose() * a.columns).determinant();
  return std::pow(det_t, -0.5 * d) * std::pow(det_a, 0.5 * d);
}

double density_at_zero_kernel_integral(const std::vector<GridDensity>& f_list,
                                       const Eigen::MatrixXd& t, int points_per_axis) {
  const auto n = static_cast<std::size_t>(t.cols());
  if (f_list.size() != n) throw std::invalid_argument("kernel integral: one density per column");
  KernelBasis basis = make_kernel_basis(t);
  const auto m = static_cast<std::size_t>(basis.columns.cols());
  if (m > 2) throw std::invalid_argument("kernel integral: n - k <= 2 required");
  const double c = pushforward_constant(t, basis, 1);

  if (m == 0) {
    double v = c;
    for (std::size_t i = 0; i < n; ++i) v *= f_list[i].at(0.0);
    return v;
  }

  // constant factors from rows orthogonal to the kernel
  double outside = 1.0;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> active;
  std::vector<double> lo, hi;
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd row = basis.columns.row(static_cast<Eigen::Index>(i));
    if (row.norm() < 1e-13) {
      outside *= f_list[i].at(0.0);
      continue;
    }
    rows.push_back(std::vector<double>(row.data(), row.data() + m));
    active.push_back(i);
    lo.push_back(f_list[i].left);
    hi.push_back(f_list[i].right());
  }
  if (rows.empty()) return 0.0;  // kernel directions unconstrained: escapes every support
  SlabBox box = bounding_box_of_slabs(rows, lo, hi);
  if (box.empty) return 0.0;

  const int q = points_per_axis;
  double total = 0.0;
  if (m == 1) {
    double step = (box.hi[0] - box.lo[0]) / q;
    for (int i = 0; i < q; ++i) {
      double y = box.lo[0] + (i + 0.5) * step;
      double v = 1.0;
      for (std::size_t r = 0; r < rows.size() && v != 0.0; ++r)
        v *= f_list[active[r]].at(rows[r][0] * y);
      total += v;
    }
    total *= step;
  } else {
    double sx = (box.hi[0] - box.lo[0]) / q, sy = (box.hi[1] - box.lo[1]) / q;
    for (int i = 0; i < q; ++i) {
      double y0 = box.lo[0] + (i + 0.5) * sx;
      for (int j = 0; j < q; ++j) {
        double y1 = box.lo[1] + (j + 0.5) * sy;
        double v = 1.0;
        for (std::size_t r = 0; r < rows.size() && v != 0.0; ++r)
          v *= f_list[active[r]].at(rows[r][0] * y0 + rows[r][1] * y1);
        total += v;
      }
    }
    total *= sx * sy;
  }
  return c * outside * total;
}

NormalizedSummands normalize_summands(const std::vector<double>& m_list, int d) {
  if (m_list.empty()) throw std::invalid_argument("normalize_summands: empty input");
  NormalizedSummands out;
  out.theta.resize(m_list.size());
  double sum = 0.0;
  bool any_finite = false;
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (!(m_list[i] > 0.0)) throw std::invalid_argument("normalize_summands: M must be positive");
    if (std::isinf(m_list[i])) {
      out.theta[i] = 0.0;
    } else {
      any_finite = true;
      out.theta[i] = std::pow(m_list[i], -1.0 / d);
      sum += out.theta[i] * out.theta[i];
    }
  }
  if (!any_finite) throw std::invalid_argument("normalize_summands: all M infinite");
  out.kappa = std::sqrt(sum);
  for (double& t : out.theta) t /= out.kappa;
  return out;
}

std::vector<BallLaw> rogozin_reduce(const std::vector<double>& m_list, int d) {
  std::vector<BallLaw> out;
  out.reserve(m_list.size());
  for (double m : m_list) out.push_back(ball_with_m(d, m));
  return out;
}

namespace {

double input_m_value(const EpiInput& in, int d) {
  if (std::holds_alternative<BallLaw>(in)) {
    const auto& b = std::get<BallLaw>(in);
    if (b.dimension != d) throw std::invalid_argument("verify_epi: ball dimension mismatch");
    return b.m_value();
  }
  if (d != 1) throw std::invalid_argument("verify_epi: grid inputs require d = 1");
  return m_grid(std::get<GridDensity>(in)).value;
}

GridDensity input_as_grid(const EpiInput& in, double h) {
  if (std::holds_alternative<GridDensity>(in)) return std::get<GridDensity>(in);
  const auto& b = std::get<BallLaw>(in);
  if (b.is_dirac()) throw std::invalid_argument("verify_epi: Dirac input on the exact path");
  return indicator_density(-b.radius, b.radius, h);
}

struct GridSampler {
  const GridDensity* g;
  std::vector<double> cdf;

  explicit GridSampler(const GridDensity& grid) : g(&grid) {
    cdf.resize(grid.values.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
      acc += grid.values[i] * grid.cell_width;
      cdf[i] = acc;
    }
    cdf.back() = 1.0;
  }

  double operator()(double u01, double u02) const {
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u01);
    auto i = static_cast<std::size_t>(it - cdf.begin());
    return g->left + (static_cast<double>(i) + u02) * g->cell_width;
  }
};

}  // namespace

EpiReport verify_epi(const std::vector<EpiInput>& inputs, const Eigen::MatrixXd& p, int d,
                     const EpiOptions& options) {
  const auto n = static_cast<std::size_t>(p.rows());
  if (inputs.size() != n) throw std::invalid_argument("verify_epi: one input per coordinate");
  ProjectionDecomposition dec = decompose_projection(p);
  SlicingConstants consts = c_constants(d, dec.k, static_cast<int>(n));

  EpiReport rep;
  rep.k = dec.k;
  rep.branch = consts.c1 <= consts.c2 ? 1 : 2;
  const Eigen::VectorXd& gamma = rep.branch == 1 ? dec.gamma_c1 : dec.gamma_c2;
  rep.rhs = consts.c;
  for (std::size_t i = 0; i < n; ++i) {
    double m = input_m_value(inputs[i], d);
    rep.rhs *= std::pow(m, gamma(static_cast<Eigen::Index>(i)));
  }

  if (d == 1 && dec.k == 1) {
    // P = theta theta^T; M(P X) is the max of the density of theta . X
    Eigen::Index imax;
    dec.a.maxCoeff(&imax);
    Eigen::VectorXd theta = p.col(imax) / dec.a(imax);
    GridDensity conv;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      double w = theta(static_cast<Eigen::Index>(i));
      if (std::abs(w) < 1e-14) continue;
      GridDensity fi = scale_density(input_as_grid(inputs[i], options.cell_width / std::abs(w)),
                                     w);
      GridDensity aligned = resample(fi, options.cell_width);
      conv = first ? aligned : convolve_grids(conv, aligned);
      first = false;
    }
    if (first) throw std::invalid_argument("verify_epi: projection annihilates every input");
    rep.lhs = m_grid(conv).value;
    rep.lhs_upper = rep.lhs;
    rep.slack = rep.rhs - rep.lhs_upper;
    rep.satisfied = rep.lhs_upper <= rep.rhs + 1e-9;
    return rep;
  }

  const int dim = d * dec.k;
  if (dim > 4) throw std::invalid_argument("verify_epi: d*k <= 4 cap in Monte Carlo mode");
  rep.monte_carlo = true;

  // orthonormal basis of range(P)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p);
  Eigen::MatrixXd v(n, dec.k);
  int col = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()(i) > 0.5) v.col(col++) = eig.eigenvectors().col(i);

  // per-input samplers of points in R^d and coordinatewise support intervals
  std::vector<GridDensity> grids;
  std::vector<GridSampler> grid_samplers;
  std::vector<double> ball_radius(n, 0.0);
  std::vector<int> grid_index(n, -1);
  std::vector<std::pair<double, double>> supports(n);
  grids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (d == 1) {
      grids.push_back(input_as_grid(inputs[i], options.cell_width));
      grid_index[i] = static_cast<int>(grids.size()) - 1;
      supports[i] = {grids.back().left, grids.back().right()};
    } else {
      const auto& b = std::get<BallLaw>(inputs[i]);
      ball_radius[i] = b.radius;
      supports[i] = {-b.radius, b.radius};
    }
  }
  grid_samplers.reserve(grids.size());
  for (const auto& g : grids) grid_samplers.emplace_back(g);

  // axis (j, a) collects sum_i V(i,j) x_i[a]
  std::vector<double> zlo(dim, 0.0), zhi(dim, 0.0);
  for (int j = 0; j < dec.k; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double w = v(static_cast<Eigen::Index>(i), j);
      for (int a = 0; a < d; ++a) {
        zlo[j * d + a] += std::min(w * supports[i].first, w * supports[i].second);
        zhi[j * d + a] += std::max(w * supports[i].first, w * supports[i].second);
      }
    }
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::uint64_t n_samples = options.mc_samples;
  std::vector<double> batch(n_samples * static_cast<std::uint64_t>(dim));
  std::vector<double> x(d);
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    double* z = batch.data() + s * dim;
    std::fill(z, z + dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (d == 1) {
        x[0] = grid_samplers[grid_index[i]](unif(rng), unif(rng));
      } else {
        // uniform point of the d-ball: gaussian direction, radial cdf inverse
        double norm2 = 0.0;
        for (int a = 0; a < d; ++a) {
          x[a] = gauss(rng);
          norm2 += x[a] * x[a];
        }
        double scale = ball_radius[i] * std::pow(unif(rng), 1.0 / d) / std::sqrt(norm2);
        for (int a = 0; a < d; ++a) x[a] *= scale;
      }
      for (int j = 0; j < dec.k; ++j) {
        double w = v(static_cast<Eigen::Index>(i), j);
        for (int a = 0; a < d; ++a) z[j * d + a] += w * x[a];
      }
    }
  }

  auto histogram_peak = [&](const std::vector<int>& cells) {
    std::vector<double> step(dim);
    double vol = 1.0;
    std::size_t total_cells = 1;
    for (int j = 0; j < dim; ++j) {
      step[j] = (zhi[j] - zlo[j]) / cells[j];
      vol *= step[j];
      total_cells *= static_cast<std::size_t>(cells[j]);
    }
    std::vector<std::uint32_t> hist(total_cells, 0);
    for (std::uint64_t s = 0; s < n_samples; ++s) {
      const double* pt = batch.data() + s * dim;
      std::size_t idx = 0;
      bool ok = true;
      for (int j = 0; j < dim; ++j) {
        auto b = static_cast<long>((pt[j] - zlo[j]) / step[j]);
        if (b < 0 || b >= cells[j]) {
          ok = false;
          break;
        }
        idx = idx * static_cast<std::size_t>(cells[j]) + static_cast<std::size_t>(b);
      }
      if (ok) ++hist[idx];
    }
    std::uint32_t peak = *std::max_element(hist.begin(), hist.end());
    return std::pair<double, double>(static_cast<double>(peak), vol);
  };

  // pilot pass fixes the scale, second pass targets the mode occupancy
  std::vector<int> coarse(dim, dim == 1 ? 64 : (dim == 2 ? 24 : 10));
  auto [c0, v0] = histogram_peak(coarse);
  double peak_density = std::max(c0 / (static_cast<double>(n_samples) * v0), 1e-12);
  double target_vol = options.mode_target / (static_cast<double>(n_samples) * peak_density);
  std::vector<int> cells(dim);
  for (int j = 0; j < dim; ++j) {
    double side = std::pow(target_vol, 1.0 / dim);
    cells[j] = std::clamp(static_cast<int>((zhi[j] - zlo[j]) / side), 4, 512);
  }
  auto [count, vol] = histogram_peak(cells);

  const double nn = static_cast<double>(n_samples);
  double p_hat = count / nn;
  double ucb = p_hat + 2.3263478740408408 * std::sqrt(p_hat * (1.0 - p_hat) / nn);
  rep.lhs = p_hat / vol;
  rep.lhs_upper = ucb / vol;
  rep.slack = rep.rhs - rep.lhs_upper;
  rep.satisfied = rep.lhs_upper <= rep.rhs * (1.0 + 1e-9);
  return rep;
}

}  // namespace maxdens
