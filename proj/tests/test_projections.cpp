#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "maxdensity/projections.hpp"
#include "maxdensity/rearrangement.hpp"

using namespace maxdens;

namespace {

Eigen::MatrixXd random_projection(std::mt19937_64& rng, int n, int k) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  return q * q.transpose();
}

GridDensity random_interval(std::mt19937_64& rng, double h) {
  std::uniform_real_distribution<double> width(0.5, 1.5), center(-0.5, 0.5);
  double w = width(rng), c = center(rng);
  return indicator_density(c - w / 2, c + w / 2, h);
}

}  // namespace

TEST_CASE("kronecker lift") {
  Eigen::MatrixXd t(1, 2);
  t << 1.0, 1.0;
  Eigen::MatrixXd lifted = kronecker_lift(t, 2);
  Eigen::MatrixXd expect(2, 4);
  expect << 1, 0, 1, 0, 0, 1, 0, 1;
  CHECK((lifted - expect).lpNorm<Eigen::Infinity>() == 0.0);

  Eigen::MatrixXd t2(2, 3);
  t2 << 1, 2, 3, 4, 5, 6;
  CHECK((kronecker_lift(t2, 1) - t2).lpNorm<Eigen::Infinity>() == 0.0);

  // lift of a product equals product of lifts
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(2, 3), b(3, 2);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = gauss(rng);
  for (int i = 0; i < b.size(); ++i) b.data()[i] = gauss(rng);
  for (int d : {2, 3}) {
    Eigen::MatrixXd lhs = kronecker_lift(a * b, d);
    Eigen::MatrixXd rhs = kronecker_lift(a, d) * kronecker_lift(b, d);
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-12);
  }

  // rank multiplies by d
  Eigen::MatrixXd l3 = kronecker_lift(a, 3);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(l3);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10) ++rank;
  CHECK(rank == 6);
}

TEST_CASE("projection decomposition on the diagonal line in R^2") {
  Eigen::MatrixXd p(2, 2);
  p << 0.5, 0.5, 0.5, 0.5;
  ProjectionDecomposition dec = decompose_projection(p);
  CHECK(dec.k == 1);
  CHECK(dec.a(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(dec.a(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(dec.gamma_c1(0) == doctest::Approx(0.5));
  CHECK(dec.gamma_c2(0) == doctest::Approx(0.5));
  CHECK(dec.c(0) * dec.c(0) + dec.c(1) * dec.c(1) == doctest::Approx(1.0));  // n - k
}

TEST_CASE("decomposition invariants on random projections") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 11);  // up to 12
    int k = 1 + static_cast<int>(rng() % n);
    Eigen::MatrixXd p = random_projection(rng, n, k);
    ProjectionDecomposition dec = decompose_projection(p);
    CHECK(dec.k == k);
    CHECK(dec.a.squaredNorm() == doctest::Approx(static_cast<double>(k)).epsilon(1e-10));
    CHECK(dec.c.squaredNorm() == doctest::Approx(static_cast<double>(n - k)).epsilon(1e-10));
    double sum1 = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(dec.gamma_c1(i) >= -1e-12);
      CHECK(dec.gamma_c1(i) <= 1.0 + 1e-12);
      CHECK(dec.gamma_c2(i) >= -1e-12);
      CHECK(dec.gamma_c2(i) <= 1.0 + 1e-12);
      sum1 += dec.gamma_c1(i);
      sum2 += dec.gamma_c2(i);
    }
    CHECK(sum1 == doctest::Approx(static_cast<double>(k)).epsilon(1e-10));
    CHECK(sum2 == doctest::Approx(static_cast<double>(k)).epsilon(1e-10));
    // reconstruction P = sum a_i^2 u_i u_i^T
    Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      recon += dec.gamma_c1(i) * dec.u.col(i) * dec.u.col(i).transpose();
    CHECK((recon - p).lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("equal-column projections make both exponent branches coincide") {
  int n = 5;
  Eigen::VectorXd ones = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(n));
  Eigen::MatrixXd p = ones * ones.transpose();
  ProjectionDecomposition dec = decompose_projection(p);
  for (int i = 0; i < n; ++i)
    CHECK(dec.gamma_c1(i) == doctest::Approx(dec.gamma_c2(i)).epsilon(1e-12));
}

TEST_CASE("decompose rejects non-projections") {
  Eigen::MatrixXd sym(2, 2);
  sym << 1.0, 0.2, 0.2, 0.5;  // symmetric, not idempotent
  CHECK_THROWS_WITH_AS(decompose_projection(sym), doctest::Contains("P^2 = P"),
                       std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.3, 0.0, 0.0;
  CHECK_THROWS_WITH_AS(decompose_projection(asym), doctest::Contains("P = P^T"),
                       std::invalid_argument);
}

TEST_CASE("pushforward constant for the sum map") {
  Eigen::MatrixXd t(1, 2);
  t << 1.0, 1.0;
  KernelBasis a;
  a.columns = Eigen::MatrixXd(2, 1);
  a.columns << 1.0, -1.0;
  CHECK(pushforward_constant(t, a, 1) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXd scale(1, 1);
  scale << 2.0;
  KernelBasis empty;
  empty.columns = Eigen::MatrixXd(1, 0);
  CHECK(pushforward_constant(scale, empty, 1) == doctest::Approx(0.5));

  // unit row with orthonormal kernel basis: constant 1
  Eigen::MatrixXd row(1, 3);
  row << 0.6, 0.0, 0.8;
  KernelBasis basis = make_kernel_basis(row);
  CHECK(pushforward_constant(row, basis, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pushforward_constant(row, basis, 3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel basis validation") {
  Eigen::MatrixXd t(1, 2);
  t << 1.0, 1.0;
  KernelBasis bad;
  bad.columns = Eigen::MatrixXd(2, 1);
  bad.columns << 1.0, 1.0;  // not in the kernel
  CHECK_THROWS_AS(pushforward_constant(t, bad, 1), std::invalid_argument);

  Eigen::MatrixXd rank_def(2, 2);
  rank_def << 1.0, 1.0, 1.0, 1.0;
  KernelBasis k = make_kernel_basis(rank_def);
  CHECK_THROWS_AS(pushforward_constant(rank_def, k, 1), std::invalid_argument);
}

TEST_CASE("kernel integral: triangle peak and scaling law") {
  double h = 1e-3;
  GridDensity boxa = indicator_density(-0.5, 0.5, h);
  GridDensity boxb = indicator_density(-0.5, 0.5, h);
  Eigen::MatrixXd sum(1, 2);
  sum << 1.0, 1.0;
  CHECK(density_at_zero_kernel_integral({boxa, boxb}, sum) == doctest::Approx(1.0).epsilon(1e-3));

  Eigen::MatrixXd diag(1, 2);
  diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(density_at_zero_kernel_integral({boxa, boxb}, diag) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));

  Eigen::MatrixXd two(1, 1);
  two << 2.0;
  CHECK(density_at_zero_kernel_integral({boxa}, two) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("kernel integral agrees with the grid convolution oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(0.35, 1.5);
  std::bernoulli_distribution flip(0.5);
  double h = 1e-3;
  for (int trial = 0; trial < 100; ++trial) {
    GridDensity f = random_interval(rng, h);
    GridDensity g = random_interval(rng, h);
    double t1 = coef(rng) * (flip(rng) ? 1.0 : -1.0);
    double t2 = coef(rng) * (flip(rng) ? 1.0 : -1.0);
    Eigen::MatrixXd t(1, 2);
    t << t1, t2;
    double got = density_at_zero_kernel_integral({f, g}, t, 4096);
    // oracle: density of t1 X + t2 Y at 0 through scaled grid convolution
    GridDensity conv =
        convolve_grids(resample(scale_density(f, t1), h), resample(scale_density(g, t2), h));
    double oracle = conv.at(0.0);
    CHECK(got == doctest::Approx(oracle).epsilon(2e-3));
  }
}

TEST_CASE("kernel integral with a rank-2 map and two kernel directions") {
  // T : R^4 -> R^2 summing pairs; kernel is 2-dimensional
  Eigen::MatrixXd t(2, 4);
  t << 1, 1, 0, 0, 0, 0, 1, 1;
  double h = 2e-3;
  std::vector<GridDensity> fs(4, indicator_density(-0.5, 0.5, h));
  double got = density_at_zero_kernel_integral(fs, t, 1024);
  // density of (X1+X2, X3+X4) at (0,0) = 1 * 1 (two independent triangle peaks)
  CHECK(got == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("normalize_summands") {
  NormalizedSummands eq = normalize_summands({1.0, 1.0}, 1);
  CHECK(eq.theta[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(eq.kappa == doctest::Approx(std::sqrt(2.0)));

  double inf = std::numeric_limits<double>::infinity();
  NormalizedSummands dirac = normalize_summands({1.0, inf}, 1);
  CHECK(dirac.theta[0] == doctest::Approx(1.0));
  CHECK(dirac.theta[1] == 0.0);
  CHECK(dirac.kappa == doctest::Approx(1.0));

  NormalizedSummands mixed = normalize_summands({1.0, 4.0}, 2);
  CHECK(mixed.theta[0] == doctest::Approx(2.0 / std::sqrt(5.0)));
  CHECK(mixed.theta[1] == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(mixed.kappa == doctest::Approx(std::sqrt(5.0) / 2.0));

  CHECK_THROWS_AS(normalize_summands({inf, inf}, 1), std::invalid_argument);
}

TEST_CASE("rogozin reduction to matched balls") {
  auto balls = rogozin_reduce({1.0}, 2);
  CHECK(balls[0].radius == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)));
  auto dirac = rogozin_reduce({std::numeric_limits<double>::infinity()}, 2);
  CHECK(dirac[0].is_dirac());
  auto octo = rogozin_reduce({8.0}, 3);
  CHECK(octo[0].radius == doctest::Approx(unit_volume_radius(3) / 2.0));
}

TEST_CASE("rogozin dominance of ball slices over grid slices (d = 1)") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double h = 2e-3;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    // unit direction with components bounded away from 0
    std::vector<double> theta(n);
    double norm = 0.0;
    for (double& t : theta) {
      do t = unif(rng);
      while (std::abs(t) < 0.25);
      norm += t * t;
    }
    for (double& t : theta) t /= std::sqrt(norm);
    bool degenerate = false;
    for (double t : theta)
      if (std::abs(t) < 0.05) degenerate = true;
    if (degenerate) continue;

    std::vector<GridDensity> fs;
    std::vector<double> radii;
    GridDensity conv;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      GridDensity f = random_interval(rng, h);
      radii.push_back(ball_with_m(1, m_grid(f).value).radius);
      GridDensity scaled = resample(scale_density(f, theta[i]), h);
      conv = first ? scaled : convolve_grids(conv, scaled);
      first = false;
      fs.push_back(std::move(f));
    }
    double lhs = m_grid(conv).value;
    double rhs = density_at_zero_sum_balls(1, theta, radii).value;
    CHECK(lhs <= rhs + 1e-3);
  }
}

TEST_CASE("verify_epi: identity projection is trivially satisfied") {
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(1, 1);
  EpiOptions opt;
  opt.cell_width = 1e-3;
  EpiReport rep = verify_epi({GridDensity(indicator_density(-0.5, 0.5, 1e-3))}, p, 1, opt);
  CHECK(rep.satisfied);
  CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.rhs >= rep.lhs - 1e-9);
}

TEST_CASE("verify_epi: diagonal slice of the square attains the bound") {
  Eigen::MatrixXd p(2, 2);
  p << 0.5, 0.5, 0.5, 0.5;
  double h = 1e-4;
  std::vector<EpiInput> inputs{indicator_density(-0.5, 0.5, h), indicator_density(-0.5, 0.5, h)};
  EpiOptions opt;
  opt.cell_width = h;
  EpiReport rep = verify_epi(inputs, p, 1, opt);
  CHECK_FALSE(rep.monte_carlo);
  CHECK(rep.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  CHECK(rep.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.satisfied);
}

TEST_CASE("verify_epi: exact path over random rank-1 projections") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    Eigen::MatrixXd p = random_projection(rng, n, 1);
    std::vector<EpiInput> inputs;
    for (int i = 0; i < n; ++i) inputs.emplace_back(random_interval(rng, 1e-3));
    EpiOptions opt;
    opt.cell_width = 2e-3;
    EpiReport rep = verify_epi(inputs, p, 1, opt);
    CHECK_FALSE(rep.monte_carlo);
    CHECK(rep.satisfied);
  }
}

TEST_CASE("verify_epi: monte carlo path on a rank-2 projection") {
  std::mt19937_64 rng(17);
  Eigen::MatrixXd p = random_projection(rng, 4, 2);
  std::vector<EpiInput> inputs;
  for (int i = 0; i < 4; ++i) inputs.emplace_back(random_interval(rng, 1e-3));
  EpiOptions opt;
  opt.mc_samples = 200000;
  opt.seed = 99;
  EpiReport rep = verify_epi(inputs, p, 1, opt);
  CHECK(rep.monte_carlo);
  CHECK(rep.lhs <= rep.lhs_upper);
  CHECK(rep.satisfied);
  // deterministic for a fixed seed
  EpiReport again = verify_epi(inputs, p, 1, opt);
  CHECK(rep.lhs == again.lhs);
  CHECK(rep.lhs_upper == again.lhs_upper);
}

TEST_CASE("verify_epi: planar Monte Carlo agrees with the Fourier value") {
  // rank-1 projection of three planar balls: M(P^(2) Z) = M(sum theta_i Z_i)
  std::mt19937_64 rng(23);
  Eigen::MatrixXd p = random_projection(rng, 3, 1);
  ProjectionDecomposition dec = decompose_projection(p);
  std::vector<double> theta(3), radii{0.9, 1.1, 0.75};
  Eigen::Index imax;
  dec.a.maxCoeff(&imax);
  for (int i = 0; i < 3; ++i) theta[i] = p(i, imax) / dec.a(imax);

  std::vector<EpiInput> inputs;
  for (int i = 0; i < 3; ++i) inputs.emplace_back(BallLaw{2, radii[i]});
  EpiOptions opt;
  opt.mc_samples = 600000;
  opt.seed = 4;
  EpiReport rep = verify_epi(inputs, p, 2, opt);
  CHECK(rep.monte_carlo);
  CHECK(rep.satisfied);

  double fourier = density_at_zero_sum_balls(2, theta, radii).value;
  // histogram cell averages sit a little under the smooth peak
  CHECK(rep.lhs == doctest::Approx(fourier).epsilon(0.08));
  CHECK(rep.lhs <= fourier * 1.02);
  CHECK(rep.rhs >= fourier * (1.0 - 1e-9));
}

TEST_CASE("verify_epi rejects configurations past the histogram cap") {
  std::mt19937_64 rng(29);
  Eigen::MatrixXd p = random_projection(rng, 4, 3);
  std::vector<EpiInput> inputs(4, EpiInput(BallLaw{2, 1.0}));
  CHECK_THROWS_AS(verify_epi(inputs, p, 2), std::invalid_argument);  // d*k = 6
}

TEST_CASE("epi chain: N_inf of ball sums dominates the weighted sum of powers") {
  // sum case of the projection inequality, checked through the Fourier values
  for (int d : {1, 2}) {
    double r = unit_volume_radius(d);
    for (int n = 2; n <= 6; ++n) {
      std::vector<double> theta(n, 1.0 / std::sqrt(static_cast<double>(n)));
      std::vector<double> radii(n, r * std::sqrt(static_cast<double>(n)));
      double m_sum = density_at_zero_sum_balls(d, theta, radii).value;
      double n_inf = renyi_infinity_power(m_sum, d);
      double rhs = std::pow(c_constants(d, 1, n).c, -2.0 / d) * n;  // each N_inf(Z_i) = 1
      CHECK(n_inf >= rhs * (1.0 - 1e-4));
    }
  }
}
