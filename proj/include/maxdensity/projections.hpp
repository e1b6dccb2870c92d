#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

#include "maxdensity/ball_fourier.hpp"
#include "maxdensity/measures.hpp"

// Kronecker lifts T (x) I_d, the frame decomposition of a projection matrix
// with its two exponent branches, the kernel-integral formula for the density
// of a linear image at 0, the normalization that reduces sums to unit-vector
// slices, and the end-to-end projection inequality verifier.

namespace maxdens {

Eigen::MatrixXd kronecker_lift(const Eigen::MatrixXd& t, int d);

struct ProjectionDecomposition {
  int n = 0;
  int k = 0;
  Eigen::VectorXd a;         // a_i = |P e_i|
  Eigen::MatrixXd u;         // columns u_i = P e_i / a_i (zero column where a_i = 0)
  Eigen::VectorXd c;         // c_i = |(I - P) e_i|
  Eigen::VectorXd gamma_c1;  // a_i^2
  Eigen::VectorXd gamma_c2;  // 1 - c_i^2
};

// Requires P symmetric idempotent within 1e-10; throws naming the violated
// identity otherwise.
ProjectionDecomposition decompose_projection(const Eigen::MatrixXd& p);

struct KernelBasis {
  Eigen::MatrixXd columns;  // n x (n - k), spanning ker T
};

// Orthonormal kernel basis from the SVD of T.
KernelBasis make_kernel_basis(const Eigen::MatrixXd& t);
void validate_kernel_basis(const Eigen::MatrixXd& t, const KernelBasis& a);

// C = det(T T^t)^{-d/2} det(A^t A)^{d/2}, the constant with
// f_{T^(d) X}(0) = C * int f(A^(d) y) dy.
double pushforward_constant(const Eigen::MatrixXd& t, const KernelBasis& a, int d);

// Density of T X at 0 for independent grid-density coordinates (d = 1),
// evaluated through the kernel-integral formula; requires n - k <= 2.
double density_at_zero_kernel_integral(const std::vector<GridDensity>& f_list,
                                       const Eigen::MatrixXd& t, int points_per_axis = 2048);

struct NormalizedSummands {
  std::vector<double> theta;  // unit vector
  double kappa = 0.0;         // sqrt(sum M_j^{-2/d})
};

// theta_i = M_i^{-1/d} / kappa; infinite M gives theta_i = 0 (Dirac summand).
NormalizedSummands normalize_summands(const std::vector<double>& m_list, int d);

// Balls matched to the M-values: omega_d r_i^d = 1 / M_i; M = inf gives a
// Dirac marker of radius 0.
std::vector<BallLaw> rogozin_reduce(const std::vector<double>& m_list, int d);

using EpiInput = std::variant<BallLaw, GridDensity>;

struct EpiOptions {
  std::uint64_t mc_samples = 400'000;
  std::uint64_t seed = 0;
  double cell_width = 1e-3;     // exact-path grid resolution
  double mode_target = 3000.0;  // expected histogram count at the mode
};

struct EpiReport {
  double lhs = 0.0;         // point estimate of M(P^(d) X)
  double lhs_upper = 0.0;   // one-sided 99% upper confidence bound (MC path)
  double rhs = 0.0;         // c(d,k) prod M_i^{gamma_i}
  double slack = 0.0;       // rhs - lhs_upper
  bool satisfied = false;
  bool monte_carlo = false;
  int k = 0;
  int branch = 1;  // gamma branch used (1 or 2)
};

// Verifies M(P (x) I_d (X)) <= c(d,k) prod M^{gamma_i}(X_i). d = 1 with k = 1
// runs the exact grid-convolution pipeline; otherwise a histogram Monte Carlo
// estimate with d*k <= 4.
EpiReport verify_epi(const std::vector<EpiInput>& inputs, const Eigen::MatrixXd& p, int d,
                     const EpiOptions& options = {});

}  // namespace maxdens
