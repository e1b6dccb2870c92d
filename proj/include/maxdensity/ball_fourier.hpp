#pragma once

#include <vector>

#include "maxdensity/quadrature.hpp"

// Uniform laws on Euclidean balls: characteristic functions, the p-norm
// integral bound on them, maxima of densities of weighted sums via Fourier
// inversion, and the closed-form constants attached to these bounds.

namespace maxdens {

// Volume of the unit ball and radius of the unit-volume ball in dimension d.
double unit_ball_volume(int d);
double unit_volume_radius(int d);

// Uniform distribution on an origin-centered ball; radius 0 encodes a Dirac
// point mass at 0 (the M = infinity reduction).
struct BallLaw {
  int dimension = 1;
  double radius = 0.0;

  bool is_dirac() const { return radius == 0.0; }
  double m_value() const;
};

BallLaw ball_with_m(int d, double m_value);

// One-coordinate characteristic function of the uniform law on the d-ball of
// radius r, phi(s) = E cos(s X_1); real, even, phi(0) = 1.
double ball_charfun(int d, double r, double s);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// (2 pi)^{-d} int_{R^d} |phi(|xi|)|^p dxi computed by radial reduction.
IntegralResult charfun_pnorm_integral(int d, double r, double p, const QuadratureSpec& spec = {});

// M(theta_1 Z_1 + ... + theta_n Z_n) for independent uniform ball laws Z_i of
// the given radii, via Fourier inversion; theta must be a unit vector. Radius
// 0 entries (Dirac factors) drop out of the sum.
IntegralResult density_at_zero_sum_balls(int d, const std::vector<double>& theta,
                                         const std::vector<double>& radii,
                                         const QuadratureSpec& spec = {});

// Slicing constant c(d) = (1 + d/2)^{d/2} / Gamma(1 + d/2).
double c_d(int d);

struct SlicingConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c = 0.0;  // min(c1, c2)
};

// c(d,k) for projections of n independent factors; the d = 1 branch of c1 is
// 2^{k/2}. k = n degenerates to c = 1 (identity projection).
SlicingConstants c_constants(int d, int k, int n);

// Gamma^{2/d}(d/2 + 1) / (d/2 + 1), the entropy-power constant; decreases to
// 1/e as d grows.
double epi_constant(int d);

// c(d,k,n)^{-2/(dk)} written as the max of its two branches.
double epi_power_bound(int d, int k, int n);

}  // namespace maxdens
