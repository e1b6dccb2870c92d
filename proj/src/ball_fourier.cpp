#include "maxdensity/ball_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

namespace maxdens {

namespace {

constexpr double kPi = std::numbers::pi;
// argument above which the large-argument expansion of the characteristic
// function takes over from direct quadrature
constexpr double kAsymSwitch = 60.0;

double sq(double x) { return x * x; }

struct CharfunParams {
  double nu;       // d / 2
  double mu;       // 4 nu^2
  double k_amp;    // Gamma(nu+1) 2^nu sqrt(2/pi)
  double poisson;  // 2 Gamma(d/2+1) / (sqrt(pi) Gamma((d+1)/2))
};

CharfunParams charfun_params(int d) {
  CharfunParams p;
  p.nu = 0.5 * d;
  p.mu = 4.0 * p.nu * p.nu;
  p.k_amp = std::exp(std::lgamma(p.nu + 1.0)) * std::pow(2.0, p.nu) * std::sqrt(2.0 / kPi);
  p.poisson = 2.0 * std::exp(std::lgamma(0.5 * d + 1.0) - std::lgamma(0.5 * (d + 1))) / std::sqrt(kPi);
  return p;
}

// phi as a function of x = r*s. Poisson form
//   phi(x) = c_d int_0^{pi/2} cos(x sin chi) cos^d chi dchi
// for moderate x; two-sided large-x expansion beyond.
double charfun_normalized(int d, double x, const CharfunParams& p) {
  x = std::abs(x);
  if (x < 1e-8) return 1.0 - x * x / (2.0 * (d + 2));
  if (x < kAsymSwitch) {
    auto np = static_cast<std::size_t>(x / 3.0) + 2;
    double integral = quad::panel_integrate(
        [&](double chi) { return std::cos(x * std::sin(chi)) * std::pow(std::cos(chi), d); }, 0.0,
        0.5 * kPi, np);
    return p.poisson * integral;
  }
  const double i8x = 1.0 / (8.0 * x);
  const double mu = p.mu;
  const double t1 = (mu - 1.0) * (mu - 9.0) * sq(i8x) / 2.0;
  const double t2 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) * (mu - 49.0) * sq(sq(i8x)) / 24.0;
  const double P = 1.0 - t1 + t2;
  const double Q = (mu - 1.0) * i8x - (mu - 1.0) * (mu - 9.0) * (mu - 25.0) * i8x * sq(i8x) / 6.0;
  const double omega = x - 0.5 * p.nu * kPi - 0.25 * kPi;
  return p.k_amp * std::pow(x, -(p.nu + 0.5)) * (std::cos(omega) * P - std::sin(omega) * Q);
}

// surface area of the unit sphere in R^d
double sphere_area(int d) { return 2.0 * std::pow(kPi, 0.5 * d) * std::exp(-std::lgamma(0.5 * d)); }

// mean of |cos t|^p over a period
double abs_cos_moment(double p) {
  return std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p + 1.0)) / std::sqrt(kPi);
}

}  // namespace

double unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("unit_ball_volume: d >= 1 required");
  return std::pow(kPi, 0.5 * d) * std::exp(-std::lgamma(0.5 * d + 1.0));
}

double unit_volume_radius(int d) {
  if (d < 1) throw std::invalid_argument("unit_volume_radius: d >= 1 required");
  return std::exp(std::lgamma(1.0 + 0.5 * d) / d) / std::sqrt(kPi);
}

double BallLaw::m_value() const {
  if (is_dirac()) return std::numeric_limits<double>::infinity();
  return 1.0 / (unit_ball_volume(dimension) * std::pow(radius, dimension));
}

BallLaw ball_with_m(int d, double m_value) {
  if (!(m_value > 0.0)) throw std::invalid_argument("ball_with_m: M must be positive");
  if (std::isinf(m_value)) return BallLaw{d, 0.0};
  return BallLaw{d, std::pow(1.0 / (unit_ball_volume(d) * m_value), 1.0 / d)};
}

double ball_charfun(int d, double r, double s) {
  if (d < 1 || !(r > 0.0)) throw std::invalid_argument("ball_charfun: d >= 1, r > 0 required");
  return charfun_normalized(d, r * std::abs(s), charfun_params(d));
}

IntegralResult charfun_pnorm_integral(int d, double r, double p, const QuadratureSpec& spec) {
  if (d < 1 || !(r > 0.0)) throw std::invalid_argument("charfun_pnorm_integral: bad d or r");
  if (!(p >= 2.0)) throw std::invalid_argument("charfun_pnorm_integral: p >= 2 required");
  if (spec.nodes < 64) throw std::invalid_argument("charfun_pnorm_integral: nodes >= 64 required");

  const CharfunParams cp = charfun_params(d);
  // work in x = r s; the value is pref * r^{-d} * int_0^inf |phi(x)|^p x^{d-1} dx
  const double pref = std::pow(2.0 * kPi, -d) * sphere_area(d) * std::pow(r, -d);

  const double x1 = kAsymSwitch;
  const double x2 = spec.truncation_radius > 0.0 ? spec.truncation_radius * r : 2e4;
  if (x2 <= x1)
    throw std::invalid_argument("charfun_pnorm_integral: truncation below the exact-evaluation range");

  auto integrand_exact = [&](double x) {
    return std::pow(std::abs(charfun_normalized(d, x, cp)), p) * std::pow(x, d - 1);
  };

  // exact-evaluation range with the configured node budget
  auto np_a = static_cast<std::size_t>(std::max(16, spec.nodes / 16));
  const double piece_a = quad::panel_integrate(integrand_exact, 0.0, x1, np_a, spec.scheme);
  const double piece_a_coarse = quad::panel_integrate(integrand_exact, 0.0, x1, np_a / 2, spec.scheme);

  // expansion range, half-period panels
  auto np_b = static_cast<std::size_t>((x2 - x1) / kPi) + 1;
  const double piece_b = quad::panel_integrate(integrand_exact, x1, x2, np_b, spec.scheme);

  // de-oscillated closed-form tail: |phi|^p ~ K^p x^{-p(nu+1/2)} |cos|^p and
  // |cos|^p averages to m_p; the oscillating remainder integrates to
  // O(x2^{-a+d-2}) by parts
  const double a_decay = p * (cp.nu + 0.5);
  const double q_tail = a_decay - d;  // > 0 for p >= 2
  const double kp = std::pow(cp.k_amp, p);
  const double tail = kp * abs_cos_moment(p) * std::pow(x2, -q_tail) / q_tail;
  const double tail_residual_bound = kp * (q_tail + 1.0) * std::pow(x2, -q_tail - 1.0);

  if (tail_residual_bound > std::max(1e-8, 1e-6 * (piece_a + piece_b + tail)))
    throw std::runtime_error(
        "charfun_pnorm_integral: truncation too small for the requested tolerance; increase "
        "truncation_radius beyond " +
        std::to_string(2.0 * x2 / r));

  IntegralResult res;
  res.value = pref * (piece_a + piece_b + tail);
  res.error_estimate = pref * (std::abs(piece_a - piece_a_coarse) + tail_residual_bound +
                               std::abs(piece_b) * 1e-10);
  return res;
}

namespace {

struct Factor {
  double b = 0.0;  // frequency |theta_i| * r_i
  int count = 1;
};

// int_S^inf s^{-q} Re(A e^{i Om s}) ds for q > 1. Integration by parts needs
// |Om| S >> q; below that the oscillatory stretch is integrated directly and
// truly resonant terms (Om ~ 0) reduce to a power integral.
double osc_tail_term(double q, double om, std::complex<double> a, double S, double& err_bound) {
  const double abs_om = std::abs(om);
  if (abs_om * S < 0.5) {
    // slowly beating: treat as resonant, phase drift bounded by |Om| s
    err_bound += std::abs(a) * abs_om * ((q > 2.0) ? std::pow(S, 2.0 - q) / (q - 2.0)
                                                   : std::pow(S, 1.0 - q) * 20.0);
    return a.real() * std::pow(S, 1.0 - q) / (q - 1.0);
  }
  double val = 0.0;
  double s0 = S;
  const double s_bp = 4.0 * (q + 1.0) / abs_om;  // by-parts valid beyond here
  if (s0 < s_bp) {
    auto f = [&](double s) {
      return std::pow(s, -q) * (a * std::exp(std::complex<double>(0.0, om * s))).real();
    };
    auto np = static_cast<std::size_t>((s_bp - s0) * abs_om / kPi) + 8;
    val += quad::panel_integrate(f, s0, s_bp, np);
    s0 = s_bp;
  }
  const std::complex<double> i_om(0.0, om);
  const std::complex<double> e = std::exp(std::complex<double>(0.0, om * s0));
  val += (a * (-e) * std::pow(s0, -q) / i_om * (1.0 + q / (i_om * s0))).real();
  err_bound += std::abs(a) * q * (q + 1.0) * std::pow(s0, -q - 2.0) / std::pow(abs_om, 3.0);
  return val;
}

}  // namespace

IntegralResult density_at_zero_sum_balls(int d, const std::vector<double>& theta,
                                         const std::vector<double>& radii,
                                         const QuadratureSpec& spec) {
  if (theta.size() != radii.size() || theta.empty())
    throw std::invalid_argument("density_at_zero_sum_balls: theta/radii size mismatch");
  double norm2 = 0.0;
  for (double t : theta) norm2 += t * t;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
    throw std::invalid_argument("density_at_zero_sum_balls: theta must be a unit vector");

  const CharfunParams cp = charfun_params(d);
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] == 0.0) continue;
    if (!(radii[i] >= 0.0)) throw std::invalid_argument("density_at_zero_sum_balls: negative radius");
    if (radii[i] == 0.0) continue;  // Dirac summand contributes nothing
    double b = std::abs(theta[i]) * radii[i];
    bool merged = false;
    for (auto& f : factors) {
      if (std::abs(f.b - b) < 1e-14 * std::max(f.b, b)) {
        ++f.count;
        merged = true;
        break;
      }
    }
    if (!merged) factors.push_back(Factor{b, 1});
  }

  IntegralResult res;
  if (factors.empty()) {  // all summands Dirac
    res.value = std::numeric_limits<double>::infinity();
    return res;
  }
  int n_eff = 0;
  for (const auto& f : factors) n_eff += f.count;
  if (n_eff == 1) {
    // isometric image of a single ball; inversion unnecessary
    res.value = 1.0 / (unit_ball_volume(d) * std::pow(factors[0].b, d));
    return res;
  }

  const double pref = std::pow(2.0 * kPi, -d) * sphere_area(d);
  double b_min = factors[0].b, freq_sum = 0.0;
  for (const auto& f : factors) {
    b_min = std::min(b_min, f.b);
    freq_sum += f.b * f.count;
  }

  auto integrand = [&](double s) {
    double v = (d > 1) ? std::pow(s, d - 1) : 1.0;
    for (const auto& f : factors) {
      double phi = charfun_normalized(d, f.b * s, cp);
      v *= (f.count == 1) ? phi : std::pow(phi, f.count);
    }
    return v;
  };
  // envelope |phi(x)| <= min(1, K x^{-(nu+1/2)})
  auto log_envelope = [&](double s) {
    double le = (d > 1) ? (d - 1) * std::log(s) : 0.0;
    for (const auto& f : factors)
      le += f.count * std::min(0.0, std::log(cp.k_amp) - (cp.nu + 0.5) * std::log(f.b * s));
    return le;
  };

  // numeric range: all factors must reach the expansion regime before the
  // closed-form tail applies, unless the envelope has died first
  const double s_all_asym = kAsymSwitch / b_min;
  const double panel_w = 0.5 * kPi / freq_sum;
  const double q_hat = n_eff * (cp.nu + 0.5) - (d - 1);  // s^{-q_hat} tail decay

  double accum = 0.0;
  double s = 0.0;
  const double s_cap = spec.truncation_radius > 0.0 ? spec.truncation_radius : 4.0 * s_all_asym;
  const std::size_t chunk = 64;
  bool envelope_dead = false;
  while (s < s_cap) {
    double s_next = std::min(s + panel_w * chunk, s_cap);
    accum += quad::panel_integrate(integrand, s, s_next,
                                   static_cast<std::size_t>((s_next - s) / panel_w) + 1, spec.scheme);
    s = s_next;
    // remaining-tail envelope bound; q_hat - 1 > 0 for n_eff >= 2
    double env_tail = std::exp(log_envelope(s)) * s / std::max(q_hat - 1.0, 0.5);
    if (env_tail < 1e-16 * std::max(std::abs(accum), 1e-300)) {
      envelope_dead = true;
      break;
    }
  }

  double tail = 0.0, tail_err = 0.0;
  if (!envelope_dead && n_eff <= 12) {
    // product of cosines expanded over combination frequencies; resonant
    // (zero-frequency) terms integrate in closed form, the rest by parts
    double coef = 1.0;
    for (const auto& f : factors) coef *= std::pow(cp.k_amp * std::pow(f.b, -(cp.nu + 0.5)), f.count);
    const double gamma_phase = 0.25 * (d + 1) * kPi;
    // map frequency -> complex coefficient, built factor by factor
    std::vector<std::pair<double, std::complex<double>>> terms{{0.0, {1.0, 0.0}}};
    for (const auto& f : factors) {
      for (int c = 0; c < f.count; ++c) {
        std::vector<std::pair<double, std::complex<double>>> next;
        auto add = [&](double om, std::complex<double> a) {
          for (auto& t : next) {
            if (std::abs(t.first - om) < 1e-12 * std::max(1.0, freq_sum)) {
              t.second += a;
              return;
            }
          }
          next.emplace_back(om, a);
        };
        const std::complex<double> rot = std::exp(std::complex<double>(0.0, -gamma_phase));
        for (const auto& t : terms) {
          add(t.first + f.b, 0.5 * t.second * rot);
          add(t.first - f.b, 0.5 * t.second * std::conj(rot));
        }
        terms = std::move(next);
      }
    }
    for (const auto& t : terms) {
      if (std::abs(t.first) < 1e-13 * std::max(1.0, freq_sum)) {
        tail += t.second.real() * std::pow(s, 1.0 - q_hat) / (q_hat - 1.0);
      } else {
        tail += osc_tail_term(q_hat, t.first, t.second, s, tail_err);
      }
    }
    tail *= coef;
    tail_err *= coef;
    // dropped P/Q amplitude corrections in the tail
    double amp_rel = 0.0;
    for (const auto& f : factors) amp_rel += f.count * std::abs(cp.mu - 1.0) / (8.0 * f.b * s);
    tail_err += std::abs(tail) * amp_rel;
  } else if (!envelope_dead) {
    tail_err += std::exp(log_envelope(s)) * s / std::max(q_hat - 1.0, 0.5);
  }

  res.value = pref * (accum + tail);
  res.error_estimate = pref * (tail_err + std::abs(accum) * 1e-12);
  return res;
}

double c_d(int d) {
  if (d < 1) throw std::invalid_argument("c_d: d >= 1 required");
  double half = 0.5 * d;
  return std::exp(half * std::log1p(half) - std::lgamma(1.0 + half));
}

SlicingConstants c_constants(int d, int k, int n) {
  if (d < 1 || k < 1 || n < 1) throw std::invalid_argument("c_constants: positive d, k, n required");
  if (k > n) throw std::invalid_argument("c_constants: k <= n required");
  SlicingConstants out;
  out.c1 = (d == 1) ? std::pow(2.0, 0.5 * k) : std::pow(c_d(d), k);
  if (k == n) {
    out.c2 = 1.0;  // identity projection, empty-kernel convention
    out.c = 1.0;
    return out;
  }
  double ratio = static_cast<double>(n) / static_cast<double>(n - k);
  double expo = (d == 1) ? 0.5 * (n - k) : 0.5 * d * (n - k);
  out.c2 = std::pow(ratio, expo);
  out.c = std::min(out.c1, out.c2);
  return out;
}

double epi_constant(int d) {
  if (d < 1) throw std::invalid_argument("epi_constant: d >= 1 required");
  double half = 0.5 * d;
  return std::exp((2.0 / d) * std::lgamma(half + 1.0) - std::log1p(half));
}

double epi_power_bound(int d, int k, int n) {
  if (d < 1 || k < 1 || k > n) throw std::invalid_argument("epi_power_bound: need 1 <= k <= n");
  int m = n - k;
  double kernel_branch =
      (m == 0) ? 1.0 : std::pow(static_cast<double>(m) / n, static_cast<double>(m) / k);
  // the dimensional branch is c1(d,k)^{-2/(dk)}; at d = 1 that constant is
  // Ball's 2^{k/2}, giving 1/2
  double dim_branch = (d == 1) ? 0.5 : epi_constant(d);
  return std::max(kernel_branch, dim_branch);
}

}  // namespace maxdens
