#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxdensity/measures.hpp"

// Integer-valued laws under counting measure: exact convolution, the discrete
// rearrangement comparison against uniforms on {0..l-1}, and the Mattner-Roos
// quantitative bound sqrt(6/(pi (l^2-1) n)).

namespace maxdens {

struct IntegerDensity {
  long long offset = 0;  // value carried by masses[0]
  std::vector<double> masses;
};

// Validates mass 1 (1e-12) and canonical trimming (nonzero end masses).
void validate(const IntegerDensity& mu);
IntegerDensity make_integer_density(long long offset, std::vector<double> masses);

IntegerDensity uniform_on(const std::vector<long long>& points);
// Uniform on {0, 1, ..., l-1}.
IntegerDensity uniform_range(int l);

IntegerDensity convolve_int(const IntegerDensity& mu, const IntegerDensity& nu);
IntegerDensity convolve_all(const std::vector<IntegerDensity>& list);

MaxFunctional m_int(const IntegerDensity& mu);

// sqrt(6 / (pi (l^2 - 1) n)); requires l >= 2 and n >= 3.
double mattner_roos_bound(int l, int n);

struct DiscreteRearrangementReport {
  double rhs = 0.0;          // M of the sum of uniforms on {0..l_i-1}
  double worst_slack = 0.0;  // min over tuples of rhs - lhs
  std::uint64_t tuples = 0;
  std::uint64_t violations = 0;
};

// Exhaustive check of M(sum of uniforms on subsets S_i of {0..range_bound})
// <= M(sum of uniforms on {0..|S_i|-1}) over all subset tuples.
DiscreteRearrangementReport verify_discrete_rearrangement(const std::vector<int>& sizes,
                                                          int range_bound,
                                                          std::uint64_t budget = 10'000'000);
// range_bound defaults to twice the largest size, leaving room for gaps.
DiscreteRearrangementReport verify_discrete_rearrangement(const std::vector<int>& sizes);

struct IntegerEpiReport {
  double lhs = 0.0;                 // M of the exact convolution
  double rhs1 = 0.0;                // M of the comparison sum of uniforms
  std::optional<double> rhs2;       // Mattner-Roos bound when l_i all equal, l >= 2, n >= 3
  std::vector<int> l_values;        // l_i = floor(1 / M(mu_i))
  bool satisfied = false;           // lhs <= rhs1 (and rhs1 < rhs2 when applicable)
};

IntegerEpiReport epi_discrete(const std::vector<IntegerDensity>& mu_list);

}  // namespace maxdens
