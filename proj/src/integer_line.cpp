#include "maxdensity/integer_line.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxdens {

void validate(const IntegerDensity& mu) {
  if (mu.masses.empty()) throw std::invalid_argument("IntegerDensity: empty support");
  long double s = 0.0L;
  for (double x : mu.masses) {
    if (!(x >= 0.0)) throw std::invalid_argument("IntegerDensity: negative mass");
    s += x;
  }
  if (std::abs(static_cast<double>(s) - 1.0) > 1e-12)
    throw std::invalid_argument("IntegerDensity: total mass != 1");
  if (mu.masses.front() == 0.0 || mu.masses.back() == 0.0)
    throw std::invalid_argument("IntegerDensity: not trimmed");
}

IntegerDensity make_integer_density(long long offset, std::vector<double> masses) {
  std::size_t lo = 0, hi = masses.size();
  while (lo < hi && masses[lo] == 0.0) ++lo;
  while (hi > lo && masses[hi - 1] == 0.0) --hi;
  if (lo == hi) throw std::invalid_argument("IntegerDensity: zero mass");
  IntegerDensity mu{offset + static_cast<long long>(lo),
                    std::vector<double>(masses.begin() + lo, masses.begin() + hi)};
  validate(mu);
  return mu;
}

IntegerDensity uniform_on(const std::vector<long long>& points) {
  if (points.empty()) throw std::invalid_argument("uniform_on: empty point set");
  if (!std::is_sorted(points.begin() , points.end()))
    throw std::invalid_argument("uniform_on: points must be sorted");
  long long lo = points.front(), hi = points.back();
  std::vector<double> masses(static_cast<std::size_t>(hi - lo + 1), 0.0);
  double w = 1.0 / static_cast<double>(points.size());
  for (long long p : points) {
    double& slot = masses[static_cast<std::size_t>(p - lo)];
    if (slot != 0.0) throw std::invalid_argument("uniform_on: duplicate point");
    slot = w;
  }
  return IntegerDensity{lo, std::move(masses)};
}

IntegerDensity uniform_range(int l) {
  if (l < 1) throw std::invalid_argument("uniform_range: l >= 1 required");
  return IntegerDensity{0, std::vector<double>(static_cast<std::size_t>(l), 1.0 / l)};
}

IntegerDensity convolve_int(const IntegerDensity& mu, const IntegerDensity& nu) {
  std::size_t m = mu.masses.size(), n = nu.masses.size();
  std::vector<long double> acc(m + n - 1, 0.0L);
  for (std::size_t i = 0; i < m; ++i) {
    double a = mu.masses[i];
    if (a == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) acc[i + j] += static_cast<long double>(a) * nu.masses[j];
  }
  std::vector<double> out(acc.begin(), acc.end());
  return make_integer_density(mu.offset + nu.offset, std::move(out));
}

IntegerDensity convolve_all(const std::vector<IntegerDensity>& list) {
  if (list.empty()) throw std::invalid_argument("convolve_all: empty list");
  IntegerDensity acc = list[0];
  for (std::size_t i = 1; i < list.size(); ++i) acc = convolve_int(acc, list[i]);
  return acc;
}

MaxFunctional m_int(const IntegerDensity& mu) {
  return MaxFunctional{*std::max_element(mu.masses.begin(), mu.masses.end())};
}

double mattner_roos_bound(int l, int n) {
  if (l < 2 || n < 3)
    throw std::invalid_argument("mattner_roos_bound: requires l >= 2 and n >= 3");
  double l2 = static_cast<double>(l) * l;
  return std::sqrt(6.0 / (std::numbers::pi * (l2 - 1.0) * n));
}

namespace {

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace

DiscreteRearrangementReport verify_discrete_rearrangement(const std::vector<int>& sizes,
                                                          int range_bound,
                                                          std::uint64_t budget) {
  if (sizes.empty()) throw std::invalid_argument("verify_discrete_rearrangement: empty sizes");
  int domain = range_bound + 1;
  std::uint64_t total = 1;
  for (int s : sizes) {
    if (s < 1 || s > domain) throw std::invalid_argument("size out of range");
    std::uint64_t c = binom(domain, s);
    if (total > budget / c) throw std::runtime_error("verify_discrete_rearrangement: budget exceeded");
    total *= c;
  }

  DiscreteRearrangementReport rep;
  std::vector<IntegerDensity> ref;
  ref.reserve(sizes.size());
  for (int s : sizes) ref.push_back(uniform_range(s));
  rep.rhs = m_int(convolve_all(ref)).value;

  // materialize all subsets of each size once
  std::vector<std::vector<std::vector<long long>>> subsets(sizes.size());
  for (std::size_t f = 0; f < sizes.size(); ++f) {
    int q = sizes[f];
    std::vector<int> comb(q);
    for (int i = 0; i < q; ++i) comb[i] = i;
    for (;;) {
      subsets[f].emplace_back(comb.begin(), comb.end());
      int i = q - 1;
      while (i >= 0 && comb[i] == domain - q + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < q; ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  rep.worst_slack = rep.rhs;
  std::vector<std::size_t> idx(sizes.size(), 0);
  for (;;) {
    std::vector<IntegerDensity> tuple;
    tuple.reserve(sizes.size());
    for (std::size_t f = 0; f < sizes.size(); ++f) tuple.push_back(uniform_on(subsets[f][idx[f]]));
    double lhs = m_int(convolve_all(tuple)).value;
    double slack = rep.rhs - lhs;
    rep.worst_slack = std::min(rep.worst_slack, slack);
    if (lhs > rep.rhs + 1e-12) ++rep.violations;
    ++rep.tuples;
    std::size_t i = sizes.size();
    bool advanced = false;
    while (i > 0) {
      --i;
      if (++idx[i] < subsets[i].size()) {
        advanced = true;
        break;
      }
      idx[i] = 0;
    }
    if (!advanced) break;
  }
  return rep;
}

DiscreteRearrangementReport verify_discrete_rearrangement(const std::vector<int>& sizes) {
  int max_size = *std::max_element(sizes.begin(), sizes.end());
  return verify_discrete_rearrangement(sizes, 2 * max_size);
}

IntegerEpiReport epi_discrete(const std::vector<IntegerDensity>& mu_list) {
  if (mu_list.empty()) throw std::invalid_argument("epi_discrete: empty input");
  IntegerEpiReport rep;
  rep.lhs = m_int(convolve_all(mu_list)).value;
  std::vector<IntegerDensity> ref;
  ref.reserve(mu_list.size());
  for (const auto& mu : mu_list) {
    int l = static_cast<int>(std::floor(1.0 / m_int(mu).value + 1e-9));
    l = std::max(l, 1);
    rep.l_values.push_back(l);
    ref.push_back(uniform_range(l));
  }
  rep.rhs1 = m_int(convolve_all(ref)).value;
  bool all_equal = std::adjacent_find(rep.l_values.begin(), rep.l_values.end(),
                                      std::not_equal_to<>()) == rep.l_values.end();
  int n = static_cast<int>(mu_list.size());
  rep.satisfied = rep.lhs <= rep.rhs1 + 1e-12;
  if (all_equal && rep.l_values[0] >= 2 && n >= 3) {
    rep.rhs2 = mattner_roos_bound(rep.l_values[0], n);
    rep.satisfied = rep.satisfied && rep.rhs1 < *rep.rhs2;
  }
  return rep;
}

}  // namespace maxdens
