#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxdensity/measures.hpp"

// Finite groups with counting reference measure: convolution of laws, the
// extreme points of P_m = {densities bounded by m}, and the extreme-point
// supremum that dominates M of any convolution (finite Rogozin bound).

namespace maxdens {

struct FiniteGroup {
  int order = 0;
  std::vector<int> cayley;  // row-major order x order
  int identity = 0;
  std::vector<int> inverse;

  int op(int a, int b) const { return cayley[static_cast<std::size_t>(a) * order + b]; }
};

// Checks Latin-square structure, identity, inverses; associativity is checked
// exhaustively for order <= 64.
void validate(const FiniteGroup& g);

FiniteGroup make_cyclic(int n);
FiniteGroup make_product(const FiniteGroup& g, const FiniteGroup& h);
// "cyclic:n" or "product:<spec>,<spec>" (recursively).
FiniteGroup make_group_from_name(const std::string& spec);

// Vertex of {0 <= p <= m, sum p = 1}: density m on full_cells plus an optional
// residual atom of mass c = 1 - m*floor(1/m) at residual_cell.
struct ExtremePointSpec {
  double level = 0.0;
  std::vector<int> full_cells;  // sorted
  int residual_cell = -1;       // -1 means no residual atom
  double residual_mass = 0.0;

  DiscreteDensity to_density(int order) const;
};

DiscreteDensity convolve_on_group(const DiscreteDensity& mu, const DiscreteDensity& nu,
                                  const FiniteGroup& g);

// Levels above 1 collapse to the Dirac regime m = 1; infeasible m (m*|G| < 1)
// throws.
double clamp_level(double m, int order);
// floor(1/m) with protection against 1/m landing just under an integer.
int level_cell_count(double m);

// Number of extreme points of P_m on a group of the given order.
std::uint64_t extreme_point_count(int order, double m);

// Visits every extreme point in lexicographic order of (full_cells, residual).
void enumerate_extreme_points(const FiniteGroup& g, double m,
                              const std::function<void(const ExtremePointSpec&)>& visit);
std::vector<ExtremePointSpec> list_extreme_points(const FiniteGroup& g, double m);

struct SupSearchOptions {
  std::uint64_t budget = 10'000'000;  // max tuples for exhaustive search
  bool randomized = false;            // hill climbing with restarts instead
  int restarts = 100;
  std::uint64_t seed = 0;
};

struct SupResult {
  double sup_value = 0.0;
  std::vector<ExtremePointSpec> argmax;
  bool exact = true;  // false for randomized lower-bound-only search
  std::uint64_t tuples_evaluated = 0;
};

// sup over extreme-point tuples of M(U_1 * ... * U_n). Exhaustive unless
// options.randomized; throws BudgetExceeded when the tuple space is too large
// for the exhaustive mode.
SupResult sup_extreme_convolution(const FiniteGroup& g, const std::vector<double>& m_list,
                                  const SupSearchOptions& options = {});

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupRogozinReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  SupResult sup;
};

// lhs = M(mu_1 * ... * mu_n) vs rhs = sup over extreme points with matched
// levels m_i = M(mu_i); satisfied iff lhs <= rhs + 1e-12.
GroupRogozinReport verify_rogozin_group(const FiniteGroup& g,
                                        const std::vector<DiscreteDensity>& mu_list,
                                        const SupSearchOptions& options = {});

// Random point of {0 <= p <= m, sum p = 1} by iterative proportional clipping.
DiscreteDensity sample_pm(const FiniteGroup& g, double m, std::uint64_t seed);

}  // namespace maxdens
