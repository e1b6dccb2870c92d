#include "maxdensity/finite_group.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace maxdens {

void validate(const FiniteGroup& g) {
  int n = g.order;
  if (n <= 0) throw std::invalid_argument("FiniteGroup: order must be positive");
  if (g.cayley.size() != static_cast<std::size_t>(n) * n || g.inverse.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("FiniteGroup: table size mismatch");
  std::vector<char> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      int v = g.op(r, c);
      if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("FiniteGroup: row is not a permutation");
      seen[v] = 1;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      int v = g.op(r, c);
      if (seen[v]) throw std::invalid_argument("FiniteGroup: column is not a permutation");
      seen[v] = 1;
    }
  }
  for (int x = 0; x < n; ++x) {
    if (g.op(g.identity, x) != x || g.op(x, g.identity) != x)
      throw std::invalid_argument("FiniteGroup: identity axiom fails");
    if (g.op(x, g.inverse[x]) != g.identity)
      throw std::invalid_argument("FiniteGroup: inverse axiom fails");
  }
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
            throw std::invalid_argument("FiniteGroup: associativity fails");
  }
}

FiniteGroup make_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("make_cyclic: n >= 1 required");
  FiniteGroup g;
  g.order = n;
  g.cayley.resize(static_cast<std::size_t>(n) * n);
  g.inverse.resize(n);
  for (int a = 0; a < n; ++a) {
    g.inverse[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) g.cayley[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  g.identity = 0;
  return g;
}

FiniteGroup make_product(const FiniteGroup& g, const FiniteGroup& h) {
  int n = g.order * h.order;
  FiniteGroup p;
  p.order = n;
  p.cayley.resize(static_cast<std::size_t>(n) * n);
  p.inverse.resize(n);
  auto idx = [&](int a, int b) { return a * h.order + b; };
  for (int a1 = 0; a1 < g.order; ++a1)
    for (int a2 = 0; a2 < h.order; ++a2) {
      int a = idx(a1, a2);
      p.inverse[a] = idx(g.inverse[a1], h.inverse[a2]);
      for (int b1 = 0; b1 < g.order; ++b1)
        for (int b2 = 0; b2 < h.order; ++b2)
          p.cayley[static_cast<std::size_t>(a) * n + idx(b1, b2)] = idx(g.op(a1, b1), h.op(a2, b2));
    }
  p.identity = idx(g.identity, h.identity);
  return p;
}

namespace {

FiniteGroup parse_group(const std::string& s, std::size_t& pos) {
  auto starts = [&](const char* p) { return s.compare(pos, std::string::traits_type::length(p), p) == 0; };
  if (starts("cyclic:")) {
    pos += 7;
    std::size_t used = 0;
    int n = std::stoi(s.substr(pos), &used);
    pos += used;
    return make_cyclic(n);
  }
  if (starts("product:")) {
    pos += 8;
    FiniteGroup a = parse_group(s, pos);
    if (pos >= s.size() || s[pos] != ',') throw std::invalid_argument("group spec: expected ',' in product");
    ++pos;
    FiniteGroup b = parse_group(s, pos);
    return make_product(a, b);
  }
  throw std::invalid_argument("group spec: unknown prefix in '" + s + "'");
}

}  // namespace

FiniteGroup make_group_from_name(const std::string& spec) {
  std::size_t pos = 0;
  FiniteGroup g = parse_group(spec, pos);
  if (pos != spec.size()) throw std::invalid_argument("group spec: trailing characters in '" + spec + "'");
  return g;
}

DiscreteDensity ExtremePointSpec::to_density(int order) const {
  std::vector<double> p(order, 0.0);
  for (int i : full_cells) p[i] = level;
  if (residual_cell >= 0) p[residual_cell] = residual_mass;
  return DiscreteDensity{std::move(p)};
}

DiscreteDensity convolve_on_group(const DiscreteDensity& mu, const DiscreteDensity& nu,
                                  const FiniteGroup& g) {
  int n = g.order;
  if (mu.masses.size() != static_cast<std::size_t>(n) || nu.masses.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("convolve_on_group: carrier size mismatch");
  std::vector<double> out(n, 0.0);
  for (int a = 0; a < n; ++a) {
    double w = mu.masses[a];
    if (w == 0.0) continue;
    const int* row = g.cayley.data() + static_cast<std::size_t>(a) * n;
    for (int b = 0; b < n; ++b) out[row[b]] += w * nu.masses[b];
  }
  return DiscreteDensity{std::move(out)};
}

double clamp_level(double m, int order) {
  if (!(m > 0.0)) throw std::invalid_argument("level m must be positive");
  if (m > 1.0) m = 1.0;
  if (m * order < 1.0 - 1e-12)
    throw std::invalid_argument("P_m is empty: m*|G| < 1");
  return m;
}

int level_cell_count(double m) {
  return static_cast<int>(std::floor(1.0 / m + 1e-9));
}

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

struct LevelInfo {
  double m = 0.0;
  int q = 0;          // cells at level m
  double c = 0.0;     // residual mass
};

LevelInfo level_info(double m, int order) {
  LevelInfo info;
  info.m = clamp_level(m, order);
  info.q = std::min(level_cell_count(info.m), order);
  info.c = 1.0 - info.m * info.q;
  if (info.c < 1e-12) info.c = 0.0;
  return info;
}

}  // namespace

std::uint64_t extreme_point_count(int order, double m) {
  LevelInfo info = level_info(m, order);
  std::uint64_t base = binomial(order, info.q);
  return info.c > 0.0 ? base * static_cast<std::uint64_t>(order - info.q) : base;
}

void enumerate_extreme_points(const FiniteGroup& g, double m,
                              const std::function<void(const ExtremePointSpec&)>& visit) {
  LevelInfo info = level_info(m, g.order);
  int n = g.order, q = info.q;
  std::vector<int> comb(q);
  for (int i = 0; i < q; ++i) comb[i] = i;
  ExtremePointSpec spec;
  spec.level = info.m;
  for (;;) {
    spec.full_cells = comb;
    if (info.c > 0.0) {
      spec.residual_mass = info.c;
      for (int x = 0; x < n; ++x) {
        if (std::binary_search(comb.begin(), comb.end(), x)) continue;
        spec.residual_cell = x;
        visit(spec);
      }
    } else {
      spec.residual_cell = -1;
      spec.residual_mass = 0.0;
      visit(spec);
    }
    // next combination in lexicographic order
    int i = q - 1;
    while (i >= 0 && comb[i] == n - q + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < q; ++j) comb[j] = comb[j - 1] + 1;
  }
}

std::vector<ExtremePointSpec> list_extreme_points(const FiniteGroup& g, double m) {
  std::vector<ExtremePointSpec> out;
  out.reserve(extreme_point_count(g.order, m));
  enumerate_extreme_points(g, m, [&](const ExtremePointSpec& e) { out.push_back(e); });
  return out;
}

namespace {

double tuple_conv_max(const FiniteGroup& g, const std::vector<DiscreteDensity>& ds) {
  DiscreteDensity acc = ds[0];
  for (std::size_t i = 1; i < ds.size(); ++i) acc = convolve_on_group(acc, ds[i], g);
  return m_discrete(acc).value;
}

SupResult randomized_sup(const FiniteGroup& g, const std::vector<double>& m_list,
                         const SupSearchOptions& options) {
  int n = g.order;
  std::mt19937_64 rng(options.seed);
  SupResult best;
  best.exact = false;
  std::size_t nf = m_list.size();
  std::vector<LevelInfo> infos(nf);
  for (std::size_t i = 0; i < nf; ++i) infos[i] = level_info(m_list[i], n);

  auto spec_of = [&](std::size_t i, const std::vector<int>& cells, int residual) {
    ExtremePointSpec e;
    e.level = infos[i].m;
    e.full_cells = cells;
    std::sort(e.full_cells.begin(), e.full_cells.end());
    e.residual_cell = infos[i].c > 0.0 ? residual : -1;
    e.residual_mass = infos[i].c;
    return e;
  };

  for (int restart = 0; restart < options.restarts; ++restart) {
    // random initial tuple
    std::vector<std::vector<int>> cells(nf);
    std::vector<int> residual(nf, -1);
    for (std::size_t i = 0; i < nf; ++i) {
      std::vector<int> perm(n);
      for (int j = 0; j < n; ++j) perm[j] = j;
      std::shuffle(perm.begin(), perm.end(), rng);
      cells[i].assign(perm.begin(), perm.begin() + infos[i].q);
      if (infos[i].c > 0.0) residual[i] = perm[infos[i].q];
    }
    auto value_of = [&]() {
      std::vector<DiscreteDensity> ds;
      ds.reserve(nf);
      for (std::size_t i = 0; i < nf; ++i) ds.push_back(spec_of(i, cells[i], residual[i]).to_density(n));
      return tuple_conv_max(g, ds);
    };
    double cur = value_of();
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < nf; ++i) {
        // single-element swaps in U_i and residual moves, steepest ascent
        double best_delta_val = cur;
        std::vector<int> best_cells = cells[i];
        int best_res = residual[i];
        for (std::size_t slot = 0; slot < cells[i].size(); ++slot) {
          for (int cand = 0; cand < n; ++cand) {
            if (cand == residual[i]) continue;
            if (std::find(cells[i].begin(), cells[i].end(), cand) != cells[i].end()) continue;
            std::vector<int> trial = cells[i];
            trial[slot] = cand;
            auto saved = cells[i];
            cells[i] = trial;
            double v = value_of();
            cells[i] = saved;
            ++best.tuples_evaluated;
            if (v > best_delta_val) {
              best_delta_val = v;
              best_cells = trial;
              best_res = residual[i];
            }
          }
        }
        if (infos[i].c > 0.0) {
          for (int cand = 0; cand < n; ++cand) {
            if (std::find(cells[i].begin(), cells[i].end(), cand) != cells[i].end()) continue;
            if (cand == residual[i]) continue;
            int saved = residual[i];
            residual[i] = cand;
            double v = value_of();
            residual[i] = saved;
            ++best.tuples_evaluated;
            if (v > best_delta_val) {
              best_delta_val = v;
              best_cells = cells[i];
              best_res = cand;
            }
          }
        }
        if (best_delta_val > cur) {
          cur = best_delta_val;
          cells[i] = best_cells;
          residual[i] = best_res;
          improved = true;
        }
      }
    }
    if (cur > best.sup_value) {
      best.sup_value = cur;
      best.argmax.clear();
      for (std::size_t i = 0; i < nf; ++i) best.argmax.push_back(spec_of(i, cells[i], residual[i]));
    }
  }
  return best;
}

}  // namespace

SupResult sup_extreme_convolution(const FiniteGroup& g, const std::vector<double>& m_list,
                                  const SupSearchOptions& options) {
  if (m_list.empty()) throw std::invalid_argument("sup_extreme_convolution: empty m_list");
  if (options.randomized) return randomized_sup(g, m_list, options);

  std::uint64_t total = 1;
  for (double m : m_list) {
    std::uint64_t c = extreme_point_count(g.order, m);
    if (c == 0 || total > options.budget / c)
      throw BudgetExceeded(
          "sup_extreme_convolution: tuple space exceeds budget; rerun with the randomized "
          "search mode for a lower-bound certificate");
    total *= c;
  }

  std::size_t nf = m_list.size();
  std::vector<std::vector<ExtremePointSpec>> points(nf);
  std::vector<std::vector<DiscreteDensity>> dens(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    points[i] = list_extreme_points(g, m_list[i]);
    dens[i].reserve(points[i].size());
    for (const auto& e : points[i]) dens[i].push_back(e.to_density(g.order));
  }

  SupResult result;
  result.sup_value = -1.0;
  std::vector<std::size_t> idx(nf, 0);
  // prefix[i] = dens[0][idx0] * ... * dens[i][idxi]
  std::vector<DiscreteDensity> prefix(nf);
  auto rebuild_from = [&](std::size_t from) {
    for (std::size_t i = from; i < nf; ++i)
      prefix[i] = (i == 0) ? dens[0][idx[0]] : convolve_on_group(prefix[i - 1], dens[i][idx[i]], g);
  };
  rebuild_from(0);
  for (;;) {
    ++result.tuples_evaluated;
    double v = m_discrete(prefix[nf - 1]).value;
    if (v > result.sup_value) {
      result.sup_value = v;
      result.argmax.clear();
      for (std::size_t i = 0; i < nf; ++i) result.argmax.push_back(points[i][idx[i]]);
    }
    // odometer increment, least-significant digit last so enumeration is
    // lexicographic in tuple order
    std::size_t i = nf;
    while (i > 0) {
      --i;
      if (++idx[i] < points[i].size()) {
        rebuild_from(i);
        break;
      }
      idx[i] = 0;
      if (i == 0) return result;
    }
    if (i == 0 && idx[0] == 0) break;  // unreachable guard
  }
  return result;
}

GroupRogozinReport verify_rogozin_group(const FiniteGroup& g,
                                        const std::vector<DiscreteDensity>& mu_list,
                                        const SupSearchOptions& options) {
  if (mu_list.empty()) throw std::invalid_argument("verify_rogozin_group: empty input");
  GroupRogozinReport rep;
  rep.lhs = tuple_conv_max(g, mu_list);
  std::vector<double> m_list;
  m_list.reserve(mu_list.size());
  for (const auto& mu : mu_list) m_list.push_back(m_discrete(mu).value);
  rep.sup = sup_extreme_convolution(g, m_list, options);
  rep.rhs = rep.sup.sup_value;
  rep.satisfied = rep.lhs <= rep.rhs + 1e-12;
  return rep;
}

DiscreteDensity sample_pm(const FiniteGroup& g, double m, std::uint64_t seed) {
  int n = g.order;
  m = clamp_level(m, n);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) {
    x = expo(rng);
    s += x;
  }
  for (double& x : p) x /= s;
  // clip at m and push the excess onto unclipped cells until feasible
  for (int iter = 0; iter < 1000; ++iter) {
    double excess = 0.0;
    int free_cells = 0;
    for (double& x : p) {
      if (x > m) {
        excess += x - m;
        x = m;
      } else if (x < m) {
        ++free_cells;
      }
    }
    if (excess <= 1e-15) break;
    if (free_cells == 0) break;  // m*n == 1, everything pinned at m
    double add = excess / free_cells;
    for (double& x : p) {
      if (x < m) x += add;
    }
  }
  return DiscreteDensity{std::move(p)};
}

}  // namespace maxdens
