#include "maxdensity/io.hpp"

#include <fstream>

namespace maxdens {

using nlohmann::json;

json to_json(const GridDensity& f) {
  return json{{"kind", "grid"}, {"left", f.left}, {"step", f.cell_width}, {"values", f.values}};
}

json to_json(const DiscreteDensity& mu) {
  return json{{"kind", "discrete"}, {"values", mu.masses}};
}

json to_json(const IntegerDensity& mu) {
  return json{{"kind", "integer"}, {"offset", mu.offset}, {"masses", mu.masses}};
}

GridDensity grid_from_json(const json& j) {
  if (j.value("kind", "grid") != "grid") throw std::invalid_argument("expected a grid density");
  return make_grid(j.at("left").get<double>(), j.at("step").get<double>(),
                   j.at("values").get<std::vector<double>>());
}

DiscreteDensity discrete_from_json(const json& j) {
  if (j.value("kind", "discrete") != "discrete")
    throw std::invalid_argument("expected a discrete density");
  return make_discrete(j.at("values").get<std::vector<double>>());
}

IntegerDensity integer_from_json(const json& j) {
  return make_integer_density(j.value("offset", 0LL), j.at("masses").get<std::vector<double>>());
}

FiniteGroup group_from_json(const json& j) {
  int n = j.at("order").get<int>();
  auto table = j.at("table").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(table.size()) != n) throw std::invalid_argument("group: table size != order");
  FiniteGroup g;
  g.order = n;
  g.cayley.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group: ragged table");
    g.cayley.insert(g.cayley.end(), row.begin(), row.end());
  }
  // locate the identity, then the inverses
  g.identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g.op(e, x) == x && g.op(x, e) == x;
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) throw std::invalid_argument("group: no identity element");
  g.inverse.assign(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g.op(x, y) == g.identity) g.inverse[x] = y;
  validate(g);
  return g;
}

FiniteGroup load_group(const std::string& name_or_path) {
  if (name_or_path.rfind("cyclic:", 0) == 0 || name_or_path.rfind("product:", 0) == 0)
    return make_group_from_name(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw std::invalid_argument("cannot open group file: " + name_or_path);
  json j;
  in >> j;
  return group_from_json(j);
}

Eigen::MatrixXd projection_from_json(const json& j) {
  if (j.is_array()) {
    auto rows = j.get<std::vector<std::vector<double>>>();
    auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd p(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != n)
        throw std::invalid_argument("projection: matrix must be square");
      for (Eigen::Index c = 0; c < n; ++c) p(i, c) = rows[i][c];
    }
    return p;
  }
  auto span = j.at("span").get<std::vector<std::vector<double>>>();
  auto k = static_cast<Eigen::Index>(span.size());
  auto n = static_cast<Eigen::Index>(span.at(0).size());
  Eigen::MatrixXd v(k, n);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index c = 0; c < n; ++c) v(i, c) = span[i].at(c);
  if ((v * v.transpose() - Eigen::MatrixXd::Identity(k, k)).lpNorm<Eigen::Infinity>() > 1e-10)
    throw std::invalid_argument("projection: span rows must be orthonormal");
  return v.transpose() * v;
}

}  // namespace maxdens
