#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>

#include "maxdensity/finite_group.hpp"
#include "maxdensity/integer_line.hpp"
#include "maxdensity/measures.hpp"

// JSON wire formats:
//   grid density     {"kind":"grid","left":x,"step":h,"values":[...]}
//   discrete density {"kind":"discrete","values":[...]}
//   integer density  {"kind":"integer","offset":k,"masses":[...]} or bare
//                    {"offset":k,"masses":[...]}
//   group            {"order":n,"table":[[...]]} or a name ("cyclic:5",
//                    "product:cyclic:2,cyclic:3")
//   projection       explicit n x n matrix [[...]] or {"span":[[...]]} with
//                    orthonormal rows, giving P = V^T V

namespace maxdens {

nlohmann::json to_json(const GridDensity& f);
nlohmann::json to_json(const DiscreteDensity& mu);
nlohmann::json to_json(const IntegerDensity& mu);

GridDensity grid_from_json(const nlohmann::json& j);
DiscreteDensity discrete_from_json(const nlohmann::json& j);
IntegerDensity integer_from_json(const nlohmann::json& j);

FiniteGroup group_from_json(const nlohmann::json& j);
// Accepts a builtin name or a path to a Cayley-table JSON file.
FiniteGroup load_group(const std::string& name_or_path);

Eigen::MatrixXd projection_from_json(const nlohmann::json& j);

}  // namespace maxdens
