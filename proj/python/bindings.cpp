#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maxdensity/ball_fourier.hpp"
#include "maxdensity/finite_group.hpp"
#include "maxdensity/integer_line.hpp"
#include "maxdensity/measures.hpp"
#include "maxdensity/projections.hpp"
#include "maxdensity/rearrangement.hpp"

namespace py = pybind11;
using namespace maxdens;

PYBIND11_MODULE(_maxdensity, m) {
  m.doc() = "Maximum-of-density functionals and convolution inequality checks";

  py::class_<MaxFunctional>(m, "MaxFunctional")
      .def_readonly("value", &MaxFunctional::value)
      .def("finite", &MaxFunctional::finite)
      .def("__float__", [](const MaxFunctional& f) { return f.value; })
      .def("__repr__",
           [](const MaxFunctional& f) { return "MaxFunctional(" + std::to_string(f.value) + ")"; });

  py::class_<DiscreteDensity>(m, "DiscreteDensity")
      .def(py::init([](std::vector<double> masses) { return make_discrete(std::move(masses)); }),
           py::arg("masses"))
      .def_readonly("masses", &DiscreteDensity::masses)
      .def_property_readonly("carrier_size", &DiscreteDensity::carrier_size);

  py::class_<GridDensity>(m, "GridDensity")
      .def(py::init([](double left, double cell_width, std::vector<double> values) {
             return make_grid(left, cell_width, std::move(values));
           }),
           py::arg("left"), py::arg("cell_width"), py::arg("values"))
      .def_readonly("left", &GridDensity::left)
      .def_readonly("cell_width", &GridDensity::cell_width)
      .def_readonly("values", &GridDensity::values)
      .def("right", &GridDensity::right)
      .def("at", &GridDensity::at);

  py::class_<IntegerDensity>(m, "IntegerDensity")
      .def(py::init([](long long offset, std::vector<double> masses) {
             return make_integer_density(offset, std::move(masses));
           }),
           py::arg("offset"), py::arg("masses"))
      .def_readonly("offset", &IntegerDensity::offset)
      .def_readonly("masses", &IntegerDensity::masses);

  m.def("indicator_density", &indicator_density, py::arg("a"), py::arg("b"), py::arg("cell_width"));
  m.def("m_discrete", &m_discrete);
  m.def("m_grid", &m_grid);
  m.def("renyi_infinity_power",
        py::overload_cast<double, int>(&renyi_infinity_power), py::arg("m"), py::arg("d"));
  m.def("convolve_grids", &convolve_grids);
  m.def("scale_density", &scale_density);

  py::class_<FiniteGroup>(m, "FiniteGroup")
      .def_readonly("order", &FiniteGroup::order)
      .def_readonly("identity", &FiniteGroup::identity)
      .def_readonly("inverse", &FiniteGroup::inverse)
      .def("op", &FiniteGroup::op);
  m.def("make_cyclic", &make_cyclic);
  m.def("make_product", &make_product);
  m.def("make_group_from_name", &make_group_from_name);
  m.def("convolve_on_group", &convolve_on_group);

  py::class_<ExtremePointSpec>(m, "ExtremePointSpec")
      .def_readonly("level", &ExtremePointSpec::level)
      .def_readonly("full_cells", &ExtremePointSpec::full_cells)
      .def_readonly("residual_cell", &ExtremePointSpec::residual_cell)
      .def_readonly("residual_mass", &ExtremePointSpec::residual_mass)
      .def("to_density", &ExtremePointSpec::to_density);
  m.def("list_extreme_points", &list_extreme_points);

  py::class_<SupSearchOptions>(m, "SupSearchOptions")
      .def(py::init<>())
      .def_readwrite("budget", &SupSearchOptions::budget)
      .def_readwrite("randomized", &SupSearchOptions::randomized)
      .def_readwrite("restarts", &SupSearchOptions::restarts)
      .def_readwrite("seed", &SupSearchOptions::seed);
  py::class_<SupResult>(m, "SupResult")
      .def_readonly("sup_value", &SupResult::sup_value)
      .def_readonly("argmax", &SupResult::argmax)
      .def_readonly("exact", &SupResult::exact)
      .def_readonly("tuples_evaluated", &SupResult::tuples_evaluated);
  m.def("sup_extreme_convolution", &sup_extreme_convolution, py::arg("group"), py::arg("m_list"),
        py::arg("options") = SupSearchOptions{});
  py::class_<GroupRogozinReport>(m, "GroupRogozinReport")
      .def_readonly("lhs", &GroupRogozinReport::lhs)
      .def_readonly("rhs", &GroupRogozinReport::rhs)
      .def_readonly("satisfied", &GroupRogozinReport::satisfied);
  m.def("verify_rogozin_group", &verify_rogozin_group, py::arg("group"), py::arg("densities"),
        py::arg("options") = SupSearchOptions{});
  m.def("sample_pm", &sample_pm, py::arg("group"), py::arg("m"), py::arg("seed"));

  m.def("uniform_on", &uniform_on);
  m.def("uniform_range", &uniform_range);
  m.def("convolve_int", &convolve_int);
  m.def("m_int", &m_int);
  m.def("mattner_roos_bound", &mattner_roos_bound, py::arg("l"), py::arg("n"));
  py::class_<IntegerEpiReport>(m, "IntegerEpiReport")
      .def_readonly("lhs", &IntegerEpiReport::lhs)
      .def_readonly("rhs1", &IntegerEpiReport::rhs1)
      .def_readonly("rhs2", &IntegerEpiReport::rhs2)
      .def_readonly("l_values", &IntegerEpiReport::l_values)
      .def_readonly("satisfied", &IntegerEpiReport::satisfied);
  m.def("epi_discrete", &epi_discrete);

  py::class_<SymmetricGrid>(m, "SymmetricGrid")
      .def_readonly("cell_width", &SymmetricGrid::cell_width)
      .def_readonly("values", &SymmetricGrid::values)
      .def("half_width", &SymmetricGrid::half_width)
      .def("to_grid", &SymmetricGrid::to_grid);
  m.def("decreasing_rearrangement_grid", &decreasing_rearrangement_grid);
  py::class_<RadialShell>(m, "RadialShell")
      .def_readonly("radius", &RadialShell::radius)
      .def_readonly("height", &RadialShell::height);
  m.def("radial_rearrangement", &radial_rearrangement, py::arg("level_sets"), py::arg("d"));
  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readonly("lhs", &ComparisonReport::lhs)
      .def_readonly("rhs", &ComparisonReport::rhs)
      .def_readonly("satisfied", &ComparisonReport::satisfied);
  m.def("rearranged_max_bound", &rearranged_max_bound);
  m.def("bll_check_1d", &bll_check_1d, py::arg("densities"), py::arg("a_matrix"),
        py::arg("quad_cells") = 512);

  py::class_<BallLaw>(m, "BallLaw")
      .def(py::init<int, double>(), py::arg("dimension"), py::arg("radius"))
      .def_readonly("dimension", &BallLaw::dimension)
      .def_readonly("radius", &BallLaw::radius)
      .def("is_dirac", &BallLaw::is_dirac)
      .def("m_value", &BallLaw::m_value);
  m.def("ball_with_m", &ball_with_m, py::arg("d"), py::arg("m"));
  m.def("unit_ball_volume", &unit_ball_volume);
  m.def("unit_volume_radius", &unit_volume_radius);
  m.def("ball_charfun", &ball_charfun, py::arg("d"), py::arg("r"), py::arg("s"));

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("truncation_radius", &QuadratureSpec::truncation_radius)
      .def_readwrite("nodes", &QuadratureSpec::nodes);
  py::class_<IntegralResult>(m, "IntegralResult")
      .def_readonly("value", &IntegralResult::value)
      .def_readonly("error_estimate", &IntegralResult::error_estimate);
  m.def("charfun_pnorm_integral", &charfun_pnorm_integral, py::arg("d"), py::arg("r"),
        py::arg("p"), py::arg("spec") = QuadratureSpec{});
  m.def("density_at_zero_sum_balls", &density_at_zero_sum_balls, py::arg("d"), py::arg("theta"),
        py::arg("radii"), py::arg("spec") = QuadratureSpec{});

  m.def("c_d", &c_d);
  py::class_<SlicingConstants>(m, "SlicingConstants")
      .def_readonly("c1", &SlicingConstants::c1)
      .def_readonly("c2", &SlicingConstants::c2)
      .def_readonly("c", &SlicingConstants::c);
  m.def("c_constants", &c_constants, py::arg("d"), py::arg("k"), py::arg("n"));
  m.def("epi_constant", &epi_constant);
  m.def("epi_power_bound", &epi_power_bound, py::arg("d"), py::arg("k"), py::arg("n"));

  m.def("kronecker_lift", &kronecker_lift, py::arg("t"), py::arg("d"));
  py::class_<ProjectionDecomposition>(m, "ProjectionDecomposition")
      .def_readonly("n", &ProjectionDecomposition::n)
      .def_readonly("k", &ProjectionDecomposition::k)
      .def_readonly("a", &ProjectionDecomposition::a)
      .def_readonly("u", &ProjectionDecomposition::u)
      .def_readonly("c", &ProjectionDecomposition::c)
      .def_readonly("gamma_c1", &ProjectionDecomposition::gamma_c1)
      .def_readonly("gamma_c2", &ProjectionDecomposition::gamma_c2);
  m.def("decompose_projection", &decompose_projection);
  py::class_<KernelBasis>(m, "KernelBasis").def_readonly("columns", &KernelBasis::columns);
  m.def("make_kernel_basis", &make_kernel_basis);
  m.def("pushforward_constant", &pushforward_constant, py::arg("t"), py::arg("a"), py::arg("d"));
  m.def("density_at_zero_kernel_integral", &density_at_zero_kernel_integral, py::arg("densities"),
        py::arg("t"), py::arg("points_per_axis") = 2048);

  py::class_<NormalizedSummands>(m, "NormalizedSummands")
      .def_readonly("theta", &NormalizedSummands::theta)
      .def_readonly("kappa", &NormalizedSummands::kappa);
  m.def("normalize_summands", &normalize_summands, py::arg("m_list"), py::arg("d"));
  m.def("rogozin_reduce", &rogozin_reduce, py::arg("m_list"), py::arg("d"));

  py::class_<EpiOptions>(m, "EpiOptions")
      .def(py::init<>())
      .def_readwrite("mc_samples", &EpiOptions::mc_samples)
      .def_readwrite("seed", &EpiOptions::seed)
      .def_readwrite("cell_width", &EpiOptions::cell_width)
      .def_readwrite("mode_target", &EpiOptions::mode_target);
  py::class_<EpiReport>(m, "EpiReport")
      .def_readonly("lhs", &EpiReport::lhs)
      .def_readonly("lhs_upper", &EpiReport::lhs_upper)
      .def_readonly("rhs", &EpiReport::rhs)
      .def_readonly("slack", &EpiReport::slack)
      .def_readonly("satisfied", &EpiReport::satisfied)
      .def_readonly("monte_carlo", &EpiReport::monte_carlo)
      .def_readonly("k", &EpiReport::k)
      .def_readonly("branch", &EpiReport::branch);
  m.def(
      "verify_epi",
      [](const std::vector<std::variant<BallLaw, GridDensity>>& inputs, const Eigen::MatrixXd& p,
         int d, const EpiOptions& options) { return verify_epi(inputs, p, d, options); },
      py::arg("inputs"), py::arg("projection"), py::arg("d"), py::arg("options") = EpiOptions{});
}
