#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pnls/groundstate.hpp"
#include "pnls/io.hpp"
#include "pnls/pointop.hpp"
#include "pnls/radial.hpp"
#include "pnls/selfcheck.hpp"
#include "pnls/specfun.hpp"
#include "pnls/stability.hpp"

namespace py = pybind11;
using namespace pnls;

PYBIND11_MODULE(_pnls, m) {
  m.doc() = "Ground states of the 2D NLS with a point interaction";

  m.def("bessel_k0", &bessel_k0);
  m.def("bessel_k1", &bessel_k1);

  py::class_<RadialGrid, std::shared_ptr<RadialGrid>>(m, "RadialGrid")
      .def_property_readonly("n", &RadialGrid::n)
      .def_property_readonly("r_max", &RadialGrid::r_max)
      .def_property_readonly("h", &RadialGrid::h)
      .def_property_readonly("nodes", &RadialGrid::nodes)
      .def_property_readonly("weights", &RadialGrid::weights);
  m.def("make_grid", [](int n, double r) { return std::const_pointer_cast<RadialGrid>(make_grid(n, r)); },
        py::arg("n") = 4096, py::arg("r_max") = 40.0);

  py::class_<OperatorParams>(m, "OperatorParams")
      .def_readonly("alpha", &OperatorParams::alpha)
      .def_readonly("e_alpha", &OperatorParams::e_alpha)
      .def("beta", &OperatorParams::beta)
      .def("omega_for_beta", &OperatorParams::omega_for_beta);
  m.def("make_params", &make_params);
  m.def("green_value", &green_value);
  m.def("green_inner", &green_inner);

  py::class_<Profile>(m, "Profile")
      .def_readonly("f", &Profile::f)
      .def_readonly("f0", &Profile::f0)
      .def_readonly("beta", &Profile::beta)
      .def_readonly("c", &Profile::c)
      .def_readonly("omega", &Profile::omega)
      .def_readonly("p", &Profile::p)
      .def_readonly("alpha", &Profile::alpha)
      .def("phi", &Profile::phi);

  py::class_<GroundState>(m, "GroundState")
      .def_readonly("profile", &GroundState::profile)
      .def_readonly("action", &GroundState::action)
      .def_readonly("nehari_residual", &GroundState::nehari_residual)
      .def_readonly("pohozaev_residual", &GroundState::pohozaev_residual)
      .def_readonly("mass_rescaled", &GroundState::mass_rescaled)
      .def_readonly("mass_physical", &GroundState::mass_physical)
      .def_readonly("energy", &GroundState::energy)
      .def_readonly("newton_iters", &GroundState::newton_iters)
      .def_readonly("converged", &GroundState::converged)
      .def("to_json", &ground_json);

  py::class_<ClassicProfile>(m, "ClassicProfile")
      .def_readonly("u", &ClassicProfile::u)
      .def_readonly("u0", &ClassicProfile::u0)
      .def_readonly("mass", &ClassicProfile::mass)
      .def_readonly("action_infty", &ClassicProfile::action_infty)
      .def_readonly("pohozaev_residual", &ClassicProfile::pohozaev_residual);

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("omega", &SweepPoint::omega)
      .def_readonly("state", &SweepPoint::state)
      .def_readonly("error", &SweepPoint::error);

  py::class_<MassCurve>(m, "MassCurve")
      .def_readonly("omegas", &MassCurve::omegas)
      .def_readonly("mass", &MassCurve::mass)
      .def_readonly("dmass", &MassCurve::dmass)
      .def_readonly("dmass_asymptotic", &MassCurve::dmass_asymptotic)
      .def_property_readonly("classification", [](const MassCurve& c) {
        std::vector<std::string> out;
        for (auto k : c.classification) out.push_back(to_string(k));
        return out;
      });

  py::class_<LinearizedReport>(m, "LinearizedReport")
      .def_readonly("omega", &LinearizedReport::omega)
      .def_readonly("smallest_abs_eig", &LinearizedReport::smallest_abs_eig)
      .def_readonly("coercivity_eig", &LinearizedReport::coercivity_eig)
      .def_readonly("dims", &LinearizedReport::dims);

  m.def("solve_classic", [](double p, std::shared_ptr<RadialGrid> g) { return solve_classic(p, g); });
  m.def("solve_ground", [](double alpha, double p, double omega, std::shared_ptr<RadialGrid> g) {
    return solve_ground(alpha, p, omega, g);
  });
  m.def("continue_sweep", [](double alpha, double p, std::vector<double> omegas, std::shared_ptr<RadialGrid> g) {
    return continue_sweep(alpha, p, omegas, g);
  });
  m.def("mass_curve", [](const std::vector<GroundState>& s) { return mass_curve(s); });
  m.def("asymptotic_dmass", &asymptotic_dmass);
  m.def("linearized_report", [](const GroundState& gs) { return linearized_report(gs); });
  m.def("selfcheck", []() {
    bool all = true;
    for (const auto& l : run_selfcheck()) all = all && l.pass;
    return all;
  });
}
