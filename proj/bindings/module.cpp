#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fundsol/errors.hpp"
#include "fundsol/oracle.hpp"
#include "fundsol/solution.hpp"

namespace py = pybind11;
using namespace fundsol;

PYBIND11_MODULE(_core, m) {
  m.doc() = "temperate fundamental solutions of real-principal-type homogeneous operators";

  py::register_exception<Error>(m, "FundsolError");

  py::class_<HomogeneousSymbol>(m, "Symbol")
      .def_static("from_json", &HomogeneousSymbol::from_json_text, py::arg("text"))
      .def_static("load", &HomogeneousSymbol::load, py::arg("path"))
      .def_property_readonly("n", &HomogeneousSymbol::dim)
      .def_property_readonly("k", &HomogeneousSymbol::degree)
      .def("__call__",
           [](const HomogeneousSymbol& s, const Vec& xi) { return s.eval(xi); })
      .def("validate", [](const HomogeneousSymbol& s) {
        SymbolValidation v = validate_H(s);
        py::dict d;
        d["passes_H"] = v.passes_H;
        d["empty_characteristic_set"] = v.empty_characteristic_set;
        d["epsilon"] = v.epsilon;
        d["min_tangential_gradient_norm"] = v.min_tangential_gradient_norm;
        return d;
      });

  py::class_<SpectralTestFunction>(m, "TestFunction")
      .def_static("gaussian", &SpectralTestFunction::gaussian, py::arg("n"),
                  py::arg("center"), py::arg("sigma"))
      .def("dilate", &SpectralTestFunction::dilate, py::arg("lam"))
      .def("apply_symbol", &SpectralTestFunction::apply_symbol, py::arg("symbol"))
      .def("hat", [](const SpectralTestFunction& f, const Vec& xi) { return f.hat_eval(xi); })
      .def_property_readonly("sigma", &SpectralTestFunction::sigma)
      .def("point_value", &SpectralTestFunction::point_value);

  py::enum_<Variant>(m, "Variant")
      .value("theorem", Variant::theorem)
      .value("proof", Variant::proof);

  py::class_<SolutionFunctional>(m, "Solution")
      .def(py::init([](const HomogeneousSymbol& s, Variant v, int sphere_level) {
             SolutionBudgets b;
             b.sphere_level = sphere_level;
             return SolutionFunctional(s, v, b);
           }),
           py::arg("symbol"), py::arg("variant") = Variant::theorem,
           py::arg("sphere_level") = 0)
      .def_property_readonly("case_tag",
                             [](const SolutionFunctional& s) {
                               return std::string(1, s.case_tag());
                             })
      .def_property_readonly("epsilon",
                             [](const SolutionFunctional& s) {
                               return s.validation().epsilon;
                             })
      .def("eval", &SolutionFunctional::eval, py::arg("f"))
      .def("eval_null", &SolutionFunctional::eval_null, py::arg("f"))
      .def("eval_family", &SolutionFunctional::eval_family, py::arg("lam"), py::arg("f"));

  m.def("proof_constants", [](int k) {
    ProofConstants pc = proof_constants(k);
    py::dict d;
    d["k"] = pc.k;
    d["h0"] = pc.h0;
    d["hp0"] = pc.hp0;
    d["m0"] = pc.m0;
    d["mp0"] = pc.mp0;
    d["mpp0"] = pc.mpp0;
    d["h0_num"] = pc.h0_num;
    d["hp0_num"] = pc.hp0_num;
    d["m0_num"] = pc.m0_num;
    d["mp0_num"] = pc.mp0_num;
    d["mpp0_num"] = pc.mpp0_num;
    return d;
  });

  m.def("adjudicate", [](const SolutionFunctional& sf, const SpectralTestFunction& f) {
    Adjudication adj = adjudicate(sf, f);
    py::dict d;
    d["a0"] = adj.a0;
    d["theorem_value"] = adj.theorem_value;
    d["proof_value"] = adj.proof_value;
    d["err_theorem"] = adj.err_theorem;
    d["err_proof"] = adj.err_proof;
    d["winner"] = adj.winner == Variant::theorem ? "theorem" : "proof";
    d["pole_order"] = adj.fit.pole_order;
    return d;
  });

  m.def("leray_window",
        [](const HomogeneousSymbol& s, int level) {
          SymbolValidation val = validate_H(s);
          SphereQuadrature quad =
              build_quadrature(s.dim(), level > 0 ? level : default_sphere_level(s.dim()));
          auto one = [](std::span<const double>) { return Complex(1.0, 0.0); };
          LerayProfile prof = leray_transform(s, one, quad, val);
          return py::make_tuple(prof.win_u, prof.win_vals);
        },
        py::arg("symbol"), py::arg("level") = 0);
}
