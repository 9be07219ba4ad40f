#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "discbpb/pipeline.hpp"
#include "discbpb/verify.hpp"
#include "discbpb/zoo.hpp"

namespace py = pybind11;
using namespace bpb;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constructive Bishop-Phelps-Bollobas perturbations for operators "
            "into the disc algebra";

  py::register_exception<Error>(m, "DiscBpbError");

  // ---- polynomials on the closed disc ----
  py::class_<DiscPoly>(m, "DiscPoly")
      .def(py::init<CVec>(), py::arg("coeffs"))
      .def_readonly("coeffs", &DiscPoly::coeffs)
      .def_property_readonly("degree", &DiscPoly::degree)
      .def("__call__", [](const DiscPoly& p, Cplx z) { return eval(p, z); })
      .def("sup_norm", [](const DiscPoly& p, int m) { return sup_norm(p, m); },
           py::arg("grid") = 0)
      .def("sup_norm_bracket",
           [](const DiscPoly& p, int m) {
             auto s = sup_norm_full(p, m);
             return py::make_tuple(s.value, s.upper);
           },
           py::arg("grid") = 0)
      .def("hardy2_norm", [](const DiscPoly& p) { return hardy2_norm(p); })
      .def("bernstein_bound", [](const DiscPoly& p) { return bernstein_bound(p); })
      .def("boundary_samples",
           [](const DiscPoly& p, int m) { return boundary_samples(p, m).samples; },
           py::arg("grid"));

  // ---- the Stolz region and its conformal map ----
  m.def("stolz_value", &stolz_value, py::arg("eps"), py::arg("z"));
  m.def("boundary_radius", &boundary_radius, py::arg("eps"), py::arg("theta"));
  m.def("eps2_disc_check", &eps2_disc_check, py::arg("eps"), py::arg("grid") = 4096);
  m.def("corner_exponent", &corner_exponent, py::arg("eps"));

  py::class_<ConformalMap>(m, "ConformalMap")
      .def_static("solve", &ConformalMap::solve, py::arg("eps"), py::arg("grid"))
      .def("__call__", &ConformalMap::eval)
      .def("eval", &ConformalMap::eval)
      .def("eval_taylor", &ConformalMap::eval_taylor)
      .def_property_readonly("eps", &ConformalMap::eps)
      .def_property_readonly("residual", &ConformalMap::residual)
      .def_property_readonly("taylor_residual", &ConformalMap::taylor_residual)
      .def_property_readonly("taylor", &ConformalMap::taylor)
      .def_property_readonly("correspondence", &ConformalMap::correspondence)
      .def("delta1", [](const ConformalMap& mp, double eps) { return delta1(mp, eps); })
      .def("to_dict", [](const ConformalMap& mp) { return json_to_py(mp.to_json()); })
      .def("correspondence_csv", &ConformalMap::correspondence_csv);

  m.def("circle_max_abs", &circle_max_abs, py::arg("map"), py::arg("r"),
        py::arg("points") = 1024);

  // ---- peak function and the eta bump ----
  py::class_<PeakFunction>(m, "PeakFunction")
      .def_readonly("theta0", &PeakFunction::theta0)
      .def("g1", &PeakFunction::eval_g1);
  m.def("make_g1", &make_g1, py::arg("theta0"));
  m.def("gamma_min", &gamma_min, py::arg("peak"), py::arg("delta2"),
        py::arg("validate") = true);

  py::class_<BumpData>(m, "BumpData")
      .def_readonly("gamma", &BumpData::gamma)
      .def_readonly("eps1", &BumpData::eps1)
      .def_readonly("log_eps1", &BumpData::log_eps1)
      .def_readonly("n0", &BumpData::n0)
      .def_readonly("delta1", &BumpData::delta1)
      .def_readonly("delta2", &BumpData::delta2)
      .def_readonly("theta0", &BumpData::theta0);
  m.def("choose_eps1_n0", &choose_eps1_n0, py::arg("gamma"), py::arg("delta1"),
        py::arg("n0_guard") = 1000000);
  m.def("eval_h", &eval_h, py::arg("bump"), py::arg("peak"), py::arg("z"));

  py::class_<EtaFunction>(m, "EtaFunction")
      .def(py::init([](BumpData b, PeakFunction g, ConformalMap mp) {
             return EtaFunction(std::move(b), std::move(g), std::move(mp));
           }),
           py::arg("bump"), py::arg("peak"), py::arg("map"))
      .def("__call__", &EtaFunction::eval)
      .def("eval", &EtaFunction::eval)
      .def_property_readonly("bump", &EtaFunction::bump)
      .def("validate",
           [](const EtaFunction& e, int boundary, int interior, std::uint64_t seed) {
             auto v = e.validate(boundary, interior, seed);
             return py::dict(py::arg("peak_error") = v.peak_error,
                             py::arg("stolz_excess") = v.stolz_excess,
                             py::arg("off_cap_excess") = v.off_cap_excess,
                             py::arg("sup_abs") = v.sup_abs);
           },
           py::arg("boundary_pts") = 4096, py::arg("interior_pts") = 10000,
           py::arg("seed") = 20240901)
      .def("boundary_csv", &EtaFunction::boundary_csv, py::arg("grid") = 2048)
      .def("project", [](const EtaFunction& e, int degree, int m) {
             double err = 0.0;
             DiscPoly p = e.project(degree, m, &err);
             return py::make_tuple(p, err);
           },
           py::arg("degree"), py::arg("grid") = 2048);

  // ---- functionals on (C^n, ||.||_p) ----
  py::class_<LpSpace>(m, "LpSpace")
      .def(py::init([](int n, double p) { return LpSpace{n, p}; }), py::arg("n"),
           py::arg("p") = 2.0)
      .def_readonly("n", &LpSpace::n)
      .def_readonly("p", &LpSpace::p)
      .def("dual_p", &LpSpace::dual_p);

  m.def("p_norm", [](const CVec& x, double p) { return p_norm(x, p); }, py::arg("x"),
        py::arg("p"));
  m.def("dual_norm", [](const CVec& v, double p) { return dual_norm(v, p); },
        py::arg("v"), py::arg("p"));

  py::class_<Functional>(m, "Functional")
      .def(py::init([](LpSpace s, CVec v) { return Functional{s, std::move(v)}; }),
           py::arg("domain"), py::arg("v"))
      .def_readonly("domain", &Functional::domain)
      .def_readonly("v", &Functional::v)
      .def("norm", &Functional::norm)
      .def("__call__", [](const Functional& f, const CVec& x) { return f(x); });

  m.def("norming_vector", &norming_vector, py::arg("f"));
  m.def("duality_map",
        [](const CVec& y, const LpSpace& s, const Functional& toward) {
          return duality_map(y, s, toward);
        },
        py::arg("y"), py::arg("space"), py::arg("toward"));

  py::class_<BpbFunctionalResult>(m, "BpbFunctionalResult")
      .def_readonly("g", &BpbFunctionalResult::g)
      .def_readonly("y", &BpbFunctionalResult::y)
      .def_readonly("attain", &BpbFunctionalResult::attain)
      .def_readonly("dist_xy", &BpbFunctionalResult::dist_xy)
      .def_readonly("dist_fg", &BpbFunctionalResult::dist_fg)
      .def_readonly("verified", &BpbFunctionalResult::verified);
  m.def("bpb_functional",
        [](const Functional& f, const CVec& x, double eps, std::uint64_t seed) {
          return bpb_functional(f, x, eps, seed);
        },
        py::arg("f"), py::arg("x"), py::arg("eps"), py::arg("seed") = 1);

  // ---- operators into the disc algebra ----
  py::class_<OperatorIntoDisc>(m, "OperatorIntoDisc")
      .def(py::init([](LpSpace s, std::vector<DiscPoly> cols) {
             OperatorIntoDisc t;
             t.domain = s;
             int d = 0;
             for (const auto& c : cols) d = std::max(d, c.degree());
             t.degree = d;
             t.cols = std::move(cols);
             return t;
           }),
           py::arg("domain"), py::arg("columns"))
      .def_readonly("domain", &OperatorIntoDisc::domain)
      .def_readonly("degree", &OperatorIntoDisc::degree)
      .def_readonly("columns", &OperatorIntoDisc::cols)
      .def("apply", [](const OperatorIntoDisc& t, const CVec& x) { return t.apply(x); })
      .def("row_functional", &OperatorIntoDisc::row_functional)
      .def("to_dict", [](const OperatorIntoDisc& t) { return json_to_py(t.to_json()); });

  m.def("operator_norm",
        [](const OperatorIntoDisc& t, int m) { return operator_norm(t, m); },
        py::arg("t"), py::arg("grid") = 0);
  m.def("point_functional", &point_functional, py::arg("t"), py::arg("theta0"));

  py::class_<Delta2Result>(m, "Delta2Result")
      .def_readonly("delta2", &Delta2Result::delta2)
      .def_readonly("cap_sup", &Delta2Result::cap_sup)
      .def_readonly("capped", &Delta2Result::capped);
  m.def("equicontinuity_delta2", &equicontinuity_delta2, py::arg("t"),
        py::arg("theta0"), py::arg("eps"), py::arg("arc_pts") = 0);

  // ---- the main construction ----
  py::class_<PerturbedOperator>(m, "PerturbedOperator")
      .def_readonly("eta", &PerturbedOperator::eta)
      .def_readonly("psi2", &PerturbedOperator::psi2)
      .def_readonly("base", &PerturbedOperator::base)
      .def_readonly("eps", &PerturbedOperator::eps)
      .def("__call__",
           [](const PerturbedOperator& n, const CVec& x, Cplx z) { return n.eval(x, z); });
  m.def("eval_N", [](const PerturbedOperator& n, const CVec& x, Cplx z) {
          return eval_N(n, x, z);
        });
  m.def("diff_norm",
        [](const OperatorIntoDisc& t, const PerturbedOperator& n, int m) {
          return diff_norm(t, n, m);
        },
        py::arg("t"), py::arg("n"), py::arg("grid") = 0);

  py::class_<BpbOperatorResult>(m, "BpbOperatorResult")
      .def_readonly("n", &BpbOperatorResult::n)
      .def_readonly("x0", &BpbOperatorResult::x0)
      .def_readonly("y0", &BpbOperatorResult::y0)
      .def_readonly("eps", &BpbOperatorResult::eps)
      .def_readonly("theta0", &BpbOperatorResult::theta0)
      .def_readonly("delta1", &BpbOperatorResult::delta1)
      .def_readonly("delta2", &BpbOperatorResult::delta2)
      .def_readonly("gamma", &BpbOperatorResult::gamma)
      .def_readonly("eps1", &BpbOperatorResult::eps1)
      .def_readonly("log_eps1", &BpbOperatorResult::log_eps1)
      .def_readonly("n0", &BpbOperatorResult::n0)
      .def_readonly("norm_N_y0", &BpbOperatorResult::norm_N_y0)
      .def_readonly("dist_x0_y0", &BpbOperatorResult::dist_x0_y0)
      .def_readonly("op_distance", &BpbOperatorResult::op_distance)
      .def_readonly("all_pass", &BpbOperatorResult::all_pass)
      .def("report", [](const BpbOperatorResult& r) { return json_to_py(r.report()); });

  m.def("bpb_operator",
        [](const OperatorIntoDisc& t, const CVec& x0, double theta0, double eps,
           int map_grid, int sweep_grid, std::uint64_t seed) {
          PipelineOptions opt;
          opt.map_grid = map_grid;
          opt.sweep_grid = sweep_grid;
          opt.seed = seed;
          return bpb_operator(t, x0, theta0, eps, opt);
        },
        py::arg("t"), py::arg("x0"), py::arg("theta0"), py::arg("eps"),
        py::arg("map_grid") = 2048, py::arg("sweep_grid") = 4096, py::arg("seed") = 1);

  py::class_<IdealParts>(m, "IdealParts")
      .def("eval_N1",
           [](const IdealParts& p, const CVec& x, Cplx z) { return p.eval_N1(x, z); })
      .def("eval_N2",
           [](const IdealParts& p, const CVec& x, Cplx z) { return p.eval_N2(x, z); });
  m.def("ideal_decompose", &ideal_decompose, py::arg("n"));

  // ---- example operators ----
  auto zoo = m.def_submodule("zoo", "example operators and probes");
  py::class_<bpb::zoo::OperatorOnPoly>(zoo, "OperatorOnPoly")
      .def_readonly("d_in", &bpb::zoo::OperatorOnPoly::d_in)
      .def_readonly("d_out", &bpb::zoo::OperatorOnPoly::d_out)
      .def("apply", &bpb::zoo::OperatorOnPoly::apply);
  zoo.def("mult_operator", &bpb::zoo::mult_operator, py::arg("phi"), py::arg("degree"));
  zoo.def("comp_operator", &bpb::zoo::comp_operator, py::arg("phi"), py::arg("degree"));
  zoo.def("rank_one", &bpb::zoo::rank_one, py::arg("xstar"), py::arg("h"));

  py::class_<bpb::zoo::HardyDiagonal>(zoo, "HardyDiagonal")
      .def_readonly("degree", &bpb::zoo::HardyDiagonal::degree)
      .def_readonly("multipliers", &bpb::zoo::HardyDiagonal::multipliers)
      .def("apply", &bpb::zoo::HardyDiagonal::apply)
      .def("ratio", &bpb::zoo::HardyDiagonal::ratio)
      .def("best_basis_ratio", &bpb::zoo::HardyDiagonal::best_basis_ratio);
  zoo.def("hardy_diagonal", &bpb::zoo::hardy_diagonal, py::arg("degree"));

  py::class_<bpb::zoo::ProbeReport>(zoo, "ProbeReport")
      .def_readonly("best_x", &bpb::zoo::ProbeReport::best_x)
      .def_readonly("best_value", &bpb::zoo::ProbeReport::best_value)
      .def_readonly("op_norm", &bpb::zoo::ProbeReport::op_norm)
      .def_readonly("gap", &bpb::zoo::ProbeReport::gap)
      .def_readonly("attained", &bpb::zoo::ProbeReport::attained)
      .def("to_dict", [](const bpb::zoo::ProbeReport& r) { return json_to_py(r.to_json()); });
  zoo.def("attainment_probe", &bpb::zoo::attainment_probe, py::arg("t"),
          py::arg("trials"), py::arg("seed"), py::arg("tol") = 1e-6);
  zoo.def("equicontinuity_report",
          [](const OperatorIntoDisc& t, const std::vector<double>& thetas,
             const std::vector<double>& epss) {
            return bpb::zoo::equicontinuity_report(t, thetas, epss).csv();
          },
          py::arg("t"), py::arg("thetas"), py::arg("epss"));

  // ---- verification suites and demo cases ----
  m.def("run_suites", [](const std::string& name) {
          py::list out;
          for (const auto& s : verify::run_suites(name)) out.append(json_to_py(s.to_json()));
          return out;
        },
        py::arg("suite"));
  m.def("suite_names", &verify::suite_names);
  m.def("make_rank_one_case",
        [](int n, double eps, double theta0, std::uint64_t seed, int peak_power,
           double perturbation) {
          auto c = verify::make_rank_one_case(n, eps, theta0, seed, peak_power, perturbation);
          return py::make_tuple(c.t, c.x0, c.level);
        },
        py::arg("n"), py::arg("eps"), py::arg("theta0"), py::arg("seed") = 1,
        py::arg("peak_power") = 6, py::arg("perturbation") = 0.03);
}
