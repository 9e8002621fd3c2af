#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "combwire/entanglement.hpp"
#include "combwire/homodyne.hpp"
#include "combwire/imperfect.hpp"
#include "combwire/nullifier.hpp"

namespace py = pybind11;
using namespace combwire;

namespace {

py::array_t<double> covariance_array(const GaussianState& state) {
  const Eigen::MatrixXd cov = state.dense_covariance();
  const auto n = static_cast<py::ssize_t>(cov.rows());
  py::array_t<double> out({n, n});
  auto buf = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) buf(i, j) = cov(i, j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Covariance-matrix simulator for dual-rail cluster states in an OPO frequency comb";

  py::register_exception<config_error>(m, "ConfigError");
  py::register_exception<invariant_error>(m, "InvariantError");

  py::enum_<Pol>(m, "Pol").value("Z", Pol::Z).value("Y", Pol::Y);
  py::enum_<QuadratureType>(m, "QuadratureType")
      .value("Q", QuadratureType::Q)
      .value("P", QuadratureType::P);
  py::enum_<PumpCenter>(m, "PumpCenter").value("Z", PumpCenter::Z).value("Y", PumpCenter::Y);

  py::class_<ModeLabel>(m, "ModeLabel")
      .def(py::init<int, Pol>(), py::arg("n"), py::arg("pol"))
      .def_readwrite("n", &ModeLabel::n)
      .def_readwrite("pol", &ModeLabel::pol)
      .def("__repr__", [](const ModeLabel& x) { return "ModeLabel(" + to_string(x) + ")"; })
      .def(py::self == py::self);

  py::class_<CombSpec>(m, "CombSpec")
      .def(py::init<>())
      .def(py::init([](double delta_omega, double omega0, int n_min, int n_max) {
             CombSpec c{delta_omega, omega0, n_min, n_max};
             c.validate();
             return c;
           }),
           py::arg("delta_omega") = 945.66e6, py::arg("omega0") = 0.0, py::arg("n_min") = -16,
           py::arg("n_max") = 16)
      .def_readwrite("delta_omega", &CombSpec::delta_omega)
      .def_readwrite("omega0", &CombSpec::omega0)
      .def_readwrite("n_min", &CombSpec::n_min)
      .def_readwrite("n_max", &CombSpec::n_max)
      .def("validate", &CombSpec::validate)
      .def("contains", &CombSpec::contains);

  py::class_<PumpConfig>(m, "PumpConfig")
      .def(py::init([](int p_z, int p_y, double r_z, double r_y) {
             PumpConfig p{p_z, p_y, r_z, r_y};
             p.validate();
             return p;
           }),
           py::arg("p_z") = 1, py::arg("p_y") = -1, py::arg("r_z") = 0.0, py::arg("r_y") = 0.0)
      .def_readwrite("p_z", &PumpConfig::p_z)
      .def_readwrite("p_y", &PumpConfig::p_y)
      .def_readwrite("r_z", &PumpConfig::r_z)
      .def_readwrite("r_y", &PumpConfig::r_y)
      .def("wire_count", &PumpConfig::wire_count);

  py::class_<QuadratureCombination>(m, "QuadratureCombination")
      .def(py::init<>())
      .def("add", &QuadratureCombination::add, py::arg("mode"), py::arg("angle"), py::arg("coeff"),
           py::return_value_policy::reference_internal)
      .def_readonly("truncated", &QuadratureCombination::truncated)
      .def_property_readonly("terms", [](const QuadratureCombination& c) {
        py::list out;
        for (const auto& t : c.terms) out.append(py::make_tuple(t.mode, t.angle, t.coeff));
        return out;
      });

  m.def("vacuum_variance", &vacuum_variance, py::arg("obs"), py::arg("vac_var") = 0.5);

  py::class_<GaussianState>(m, "GaussianState")
      .def_static(
          "vacuum",
          [](const std::vector<ModeLabel>& modes) { return GaussianState::vacuum(modes); },
          py::arg("modes"))
      .def_property_readonly("mode_count", &GaussianState::mode_count)
      .def_property_readonly("vac_var", &GaussianState::vac_var)
      .def_property_readonly("is_dense", &GaussianState::is_dense)
      .def("modes", &GaussianState::modes)
      .def("two_mode_squeeze", &GaussianState::two_mode_squeeze)
      .def("beam_splitter", &GaussianState::beam_splitter, py::arg("a"), py::arg("b"),
           py::arg("allow_frequency_mismatch") = false)
      .def("phase_shift", &GaussianState::phase_shift)
      .def("variance", &GaussianState::variance)
      .def("quad_covariance", &GaussianState::quad_covariance)
      .def("covariance", &covariance_array)
      .def("storage_bytes", &GaussianState::storage_bytes);

  m.def(
      "build_comb_state",
      [](const PumpConfig& pumps, const CombSpec& comb, bool beam_splitter, bool fourier_shift,
         const std::string& backend) {
        BuildOptions opts;
        opts.apply_beam_splitter = beam_splitter;
        opts.fourier_shift = fourier_shift;
        if (backend == "dense")
          opts.state.backend = CovBackend::Dense;
        else if (backend == "block")
          opts.state.backend = CovBackend::Block;
        else if (backend != "auto")
          throw invariant_error("backend must be auto, dense or block");
        return build_comb_state(pumps, comb, opts);
      },
      py::arg("pumps"), py::arg("comb"), py::arg("beam_splitter") = true,
      py::arg("fourier_shift") = false, py::arg("backend") = "auto");

  m.def("epr_pairs", &epr_pairs);
  m.def("extract_wires", &extract_wires);
  m.def("fourier_shifted_indices", &fourier_shifted_indices);
  m.def("wire_graphs", [](const PumpConfig& pumps, const CombSpec& comb) {
    py::list out;
    for (const auto& g : wire_graphs(pumps, comb)) {
      py::list edges;
      for (const auto& e : g.edges) edges.append(py::make_tuple(e.a, e.b, e.weight));
      py::dict d;
      d["sequence"] = g.sequence;
      d["nodes"] = g.nodes;
      d["edges"] = edges;
      out.append(d);
    }
    return out;
  });

  m.def("epr_nullifier", &epr_nullifier);
  m.def("bs_nullifier",
        py::overload_cast<const PumpConfig&, const CombSpec&, PumpCenter, int, QuadratureType>(
            &bs_nullifier));
  m.def("bs_nullifier_theta",
        py::overload_cast<const PumpConfig&, const CombSpec&, PumpCenter, int, double, double>(
            &bs_nullifier),
        py::arg("pumps"), py::arg("comb"), py::arg("center"), py::arg("n"), py::arg("theta"),
        py::arg("theta_lo") = 0.0);
  m.def("graph_nullifier", &graph_nullifier);
  m.def("wrong_frequency_combination", &wrong_frequency_combination, py::arg("pumps"),
        py::arg("comb"), py::arg("n_i"), py::arg("n_ii"), py::arg("center"), py::arg("theta"),
        py::arg("theta_lo") = 0.0);
  m.def("squeezing_db", &squeezing_db);

  py::class_<BhdConfig>(m, "BhdConfig")
      .def(py::init<>())
      .def_readwrite("lo_center_pump", &BhdConfig::lo_center_pump)
      .def_readwrite("lo_offset_index", &BhdConfig::lo_offset_index)
      .def_readwrite("sideband_n", &BhdConfig::sideband_n)
      .def_readwrite("theta_lo", &BhdConfig::theta_lo)
      .def_readwrite("theta_o", &BhdConfig::theta_o)
      .def_readwrite("dark_to_shot", &BhdConfig::dark_to_shot)
      .def_readwrite("modulator_bandwidth", &BhdConfig::modulator_bandwidth);

  m.def("selected_modes", [](const BhdConfig& cfg, const PumpConfig& pumps, const CombSpec& comb) {
    const auto sel = selected_modes(cfg, pumps, comb);
    py::dict d;
    d["pair"] = sel.pair ? py::object(py::make_tuple(sel.pair->first, sel.pair->second))
                         : py::object(py::none());
    d["between_modes"] = sel.between_modes;
    d["out_of_range"] = sel.out_of_range;
    return d;
  });
  m.def("measured_observable", &measured_observable);
  m.def("phase_scan", [](const GaussianState& state, const BhdConfig& cfg, const PumpConfig& pumps,
                         const CombSpec& comb, const std::vector<double>& grid) {
    const auto trace = phase_scan(state, cfg, pumps, comb, grid);
    py::list pts;
    for (const auto& p : trace.points)
      pts.append(py::make_tuple(p.theta_lo, p.raw_db, p.corrected_db));
    py::dict d;
    d["descriptor"] = trace.descriptor;
    d["points"] = pts;
    return d;
  });
  m.def("contaminate", &contaminate);
  m.def("correct_electronic_noise", &correct_electronic_noise);
  m.def("eom_cable_phase", &eom_cable_phase);

  m.def("vlf_bound", &vlf_bound);
  m.def("sufficient_condition",
        [](const GaussianState& state, const PumpConfig& pumps, const CombSpec& comb,
           const std::vector<int>& wire) { return sufficient_condition(state, pumps, comb, wire); });
  m.def("full_wire_inseparability",
        [](const GaussianState& state, const PumpConfig& pumps, const CombSpec& comb,
           const std::vector<int>& wire) {
          const auto rep = full_wire_inseparability(state, pumps, comb, wire);
          py::list cells;
          for (const auto& cell : rep.cells) {
            py::list checks;
            for (const auto& c : cell.checks) {
              py::dict chk;
              chk["bipartition"] = c.bipartition;
              chk["observables"] = c.observables;
              chk["sum"] = c.sum;
              chk["bound"] = c.bound;
              chk["violated"] = c.violated;
              checks.append(chk);
            }
            py::dict d;
            d["center"] = cell.cell.center == PumpCenter::Z ? "z" : "y";
            d["n3"] = cell.cell.n3;
            d["n4"] = cell.cell.n4;
            d["evaluable"] = cell.evaluable;
            d["interior"] = cell.interior;
            d["inseparable"] = cell.inseparable;
            d["checks"] = checks;
            cells.append(d);
          }
          py::dict out;
          out["cells"] = cells;
          out["evaluable_cells"] = rep.evaluable_cells;
          out["interior_cells"] = rep.interior_cells;
          out["violated_cells"] = rep.violated_cells;
          out["wire_inseparable"] = rep.wire_inseparable;
          return out;
        });

  py::class_<ImbalanceSpec>(m, "ImbalanceSpec")
      .def(py::init([](double r, double epsilon) {
             ImbalanceSpec s{r, epsilon};
             s.validate();
             return s;
           }),
           py::arg("r"), py::arg("epsilon"))
      .def_readwrite("r", &ImbalanceSpec::r)
      .def_readwrite("epsilon", &ImbalanceSpec::epsilon);
  m.def("first_order_nullifier", &first_order_nullifier);
  m.def("imbalance_report", [](const ImbalanceSpec& spec, const CombSpec& comb) {
    const auto rep = imbalance_report(spec, comb);
    py::dict d;
    d["epsilon"] = rep.epsilon;
    d["r"] = rep.r;
    d["first_order_variance"] = rep.first_order_variance;
    d["exact_variance"] = rep.exact_variance;
    d["residual"] = rep.residual;
    d["zy_correlation"] = rep.zy_correlation;
    return d;
  });
}
