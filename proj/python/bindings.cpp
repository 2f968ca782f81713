#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <variant>
#include <vector>

#include "isingkit/annealer.hpp"
#include "isingkit/cim.hpp"
#include "isingkit/errors.hpp"
#include "isingkit/ising.hpp"
#include "isingkit/io.hpp"
#include "isingkit/oracle.hpp"
#include "isingkit/reduction.hpp"

namespace py = pybind11;
using namespace isingkit;

namespace {

Constraint make_constraint(
    const std::vector<std::pair<std::size_t, double>>& terms, Sense sense,
    double rhs) {
  Constraint c;
  for (const auto& [var, coeff] : terms) c.terms.push_back({var, coeff});
  c.sense = sense;
  c.rhs = rhs;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spin-model optimization toolkit: Ising/QUBO models, a penalty "
            "reduction for integer programs, annealing and oscillator-network "
            "engines, and exhaustive oracles.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ReductionError>(m, "ReductionError",
                                         PyExc_ValueError);
  py::register_exception<EngineError>(m, "EngineError", PyExc_RuntimeError);

  py::class_<SpinState>(m, "SpinState")
      .def(py::init<std::size_t>(), py::arg("num_spins"))
      .def_static("from_signs", &SpinState::from_signs, py::arg("signs"))
      .def("__len__", &SpinState::size)
      .def("__getitem__",
           [](const SpinState& s, std::size_t i) {
             if (i >= s.size()) throw py::index_error();
             return static_cast<int>(s[i]);
           })
      .def("set", &SpinState::set, py::arg("i"), py::arg("value"))
      .def("flip", &SpinState::flip, py::arg("i"))
      .def("signs",
           [](const SpinState& s) {
             return std::vector<int>(s.signs().begin(), s.signs().end());
           })
      .def("__eq__",
           [](const SpinState& a, const SpinState& b) { return a == b; })
      .def("__repr__", [](const SpinState& s) {
        std::ostringstream out;
        out << "SpinState([";
        for (std::size_t i = 0; i < s.size(); ++i) {
          out << (i ? ", " : "") << static_cast<int>(s[i]);
        }
        out << "])";
        return out.str();
      });

  py::class_<IsingModel>(m, "IsingModel")
      .def(py::init<std::size_t>(), py::arg("num_spins"))
      .def("num_spins", &IsingModel::num_spins)
      .def("add_coupling", &IsingModel::add_coupling, py::arg("i"),
           py::arg("j"), py::arg("value"))
      .def("set_field", &IsingModel::set_field, py::arg("i"), py::arg("value"))
      .def("add_field", &IsingModel::add_field, py::arg("i"), py::arg("value"))
      .def("set_offset", &IsingModel::set_offset, py::arg("value"))
      .def("coupling", &IsingModel::coupling, py::arg("i"), py::arg("j"))
      .def("field", &IsingModel::field, py::arg("i"))
      .def("offset", &IsingModel::offset)
      .def("couplings", [](const IsingModel& model) {
        std::vector<std::tuple<std::size_t, std::size_t, double>> out;
        for (const auto& [pair, value] : model.couplings()) {
          out.emplace_back(pair.first, pair.second, value);
        }
        return out;
      });

  py::class_<QuboModel>(m, "QuboModel")
      .def(py::init<std::size_t>(), py::arg("num_vars"))
      .def("num_vars", &QuboModel::num_vars)
      .def("add_term", &QuboModel::add_term, py::arg("i"), py::arg("j"),
           py::arg("value"))
      .def("set_offset", &QuboModel::set_offset, py::arg("value"))
      .def("term", &QuboModel::term, py::arg("i"), py::arg("j"))
      .def("offset", &QuboModel::offset)
      .def("value", &QuboModel::value, py::arg("bits"));

  py::class_<XyModel>(m, "XyModel")
      .def(py::init<std::size_t>(), py::arg("num_rotors"))
      .def(py::init<IsingModel>(), py::arg("graph"))
      .def("num_rotors", &XyModel::num_rotors)
      .def("add_coupling", &XyModel::add_coupling, py::arg("i"), py::arg("j"),
           py::arg("value"))
      .def("set_field", &XyModel::set_field, py::arg("i"), py::arg("value"));

  m.def("energy", &energy, py::arg("model"), py::arg("state"));
  m.def("local_field", &local_field, py::arg("model"), py::arg("state"),
        py::arg("i"));
  m.def("flip_delta", &flip_delta, py::arg("model"), py::arg("state"),
        py::arg("i"));
  m.def("qubo_to_ising", &qubo_to_ising, py::arg("qubo"));
  m.def("xy_energy", &xy_energy, py::arg("model"), py::arg("angles"));

  py::enum_<Sense>(m, "Sense")
      .value("EQUAL", Sense::Equal)
      .value("LESS_EQUAL", Sense::LessEqual)
      .value("GREATER_EQUAL", Sense::GreaterEqual);

  py::class_<VarDomain>(m, "VarDomain")
      .def_static("binary", &VarDomain::binary)
      .def_static("integer", &VarDomain::integer, py::arg("lo"), py::arg("hi"))
      .def_readonly("lo", &VarDomain::lo)
      .def_readonly("hi", &VarDomain::hi);

  py::class_<BilpInstance>(m, "BilpInstance")
      .def(py::init<std::size_t>(), py::arg("num_vars"))
      .def("num_vars", &BilpInstance::num_vars)
      .def("set_objective", &BilpInstance::set_objective, py::arg("var"),
           py::arg("coeff"))
      .def("set_objective_offset", &BilpInstance::set_objective_offset,
           py::arg("value"))
      .def("set_domain", &BilpInstance::set_domain, py::arg("var"),
           py::arg("domain"))
      .def(
          "add_constraint",
          [](BilpInstance& instance,
             const std::vector<std::pair<std::size_t, double>>& terms,
             Sense sense, double rhs) {
            instance.add_constraint(make_constraint(terms, sense, rhs));
          },
          py::arg("terms"), py::arg("sense"), py::arg("rhs"))
      .def("objective_value", &BilpInstance::objective_value, py::arg("x"))
      .def("in_bounds", &BilpInstance::in_bounds, py::arg("x"));

  py::class_<PenaltyWeights>(m, "PenaltyWeights")
      .def(py::init([](double constraint_weight, double objective_weight) {
             return PenaltyWeights{constraint_weight, objective_weight};
           }),
           py::arg("constraint_weight"), py::arg("objective_weight"))
      .def_readonly("constraint_weight", &PenaltyWeights::constraint_weight)
      .def_readonly("objective_weight", &PenaltyWeights::objective_weight);

  py::class_<DecodedSolution>(m, "DecodedSolution")
      .def_readonly("assignment", &DecodedSolution::assignment)
      .def_readonly("objective", &DecodedSolution::objective)
      .def_readonly("feasible", &DecodedSolution::feasible)
      .def_readonly("violation", &DecodedSolution::violation);

  py::class_<ReductionArtifact>(m, "ReductionArtifact")
      .def_readonly("qubo", &ReductionArtifact::qubo)
      .def_readonly("ising", &ReductionArtifact::ising)
      .def_readonly("weights", &ReductionArtifact::weights)
      .def_readonly("constant_shift", &ReductionArtifact::constant_shift)
      .def("num_bits", &ReductionArtifact::num_bits);

  m.def("choose_weights", &choose_weights, py::arg("instance"));
  m.def("reduce", &reduce, py::arg("instance"),
        py::arg("weights") = std::nullopt, py::arg("max_bits_per_var") = 24);
  m.def("encode", &encode, py::arg("artifact"), py::arg("x"));
  m.def("decode", &decode, py::arg("artifact"), py::arg("state"));

  py::enum_<ScheduleKind>(m, "ScheduleKind")
      .value("GEOMETRIC", ScheduleKind::Geometric)
      .value("LINEAR", ScheduleKind::Linear);
  py::enum_<UpdateRule>(m, "UpdateRule")
      .value("METROPOLIS", UpdateRule::Metropolis)
      .value("GIBBS", UpdateRule::Gibbs)
      .value("GREEDY", UpdateRule::Greedy);
  py::enum_<SweepOrder>(m, "SweepOrder")
      .value("SEQUENTIAL", SweepOrder::Sequential)
      .value("RANDOM_PERMUTATION", SweepOrder::RandomPermutation);

  py::class_<AnnealSchedule>(m, "AnnealSchedule")
      .def(py::init<>())
      .def_readwrite("t_start", &AnnealSchedule::t_start)
      .def_readwrite("t_end", &AnnealSchedule::t_end)
      .def_readwrite("sweeps", &AnnealSchedule::sweeps)
      .def_readwrite("kind", &AnnealSchedule::kind)
      .def_readwrite("k_boltzmann", &AnnealSchedule::k_boltzmann);

  py::class_<NoiseConfig>(m, "NoiseConfig")
      .def(py::init<>())
      .def_readwrite("p_input_invert", &NoiseConfig::p_input_invert)
      .def_readwrite("p_output_invert", &NoiseConfig::p_output_invert);

  py::class_<AnnealParams>(m, "AnnealParams")
      .def(py::init<>())
      .def_readwrite("schedule", &AnnealParams::schedule)
      .def_readwrite("noise", &AnnealParams::noise)
      .def_readwrite("restarts", &AnnealParams::restarts)
      .def_readwrite("seed", &AnnealParams::seed)
      .def_readwrite("update_rule", &AnnealParams::update_rule)
      .def_readwrite("sweep_order", &AnnealParams::sweep_order);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("best_state", &SolveReport::best_state)
      .def_readonly("best_energy", &SolveReport::best_energy)
      .def_readonly("energy_trace", &SolveReport::energy_trace)
      .def_readonly("accepted_flips", &SolveReport::accepted_flips)
      .def_readonly("seed", &SolveReport::seed)
      .def_readonly("wall_time_seconds", &SolveReport::wall_time_seconds);

  m.def(
      "anneal",
      [](const IsingModel& model, const AnnealParams& params) {
        return anneal(model, params);
      },
      py::arg("model"), py::arg("params") = AnnealParams{});
  m.def("greedy_descent", &greedy_descent, py::arg("model"), py::arg("start"));
  m.def("temperature_at", &temperature_at, py::arg("schedule"),
        py::arg("sweep"));

  py::class_<CimParams>(m, "CimParams")
      .def(py::init<>())
      .def_static("defaults_for", &CimParams::defaults_for,
                  py::arg("num_spins"))
      .def_readwrite("pump_start", &CimParams::pump_start)
      .def_readwrite("pump_end", &CimParams::pump_end)
      .def_readwrite("ramp_steps", &CimParams::ramp_steps)
      .def_readwrite("dt", &CimParams::dt)
      .def_readwrite("coupling_strength", &CimParams::coupling_strength)
      .def_readwrite("noise_amplitude", &CimParams::noise_amplitude)
      .def_readwrite("seed", &CimParams::seed)
      .def_readwrite("saturation", &CimParams::saturation);

  m.def(
      "cim_solve",
      [](const IsingModel& model, const CimParams& params) {
        return cim_solve(model, params);
      },
      py::arg("model"), py::arg("params"));

  py::class_<IsingOracleResult>(m, "IsingOracleResult")
      .def_readonly("best_energy", &IsingOracleResult::best_energy)
      .def_readonly("best_states", &IsingOracleResult::best_states)
      .def_readonly("states_examined", &IsingOracleResult::states_examined);

  py::class_<BilpOracleResult>(m, "BilpOracleResult")
      .def_readonly("feasible", &BilpOracleResult::feasible)
      .def_readonly("best_value", &BilpOracleResult::best_value)
      .def_readonly("best_assignments", &BilpOracleResult::best_assignments)
      .def_readonly("states_examined", &BilpOracleResult::states_examined);

  m.def("enumerate_ising", &enumerate_ising, py::arg("model"),
        py::arg("max_spins") = 24);
  m.def("enumerate_bilp", &enumerate_bilp, py::arg("instance"),
        py::arg("cap_bits") = 24);

  py::enum_<InstanceFormat>(m, "InstanceFormat")
      .value("BILP_JSON", InstanceFormat::BilpJson)
      .value("ISING_JSON", InstanceFormat::IsingJson)
      .value("LP_TEXT", InstanceFormat::LpText);

  m.def(
      "parse_instance",
      [](const std::string& text, InstanceFormat format) -> py::object {
        return std::visit(
            [](auto&& parsed) -> py::object {
              return py::cast(std::forward<decltype(parsed)>(parsed));
            },
            parse_instance(text, format));
      },
      py::arg("text"), py::arg("format"));
  m.def(
      "serialize_instance",
      [](const py::object& instance, InstanceFormat format) {
        if (py::isinstance<BilpInstance>(instance)) {
          return serialize_instance(instance.cast<const BilpInstance&>(),
                                    format);
        }
        return serialize_instance(instance.cast<const IsingModel&>(), format);
      },
      py::arg("instance"), py::arg("format"));
}
