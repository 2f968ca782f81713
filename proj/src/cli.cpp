#include "isingkit/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isingkit/errors.hpp"
#include "isingkit/generators.hpp"
#include "isingkit/oracle.hpp"
#include "isingkit/rng.hpp"
#include "isingkit/solve_report.hpp"

namespace isingkit {

namespace {

using nlohmann::ordered_json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoFailure("failed while reading '" + path + "'");
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoFailure("failed while writing '" + path + "'");
}

void emit_error(const std::string& kind, const std::string& message,
                const ordered_json& extra = ordered_json::object()) {
  ordered_json record;
  record["error"] = ordered_json::object();
  record["error"]["kind"] = kind;
  record["error"]["message"] = message;
  for (const auto& item : extra.items()) {
    record["error"][item.key()] = item.value();
  }
  std::cerr << record.dump() << std::endl;
}

std::string engine_name(Engine engine) {
  switch (engine) {
    case Engine::Anneal:
      return "anneal";
    case Engine::Cim:
      return "cim";
    case Engine::Greedy:
      return "greedy";
    case Engine::Oracle:
      return "oracle";
  }
  return "anneal";
}

ordered_json state_to_json(const SpinState& state) {
  ordered_json values = ordered_json::array();
  for (std::size_t i = 0; i < state.size(); ++i) {
    values.push_back(static_cast<int>(state[i]));
  }
  return values;
}

ordered_json anneal_params_json(const AnnealParams& params) {
  ordered_json block;
  block["update_rule"] = params.update_rule == UpdateRule::Gibbs ? "gibbs"
                         : params.update_rule == UpdateRule::Metropolis
                             ? "metropolis"
                             : "greedy";
  block["sweep_order"] = params.sweep_order == SweepOrder::Sequential
                             ? "sequential"
                             : "random-permutation";
  block["restarts"] = params.restarts;
  block["t_start"] = params.schedule.t_start;
  block["t_end"] = params.schedule.t_end;
  block["sweeps"] = params.schedule.sweeps;
  block["schedule"] = params.schedule.kind == ScheduleKind::Geometric
                          ? "geometric"
                          : "linear";
  block["k_boltzmann"] = params.schedule.k_boltzmann;
  block["p_input_invert"] = params.noise.p_input_invert;
  block["p_output_invert"] = params.noise.p_output_invert;
  return block;
}

ordered_json cim_params_json(const CimParams& params) {
  ordered_json block;
  block["pump_start"] = params.pump_start;
  block["pump_end"] = params.pump_end;
  block["ramp_steps"] = params.ramp_steps;
  block["dt"] = params.dt;
  block["coupling_strength"] = params.coupling_strength;
  block["noise_amplitude"] = params.noise_amplitude;
  block["saturation"] = params.saturation;
  return block;
}

SolveReport run_greedy_multistart(const IsingModel& model,
                                  std::uint64_t seed, std::size_t restarts) {
  SolveReport merged;
  merged.seed = seed;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t chain = 0; chain < restarts; ++chain) {
    Rng rng(stream_seed(seed, chain));
    const SpinState start = SpinState::random(model.num_spins(), rng);
    SolveReport descent = greedy_descent(model, start);
    merged.accepted_flips += descent.accepted_flips;
    if (descent.best_energy < best) {
      best = descent.best_energy;
      merged.best_state = std::move(descent.best_state);
      merged.best_energy = descent.best_energy;
    }
    merged.energy_trace.push_back(best);
  }
  return merged;
}

/// Heuristic engines share this entry; the oracle is dispatched separately
/// because it reports exhaustive results, not a stochastic trace.
SolveReport run_heuristic(const IsingModel& model, const RunConfig& config,
                          ordered_json& params_out) {
  switch (config.engine) {
    case Engine::Anneal: {
      AnnealParams params = config.anneal;
      params.seed = config.seed;
      params_out = anneal_params_json(params);
      return anneal(model, params);
    }
    case Engine::Cim: {
      CimParams params = config.cim;
      params.seed = config.seed;
      params.coupling_strength =
          config.cim_coupling
              ? *config.cim_coupling
              : CimParams::defaults_for(model.num_spins()).coupling_strength;
      params_out = cim_params_json(params);
      return cim_solve(model, params);
    }
    case Engine::Greedy: {
      params_out = ordered_json::object();
      params_out["restarts"] = config.anneal.restarts;
      return run_greedy_multistart(model, config.seed, config.anneal.restarts);
    }
    case Engine::Oracle:
      break;
  }
  throw std::logic_error("oracle engine routed to the heuristic path");
}

std::string render_csv(const ordered_json& doc) {
  // One header and one data row; empty cells where a field does not apply.
  // Numeric cells reuse the JSON value rendering so the two report formats
  // print identical digits.
  const ordered_json& result = doc["result"];
  const ordered_json& problem = doc["problem"];
  const auto cell = [](const ordered_json& parent,
                       const char* key) -> std::string {
    if (!parent.contains(key) || parent[key].is_null()) return "";
    return parent[key].dump();
  };
  std::string out =
      "engine,seed,problem,num_spins,best_energy,accepted_flips,objective,"
      "feasible,violation,wall_time_seconds\n";
  out += doc["engine"].get<std::string>();
  out += ",";
  out += doc["seed"].dump();
  out += ",";
  out += problem["kind"].get<std::string>();
  out += ",";
  out += cell(problem, "num_spins");
  out += ",";
  out += cell(result, "best_energy");
  out += ",";
  out += cell(result, "accepted_flips");
  out += ",";
  out += cell(result, "objective");
  out += ",";
  out += cell(result, "feasible");
  out += ",";
  out += cell(result, "violation");
  out += ",";
  out += doc["wall_time_seconds"].dump();
  out += "\n";
  return out;
}

std::string render_trace(const std::vector<double>& trace) {
  std::string out = "sweep,best_energy\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += std::to_string(i) + "," + number_repr(trace[i]) + "\n";
  }
  return out;
}

int execute(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();

  Instance instance = [&]() -> Instance {
    if (config.input_path) {
      return parse_instance(read_file(*config.input_path), config.format);
    }
    return generate(parse_generator_spec(*config.generate_spec));
  }();

  ordered_json source;
  if (config.input_path) {
    source["kind"] = "file";
    source["path"] = *config.input_path;
    source["format"] = format_name(config.format);
  } else {
    source["kind"] = "generator";
    source["spec"] = *config.generate_spec;
  }

  ordered_json params = ordered_json::object();
  ordered_json problem = ordered_json::object();
  ordered_json result = ordered_json::object();
  std::vector<double> trace;

  if (const auto* bilp = std::get_if<BilpInstance>(&instance)) {
    problem["kind"] = "bilp";
    problem["num_vars"] = bilp->num_vars();
    problem["num_constraints"] = bilp->constraints().size();
    if (config.engine == Engine::Oracle) {
      params["cap_bits"] = config.oracle_cap;
      const BilpOracleResult oracle = enumerate_bilp(*bilp, config.oracle_cap);
      result["feasible"] = oracle.feasible;
      result["states_examined"] = oracle.states_examined;
      if (oracle.feasible) {
        result["objective"] = oracle.best_value;
        result["assignment"] = oracle.best_assignments.front();
        result["num_optimal"] = oracle.best_assignments.size();
        trace.push_back(oracle.best_value);
      } else {
        result["objective"] = nullptr;
        result["assignment"] = nullptr;
        result["num_optimal"] = 0;
      }
    } else {
      ReductionArtifact artifact =
          reduce(*bilp, config.weights, config.max_bits_per_var);
      std::size_t slack_bits = 0;
      for (const SlackEncoding& reg : artifact.slack_bits) {
        slack_bits += reg.bits.size();
      }
      ordered_json reduction;
      reduction["num_bits"] = artifact.num_bits();
      reduction["slack_bits"] = slack_bits;
      reduction["constraint_weight"] = artifact.weights.constraint_weight;
      reduction["objective_weight"] = artifact.weights.objective_weight;
      reduction["constant_shift"] = artifact.constant_shift;
      reduction["max_bits_per_var"] = config.max_bits_per_var;
      problem["num_spins"] = artifact.num_bits();
      problem["reduction"] = std::move(reduction);

      const SolveReport report =
          run_heuristic(artifact.ising, config, params);
      const DecodedSolution decoded = decode(artifact, report.best_state);
      result["best_energy"] = report.best_energy;
      result["best_state"] = state_to_json(report.best_state);
      result["accepted_flips"] = report.accepted_flips;
      result["objective"] = decoded.objective;
      result["assignment"] = decoded.assignment;
      result["feasible"] = decoded.feasible;
      result["violation"] = decoded.violation;
      trace = report.energy_trace;
    }
  } else {
    const IsingModel& model = std::get<IsingModel>(instance);
    problem["kind"] = "ising";
    problem["num_spins"] = model.num_spins();
    if (config.engine == Engine::Oracle) {
      params["cap_spins"] = config.oracle_cap;
      const IsingOracleResult oracle =
          enumerate_ising(model, config.oracle_cap);
      result["best_energy"] = oracle.best_energy;
      result["best_state"] = state_to_json(oracle.best_states.front());
      result["num_ground_states"] = oracle.best_states.size();
      result["states_examined"] = oracle.states_examined;
      trace.push_back(oracle.best_energy);
    } else {
      const SolveReport report = run_heuristic(model, config, params);
      result["best_energy"] = report.best_energy;
      result["best_state"] = state_to_json(report.best_state);
      result["accepted_flips"] = report.accepted_flips;
      trace = report.energy_trace;
    }
  }

  ordered_json doc;
  doc["format_version"] = 1;
  doc["engine"] = engine_name(config.engine);
  doc["seed"] = config.seed;
  doc["source"] = std::move(source);
  doc["params"] = std::move(params);
  doc["problem"] = std::move(problem);
  doc["result"] = std::move(result);
  doc["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  const std::string rendered = config.report_format == ReportFormat::Json
                                   ? doc.dump(2) + "\n"
                                   : render_csv(doc);
  if (config.out_path) {
    write_file(*config.out_path, rendered);
  } else {
    std::cout << rendered;
    std::cout.flush();
  }
  if (config.trace_path) {
    write_file(*config.trace_path, render_trace(trace));
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  if (config.input_path.has_value() == config.generate_spec.has_value()) {
    emit_error("usage", "exactly one of --input and --generate is required");
    return 1;
  }
  try {
    return execute(config);
  } catch (const ParseError& e) {
    ordered_json extra;
    if (e.line() > 0) {
      extra["line"] = e.line();
      extra["column"] = e.column();
    }
    emit_error("parse", e.what(), extra);
    return 2;
  } catch (const ReductionError& e) {
    emit_error("reduction", e.what());
    return 3;
  } catch (const DivergenceError& e) {
    ordered_json extra;
    extra["step"] = e.step();
    emit_error("engine", e.what(), extra);
    return 4;
  } catch (const EngineError& e) {
    emit_error("engine", e.what());
    return 4;
  } catch (const IoFailure& e) {
    emit_error("io", e.what());
    return 5;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
}

int run_cli(int argc, const char* const* argv) {
  RunConfig config;
  std::string engine = "anneal";
  std::string format;
  std::string report = "json";
  std::string rule = "gibbs";
  std::string order = "sequential";
  std::string schedule = "geometric";
  std::string input;
  std::string generate_spec;
  std::string out;
  std::string trace;
  double coupling = 0.0;
  double constraint_weight = 0.0;
  double objective_weight = 0.0;

  CLI::App app{"Ising/QUBO optimization toolkit"};
  app.name("solve");
  app.add_option("--engine", engine, "Engine to run")
      ->check(CLI::IsMember({"anneal", "cim", "greedy", "oracle"}))
      ->capture_default_str();
  auto* input_opt =
      app.add_option("--input", input, "Instance file to solve");
  auto* generate_opt = app.add_option(
      "--generate", generate_spec,
      "Generator spec: kind:key=value,... (maxcut-random, maxcut-ring, "
      "knapsack, random-bilp)");
  input_opt->excludes(generate_opt);
  generate_opt->excludes(input_opt);
  auto* format_opt =
      app.add_option("--format", format,
                     "Input format (required with --input)")
          ->check(CLI::IsMember({"bilp-json", "ising-json", "lp-text"}));
  app.add_option("--seed", config.seed, "Master seed")->capture_default_str();
  app.add_option("--out", out, "Report file (default: stdout)");
  app.add_option("--report", report, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--trace", trace, "Write the best-energy series CSV here");

  app.add_option("--sweeps", config.anneal.schedule.sweeps, "Annealer sweeps")
      ->capture_default_str();
  app.add_option("--t-start", config.anneal.schedule.t_start,
                 "Initial temperature")
      ->capture_default_str();
  app.add_option("--t-end", config.anneal.schedule.t_end, "Final temperature")
      ->capture_default_str();
  app.add_option("--schedule", schedule, "Cooling interpolation")
      ->check(CLI::IsMember({"geometric", "linear"}))
      ->capture_default_str();
  app.add_option("--restarts", config.anneal.restarts,
                 "Independent chains (anneal, greedy)")
      ->capture_default_str();
  app.add_option("--rule", rule, "Spin update rule")
      ->check(CLI::IsMember({"gibbs", "metropolis", "greedy"}))
      ->capture_default_str();
  app.add_option("--sweep-order", order, "Spin visit order within a sweep")
      ->check(CLI::IsMember({"sequential", "random"}))
      ->capture_default_str();
  app.add_option("--p-input-invert", config.anneal.noise.p_input_invert,
                 "Probability of negating each neighbor read")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--p-output-invert", config.anneal.noise.p_output_invert,
                 "Probability of negating the written spin")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  app.add_option("--pump-start", config.cim.pump_start, "Initial pump gain")
      ->capture_default_str();
  app.add_option("--pump-end", config.cim.pump_end, "Final pump gain")
      ->capture_default_str();
  app.add_option("--ramp-steps", config.cim.ramp_steps, "Integration steps")
      ->capture_default_str();
  app.add_option("--dt", config.cim.dt, "Integration time step")
      ->capture_default_str();
  auto* coupling_opt = app.add_option(
      "--coupling-strength", coupling,
      "Injection gain (default: 0.1/sqrt(num_spins))");
  app.add_option("--noise-amplitude", config.cim.noise_amplitude,
                 "Stochastic drive amplitude")
      ->capture_default_str();
  app.add_option("--saturation", config.cim.saturation, "Amplitude clamp")
      ->capture_default_str();

  app.add_option("--oracle-cap", config.oracle_cap,
                 "Exhaustive search budget: spins, or box bits for integer "
                 "programs")
      ->capture_default_str();
  app.add_option("--max-bits", config.max_bits_per_var,
                 "Binary expansion bit budget per variable/slack")
      ->capture_default_str();
  auto* cw_opt = app.add_option("--constraint-weight", constraint_weight,
                                "Penalty weight (with --objective-weight)");
  auto* ow_opt = app.add_option("--objective-weight", objective_weight,
                                "Cost term weight (with --constraint-weight)");
  cw_opt->needs(ow_opt);
  ow_opt->needs(cw_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    emit_error("usage", e.what());
    return 1;
  }

  if (input.empty() == generate_spec.empty()) {
    emit_error("usage", "exactly one of --input and --generate is required");
    return 1;
  }
  if (!input.empty()) {
    if (format_opt->count() == 0) {
      emit_error("usage", "--format is required with --input");
      return 1;
    }
    config.input_path = input;
    config.format = *format_from_name(format);
  } else {
    config.generate_spec = generate_spec;
  }

  if (engine == "anneal") {
    config.engine = Engine::Anneal;
  } else if (engine == "cim") {
    config.engine = Engine::Cim;
  } else if (engine == "greedy") {
    config.engine = Engine::Greedy;
  } else {
    config.engine = Engine::Oracle;
  }
  config.report_format =
      report == "csv" ? ReportFormat::Csv : ReportFormat::Json;
  config.anneal.update_rule = rule == "gibbs" ? UpdateRule::Gibbs
                              : rule == "metropolis" ? UpdateRule::Metropolis
                                                     : UpdateRule::Greedy;
  config.anneal.sweep_order = order == "sequential"
                                  ? SweepOrder::Sequential
                                  : SweepOrder::RandomPermutation;
  config.anneal.schedule.kind = schedule == "geometric"
                                    ? ScheduleKind::Geometric
                                    : ScheduleKind::Linear;
  if (!out.empty()) config.out_path = out;
  if (!trace.empty()) config.trace_path = trace;
  if (coupling_opt->count() > 0) config.cim_coupling = coupling;
  if (cw_opt->count() > 0) {
    config.weights = PenaltyWeights{constraint_weight, objective_weight};
  }
  return run(config);
}

}  // namespace isingkit
