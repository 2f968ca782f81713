#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "isingkit/annealer.hpp"
#include "isingkit/cim.hpp"
#include "isingkit/io.hpp"
#include "isingkit/reduction.hpp"

namespace isingkit {

enum class Engine { Anneal, Cim, Greedy, Oracle };
enum class ReportFormat { Json, Csv };

/// Everything one batch run needs. Exactly one of input_path /
/// generate_spec must be set; integer-program inputs are compiled through
/// the penalty reduction before a heuristic engine sees them.
struct RunConfig {
  Engine engine = Engine::Anneal;
  std::optional<std::string> input_path;
  std::optional<std::string> generate_spec;
  InstanceFormat format = InstanceFormat::BilpJson;
  std::uint64_t seed = 0;
  std::optional<std::string> out_path;    // report file; stdout when unset
  std::optional<std::string> trace_path;  // best-energy series as CSV
  ReportFormat report_format = ReportFormat::Json;

  AnnealParams anneal;                      // seed is overridden by `seed`
  CimParams cim;                            // ditto
  std::optional<double> cim_coupling;       // unset: 0.1/sqrt(num_spins)
  std::size_t oracle_cap = 24;              // spins / box bits
  int max_bits_per_var = 24;                // reduction bit budget
  std::optional<PenaltyWeights> weights;    // unset: choose_weights
};

/// Executes the pipeline parse/generate -> (reduce if integer program) ->
/// engine -> decode -> report. Returns the process exit code: 0 ok,
/// 1 bad configuration, 2 parse error, 3 reduction error, 4 engine failure,
/// 5 I/O error. Every failure also writes a one-line JSON error record to
/// stderr. Output files appear only on success.
int run(const RunConfig& config);

/// Argument-parsing front end around run(). Returns the exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace isingkit
