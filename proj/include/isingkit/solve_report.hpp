#pragma once

#include <cstdint>
#include <vector>

#include "isingkit/ising.hpp"

namespace isingkit {

/// Outcome of one engine run. energy_trace holds the best energy seen up to
/// each sweep (annealer) or integration step (oscillator network), so it is
/// non-increasing and its last entry equals best_energy.
struct SolveReport {
  SpinState best_state{0};
  double best_energy = 0.0;
  std::vector<double> energy_trace;
  std::uint64_t accepted_flips = 0;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;
};

}  // namespace isingkit
