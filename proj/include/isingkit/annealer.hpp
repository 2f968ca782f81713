#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "isingkit/ising.hpp"
#include "isingkit/solve_report.hpp"

namespace isingkit {

enum class ScheduleKind { Geometric, Linear };

/// Cooling plan. Temperatures interpolate t_start down to t_end over
/// `sweeps` passes; t_start == t_end gives a constant-temperature chain.
struct AnnealSchedule {
  double t_start = 2.0;
  double t_end = 0.05;
  std::size_t sweeps = 500;
  ScheduleKind kind = ScheduleKind::Geometric;
  double k_boltzmann = 1.0;  // acceptance uses kT; kept explicit, unit choice
};

/// Stochastic inversion interfaces. p_input_invert negates each neighbor
/// spin read while forming the local field; p_output_invert negates the
/// written spin after the update rule has decided. Both default off, which
/// is plain simulated annealing.
struct NoiseConfig {
  double p_input_invert = 0.0;
  double p_output_invert = 0.0;
};

enum class UpdateRule { Metropolis, Gibbs, Greedy };
enum class SweepOrder { Sequential, RandomPermutation };

struct AnnealParams {
  AnnealSchedule schedule;
  NoiseConfig noise;
  std::size_t restarts = 50;
  std::uint64_t seed = 0;
  UpdateRule update_rule = UpdateRule::Gibbs;
  SweepOrder sweep_order = SweepOrder::Sequential;
};

/// Temperature of sweep `sweep`, in [0, sweeps). Geometric schedules follow
/// t_start * (t_end/t_start)^(sweep/(sweeps-1)); linear schedules
/// interpolate affinely. A single-sweep schedule stays at t_start.
double temperature_at(const AnnealSchedule& schedule, std::size_t sweep);

/// Whether a proposed flip with energy change `delta` is accepted at the
/// given temperature, i.e. u < min(1, exp(-delta / temperature)).
bool metropolis_accepts(double delta, double temperature, double u);

/// Whether the heat-bath update sets the spin up, i.e.
/// u < 1 / (1 + exp(-2 * local_field / temperature)).
bool gibbs_chooses_up(double local_field, double temperature, double u);

/// Called after every completed sweep of every chain with the chain's
/// current state and exact running energy. For test instrumentation and
/// sampling; ignored when empty.
using SweepObserver = std::function<void(
    std::size_t chain, std::size_t sweep, const SpinState& state,
    double energy)>;

/// Runs `restarts` independent chains, each from a fresh random state, and
/// returns the best result across chains (ties keep the lowest chain
/// index). Each chain derives its own RNG stream from (seed, chain), so the
/// outcome is reproducible and independent of how chains would be
/// scheduled. energy_trace is the across-chain minimum of the per-sweep
/// best-so-far energies. Throws DivergenceError if a chain's energy leaves
/// the finite range.
SolveReport anneal(const IsingModel& model, const AnnealParams& params,
                   const SweepObserver& observer = {});

/// Repeatedly flips the spin with the most negative flip_delta (lowest
/// index wins ties) until no flip lowers the energy. The endpoint is a
/// 1-flip local minimum: every flip_delta is >= 0.
SolveReport greedy_descent(const IsingModel& model, const SpinState& start);

}  // namespace isingkit
