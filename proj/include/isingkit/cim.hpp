#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "isingkit/ising.hpp"
#include "isingkit/rng.hpp"
#include "isingkit/solve_report.hpp"

namespace isingkit {

/// Oscillator-network integration parameters. Each step advances every
/// amplitude by
///   da_i = [(p - 1 - a_i^2) a_i + eps (sum_j J_ij a_j + h_i)] dt
///        + noise_amplitude sqrt(dt) xi_i
/// with the pump p ramped linearly from pump_start to pump_end. Stability
/// note: the linearized growth rate is (p - 1) plus eps times the coupling
/// spectral radius, so dt must keep |(p - 1) + eps * rho| * dt well below 1;
/// the defaults (dt = 0.01, |p| <= 1.5, eps = 0.1/sqrt(V)) do at desk scale.
struct CimParams {
  double pump_start = -0.5;
  double pump_end = 1.5;
  std::size_t ramp_steps = 2000;
  double dt = 0.01;
  double coupling_strength = 0.1;  // injection gain; 0 decouples oscillators
  double noise_amplitude = 0.01;
  std::uint64_t seed = 0;
  double saturation = 10.0;  // hard amplitude clamp

  /// Defaults with the injection gain scaled to 0.1/sqrt(num_spins) so the
  /// coupling term stays comparable to the gain term as models grow.
  static CimParams defaults_for(std::size_t num_spins);
};

/// Oscillator amplitudes, one per spin.
using AmplitudeState = std::vector<double>;

/// Pump value at integration step `step`, in [0, ramp_steps): linear
/// interpolation from pump_start to pump_end. A single-step ramp stays at
/// pump_start.
double pump_at(const CimParams& params, std::size_t step);

/// Sign readout: +1 for a_i >= 0, else -1 (zero reads as up).
SpinState readout(const AmplitudeState& amplitudes);

/// Vacuum-scale initial conditions: i.i.d. normal, standard deviation 1e-3.
AmplitudeState cim_initial_amplitudes(std::size_t num_spins, Rng& rng);

/// One synchronous Euler-Maruyama step at pump value `pump`. Finite results
/// are clamped to the saturation band; non-finite ones are left in place for
/// the caller to detect.
void cim_step(const IsingModel& model, AmplitudeState& amplitudes, double pump,
              const CimParams& params, Rng& rng);

/// Called after every integration step with the amplitudes, their readout,
/// and the readout's energy. For test instrumentation; ignored when empty.
using StepObserver = std::function<void(
    std::size_t step, const AmplitudeState& amplitudes, const SpinState& spins,
    double energy)>;

/// Integrates the network over the full pump ramp, scoring the sign readout
/// after every step, and returns the best-scored state. Deterministic given
/// params.seed. Throws DivergenceError naming the step if an amplitude
/// leaves the finite range (the fix is a smaller dt).
SolveReport cim_solve(const IsingModel& model, const CimParams& params,
                      const StepObserver& observer = {});

}  // namespace isingkit
