#include "isingkit/cim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "isingkit/errors.hpp"

namespace isingkit {

namespace {

void validate(const CimParams& params, std::size_t num_spins) {
  if (!(params.pump_end > params.pump_start) ||
      !std::isfinite(params.pump_start) || !std::isfinite(params.pump_end)) {
    throw std::invalid_argument("pump ramp requires pump_end > pump_start");
  }
  if (params.ramp_steps < 1) {
    throw std::invalid_argument("ramp needs at least one step");
  }
  if (!(params.dt > 0.0) || !std::isfinite(params.dt)) {
    throw std::invalid_argument("dt must be positive and finite");
  }
  if (!(params.coupling_strength >= 0.0) ||
      !std::isfinite(params.coupling_strength)) {
    throw std::invalid_argument("coupling_strength must be non-negative");
  }
  if (!(params.noise_amplitude >= 0.0) ||
      !std::isfinite(params.noise_amplitude)) {
    throw std::invalid_argument("noise_amplitude must be non-negative");
  }
  if (!(params.saturation > 0.0) || !std::isfinite(params.saturation)) {
    throw std::invalid_argument("saturation must be positive");
  }
  (void)num_spins;
}

}  // namespace

CimParams CimParams::defaults_for(std::size_t num_spins) {
  CimParams params;
  if (num_spins > 0) {
    params.coupling_strength = 0.1 / std::sqrt(static_cast<double>(num_spins));
  }
  return params;
}

double pump_at(const CimParams& params, std::size_t step) {
  if (step >= params.ramp_steps) {
    throw std::out_of_range("step " + std::to_string(step) +
                            " outside ramp of " +
                            std::to_string(params.ramp_steps) + " steps");
  }
  if (params.ramp_steps == 1) return params.pump_start;
  const double frac = static_cast<double>(step) /
                      static_cast<double>(params.ramp_steps - 1);
  return params.pump_start + (params.pump_end - params.pump_start) * frac;
}

SpinState readout(const AmplitudeState& amplitudes) {
  SpinState state(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    state.set(i, amplitudes[i] >= 0.0 ? +1 : -1);
  }
  return state;
}

AmplitudeState cim_initial_amplitudes(std::size_t num_spins, Rng& rng) {
  AmplitudeState amplitudes(num_spins);
  for (double& a : amplitudes) a = 1e-3 * rng.normal();
  return amplitudes;
}

void cim_step(const IsingModel& model, AmplitudeState& amplitudes, double pump,
              const CimParams& params, Rng& rng) {
  const std::size_t n = amplitudes.size();
  const double root_dt = std::sqrt(params.dt);
  AmplitudeState next(n);
  for (std::size_t i = 0; i < n; ++i) {
    double injection = model.field(i);
    for (const Neighbor& nb : model.neighbors(i)) {
      injection += nb.weight * amplitudes[nb.index];
    }
    const double a = amplitudes[i];
    const double drift =
        (pump - 1.0 - a * a) * a + params.coupling_strength * injection;
    double value = a + drift * params.dt;
    if (params.noise_amplitude > 0.0) {
      value += params.noise_amplitude * root_dt * rng.normal();
    }
    next[i] = std::isfinite(value)
                  ? std::clamp(value, -params.saturation, params.saturation)
                  : value;
  }
  amplitudes = std::move(next);
}

SolveReport cim_solve(const IsingModel& model, const CimParams& params,
                      const StepObserver& observer) {
  validate(params, model.num_spins());
  const auto started = std::chrono::steady_clock::now();

  Rng rng(stream_seed(params.seed, 0));
  AmplitudeState amplitudes = cim_initial_amplitudes(model.num_spins(), rng);

  SolveReport report;
  report.seed = params.seed;
  report.energy_trace.reserve(params.ramp_steps);
  double best = std::numeric_limits<double>::infinity();

  for (std::size_t step = 0; step < params.ramp_steps; ++step) {
    cim_step(model, amplitudes, pump_at(params, step), params, rng);
    for (const double a : amplitudes) {
      if (!std::isfinite(a)) {
        throw DivergenceError("amplitude is not finite; use a smaller dt",
                              step);
      }
    }
    SpinState spins = readout(amplitudes);
    const double scored = energy(model, spins);
    if (scored < best) {
      best = scored;
      report.best_state = std::move(spins);
      report.best_energy = scored;
      if (observer) observer(step, amplitudes, report.best_state, scored);
    } else if (observer) {
      observer(step, amplitudes, spins, scored);
    }
    report.energy_trace.push_back(best);
  }

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

}  // namespace isingkit
