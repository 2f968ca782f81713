#include "isingkit/annealer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "isingkit/errors.hpp"
#include "isingkit/rng.hpp"

namespace isingkit {

namespace {

void validate(const AnnealParams& params) {
  const AnnealSchedule& s = params.schedule;
  if (!(s.t_end > 0.0) || !(s.t_start >= s.t_end) || !std::isfinite(s.t_start)) {
    throw std::invalid_argument(
        "schedule requires t_start >= t_end > 0 and finite");
  }
  if (s.sweeps < 1) {
    throw std::invalid_argument("schedule requires at least one sweep");
  }
  if (!(s.k_boltzmann > 0.0) || !std::isfinite(s.k_boltzmann)) {
    throw std::invalid_argument("k_boltzmann must be positive and finite");
  }
  const NoiseConfig& n = params.noise;
  if (!(n.p_input_invert >= 0.0 && n.p_input_invert <= 1.0) ||
      !(n.p_output_invert >= 0.0 && n.p_output_invert <= 1.0)) {
    throw std::invalid_argument("inversion probabilities must lie in [0, 1]");
  }
  if (params.restarts < 1) {
    throw std::invalid_argument("at least one restart chain is required");
  }
}

struct ChainResult {
  SpinState best{0};
  double best_energy = 0.0;
  std::vector<double> trace;
  std::uint64_t accepted_flips = 0;
};

ChainResult run_chain(const IsingModel& model, const AnnealParams& params,
                      std::size_t chain, const SweepObserver& observer) {
  const std::size_t n = model.num_spins();
  const double p_in = params.noise.p_input_invert;
  const double p_out = params.noise.p_output_invert;

  Rng rng(stream_seed(params.seed, chain));
  SpinState state = SpinState::random(n, rng);
  double running = energy(model, state);

  ChainResult result;
  result.best = state;
  result.best_energy = running;
  result.trace.reserve(params.schedule.sweeps);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t sweep = 0; sweep < params.schedule.sweeps; ++sweep) {
    const double kt = params.schedule.k_boltzmann *
                      temperature_at(params.schedule, sweep);
    if (params.sweep_order == SweepOrder::RandomPermutation) {
      rng.shuffle(order);
    }
    for (const std::size_t i : order) {
      // Interface 1: each neighbor read is independently negated with
      // probability p_input_invert. The decision sees the corrupted field;
      // energy bookkeeping below always uses the true one.
      double field;
      if (p_in > 0.0) {
        field = model.field(i);
        for (const Neighbor& nb : model.neighbors(i)) {
          double spin = static_cast<double>(state[nb.index]);
          if (rng.bernoulli(p_in)) spin = -spin;
          field += nb.weight * spin;
        }
      } else {
        field = local_field(model, state, i);
      }

      const int current = state[i];
      int updated = current;
      switch (params.update_rule) {
        case UpdateRule::Gibbs:
          updated = gibbs_chooses_up(field, kt, rng.uniform01()) ? +1 : -1;
          break;
        case UpdateRule::Metropolis:
          if (metropolis_accepts(2.0 * current * field, kt, rng.uniform01())) {
            updated = -current;
          }
          break;
        case UpdateRule::Greedy:
          if (2.0 * current * field < 0.0) updated = -current;
          break;
      }

      // Interface 2: the written value is negated with probability
      // p_output_invert, regardless of what the rule decided.
      if (p_out > 0.0 && rng.bernoulli(p_out)) updated = -updated;

      if (updated != current) {
        const double true_delta =
            p_in > 0.0 ? flip_delta(model, state, i) : 2.0 * current * field;
        state.flip(i);
        running += true_delta;
        ++result.accepted_flips;
      }
    }

    if (!std::isfinite(running)) {
      throw DivergenceError("chain energy is not finite", sweep);
    }
    if (running < result.best_energy) {
      // Re-evaluate exactly so drift in the running sum can never leak into
      // the reported energy or break trace monotonicity.
      const double exact = energy(model, state);
      if (exact < result.best_energy) {
        result.best_energy = exact;
        result.best = state;
      }
      running = exact;
    }
    result.trace.push_back(result.best_energy);
    if (observer) observer(chain, sweep, state, running);
  }
  return result;
}

}  // namespace

double temperature_at(const AnnealSchedule& schedule, std::size_t sweep) {
  if (sweep >= schedule.sweeps) {
    throw std::out_of_range("sweep " + std::to_string(sweep) +
                            " outside schedule of " +
                            std::to_string(schedule.sweeps) + " sweeps");
  }
  if (schedule.sweeps == 1) return schedule.t_start;
  const double frac = static_cast<double>(sweep) /
                      static_cast<double>(schedule.sweeps - 1);
  switch (schedule.kind) {
    case ScheduleKind::Geometric:
      return schedule.t_start *
             std::pow(schedule.t_end / schedule.t_start, frac);
    case ScheduleKind::Linear:
      return schedule.t_start + (schedule.t_end - schedule.t_start) * frac;
  }
  return schedule.t_start;
}

bool metropolis_accepts(double delta, double temperature, double u) {
  if (delta <= 0.0) return true;
  return u < std::exp(-delta / temperature);
}

bool gibbs_chooses_up(double local_field, double temperature, double u) {
  return u < 1.0 / (1.0 + std::exp(-2.0 * local_field / temperature));
}

SolveReport anneal(const IsingModel& model, const AnnealParams& params,
                   const SweepObserver& observer) {
  validate(params);
  const auto started = std::chrono::steady_clock::now();

  SolveReport report;
  report.seed = params.seed;
  report.energy_trace.assign(params.schedule.sweeps,
                             std::numeric_limits<double>::infinity());
  double best = std::numeric_limits<double>::infinity();

  for (std::size_t chain = 0; chain < params.restarts; ++chain) {
    ChainResult run = run_chain(model, params, chain, observer);
    report.accepted_flips += run.accepted_flips;
    for (std::size_t s = 0; s < run.trace.size(); ++s) {
      report.energy_trace[s] = std::min(report.energy_trace[s], run.trace[s]);
    }
    if (run.best_energy < best) {  // strict: ties keep the lowest chain
      best = run.best_energy;
      report.best_state = std::move(run.best);
      report.best_energy = run.best_energy;
    }
  }

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

SolveReport greedy_descent(const IsingModel& model, const SpinState& start) {
  const auto started = std::chrono::steady_clock::now();
  const std::size_t n = model.num_spins();
  if (start.size() != n) {
    throw std::invalid_argument("start state has " +
                                std::to_string(start.size()) +
                                " spins but model has " + std::to_string(n));
  }

  SolveReport report;
  report.best_state = start;
  double current = energy(model, report.best_state);
  report.energy_trace.push_back(current);

  while (true) {
    double best_delta = 0.0;
    std::size_t best_index = n;
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = flip_delta(model, report.best_state, i);
      if (delta < best_delta) {  // strict: first index wins ties
        best_delta = delta;
        best_index = i;
      }
    }
    if (best_index == n) break;
    report.best_state.flip(best_index);
    current += best_delta;
    ++report.accepted_flips;
    report.energy_trace.push_back(current);
  }

  report.best_energy = energy(model, report.best_state);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

}  // namespace isingkit
