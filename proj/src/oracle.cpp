#include "isingkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isingkit/errors.hpp"

namespace isingkit {

IsingOracleResult enumerate_ising(const IsingModel& model,
                                  std::size_t max_spins) {
  const std::size_t n = model.num_spins();
  if (n > max_spins) {
    throw EngineError("exhaustive search over " + std::to_string(n) +
                      " spins exceeds the cap of " + std::to_string(max_spins) +
                      "; raise the cap or use a heuristic engine");
  }

  IsingOracleResult result;
  if (n == 0) {
    result.best_energy = model.offset();
    result.best_states.push_back(SpinState(0));
    result.states_examined = 1;
    return result;
  }

  SpinState state(n);  // all +1 matches Gray code 0 = all bits clear
  double running = energy(model, state);
  // Incremental energies drift over 2^n flips; anything within this margin
  // of the running minimum is a candidate and gets recomputed exactly.
  const auto margin = [](double best) {
    return 1e-7 * (1.0 + std::abs(best));
  };

  double best = running;
  result.best_states.push_back(state);

  const unsigned long long count = 1ull << n;
  for (unsigned long long k = 1; k < count; ++k) {
    // Gray code: step k flips the lowest set bit of k.
    const std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(k));
    running += flip_delta(model, state, bit);
    state.flip(bit);
    if (running <= best + margin(best)) {
      const double exact = energy(model, state);
      if (exact < best) {
        best = exact;
        result.best_states.clear();
        result.best_states.push_back(state);
      } else if (exact == best) {
        result.best_states.push_back(state);
      }
      running = exact;  // resync so drift cannot accumulate across candidates
    }
  }

  // The margin can admit states that tie only approximately; keep exact ties.
  std::vector<SpinState> exact_ties;
  for (const SpinState& s : result.best_states) {
    if (energy(model, s) == best) exact_ties.push_back(s);
  }
  std::sort(exact_ties.begin(), exact_ties.end());
  exact_ties.erase(std::unique(exact_ties.begin(), exact_ties.end()),
                   exact_ties.end());
  result.best_energy = best;
  result.best_states = std::move(exact_ties);
  result.states_examined = count;
  return result;
}

BilpOracleResult enumerate_bilp(const BilpInstance& instance,
                                std::size_t cap_bits) {
  const std::size_t n = instance.num_vars();
  const unsigned long long max_points =
      cap_bits >= 64 ? std::numeric_limits<unsigned long long>::max()
                     : (1ull << cap_bits);
  unsigned long long points = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned long long width =
        static_cast<unsigned long long>(instance.domain(i).range()) + 1;
    if (points > max_points / width) {
      throw EngineError("exhaustive search over the variable box exceeds 2^" +
                        std::to_string(cap_bits) +
                        " points; shrink the domains or raise the cap");
    }
    points *= width;
  }

  BilpOracleResult result;
  std::vector<long long> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = instance.domain(i).lo;

  while (true) {
    ++result.states_examined;
    bool feasible = true;
    for (std::size_t r = 0; r < instance.constraints().size(); ++r) {
      if (instance.row_violation(r, x) > 0.0) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      const double value = instance.objective_value(x);
      if (!result.feasible || value < result.best_value) {
        result.feasible = true;
        result.best_value = value;
        result.best_assignments.clear();
        result.best_assignments.push_back(x);
      } else if (value == result.best_value) {
        result.best_assignments.push_back(x);
      }
    }

    // Odometer increment in lexicographic order, last variable fastest.
    if (n == 0) return result;
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (x[pos] < instance.domain(pos).hi) {
        ++x[pos];
        break;
      }
      x[pos] = instance.domain(pos).lo;
      if (pos == 0) return result;
    }
  }
}

}  // namespace isingkit
