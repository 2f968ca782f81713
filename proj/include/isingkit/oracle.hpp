#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "isingkit/ising.hpp"
#include "isingkit/reduction.hpp"

namespace isingkit {

/// Exact minimum of a spin model with the complete list of states attaining
/// it, sorted lexicographically (-1 before +1). Every listed state attains
/// best_energy exactly.
struct IsingOracleResult {
  double best_energy = 0.0;
  std::vector<SpinState> best_states;
  std::uint64_t states_examined = 0;
};

/// Exact optimum of an integer program with the complete lexicographic list
/// of optimal assignments. feasible = false (and an empty list) means no
/// in-bounds assignment satisfies every constraint.
struct BilpOracleResult {
  bool feasible = false;
  double best_value = 0.0;
  std::vector<std::vector<long long>> best_assignments;
  std::uint64_t states_examined = 0;
};

/// Enumerates all 2^V spin states in Gray-code order, tracking energies
/// incrementally through single flips and recomputing exactly near the
/// running minimum so the reported ties are exact. Models with more than
/// max_spins spins are refused.
IsingOracleResult enumerate_ising(const IsingModel& model,
                                  std::size_t max_spins = 24);

/// Walks the full box of variable domains in lexicographic order. Instances
/// whose domain product exceeds 2^cap_bits points are refused.
BilpOracleResult enumerate_bilp(const BilpInstance& instance,
                                std::size_t cap_bits = 24);

}  // namespace isingkit
