#include "isingkit/ising.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isingkit {

namespace {

void check_spin_index(std::size_t i, std::size_t num_spins) {
  if (i >= num_spins) {
    throw std::out_of_range("spin index " + std::to_string(i) +
                            " out of range for " + std::to_string(num_spins) +
                            " spins");
  }
}

void check_same_size(std::size_t model_size, std::size_t state_size) {
  if (model_size != state_size) {
    throw std::invalid_argument(
        "state has " + std::to_string(state_size) + " spins but model has " +
        std::to_string(model_size));
  }
}

// Insert-or-accumulate into a sorted adjacency row.
void adjacency_add(std::vector<Neighbor>& row, std::size_t index,
                   double value) {
  auto it = std::lower_bound(
      row.begin(), row.end(), index,
      [](const Neighbor& n, std::size_t idx) { return n.index < idx; });
  if (it != row.end() && it->index == index) {
    it->weight += value;
  } else {
    row.insert(it, Neighbor{index, value});
  }
}

}  // namespace

SpinState SpinState::from_signs(std::vector<std::int8_t> signs) {
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) {
      throw std::invalid_argument("spin " + std::to_string(i) + " is " +
                                  std::to_string(signs[i]) +
                                  "; spins must be -1 or +1");
    }
  }
  SpinState state;
  state.signs_ = std::move(signs);
  return state;
}

SpinState SpinState::random(std::size_t num_spins, Rng& rng) {
  SpinState state(num_spins);
  for (std::size_t i = 0; i < num_spins; ++i) {
    state.signs_[i] = rng.bernoulli(0.5) ? std::int8_t{1} : std::int8_t{-1};
  }
  return state;
}

void SpinState::set(std::size_t i, std::int8_t value) {
  if (value != 1 && value != -1) {
    throw std::invalid_argument("spins must be -1 or +1");
  }
  signs_[i] = value;
}

void IsingModel::add_coupling(std::size_t i, std::size_t j, double value) {
  check_spin_index(i, num_spins());
  check_spin_index(j, num_spins());
  if (i == j) {
    throw std::invalid_argument("self-coupling on spin " + std::to_string(i) +
                                " is not allowed");
  }
  const SpinPair key{std::min(i, j), std::max(i, j)};
  couplings_[key] += value;
  adjacency_add(adjacency_[i], j, value);
  adjacency_add(adjacency_[j], i, value);
}

void IsingModel::set_field(std::size_t i, double value) {
  check_spin_index(i, num_spins());
  fields_[i] = value;
}

void IsingModel::add_field(std::size_t i, double value) {
  check_spin_index(i, num_spins());
  fields_[i] += value;
}

bool IsingModel::has_coupling(std::size_t i, std::size_t j) const {
  return couplings_.count({std::min(i, j), std::max(i, j)}) != 0;
}

double IsingModel::coupling(std::size_t i, std::size_t j) const {
  auto it = couplings_.find({std::min(i, j), std::max(i, j)});
  return it == couplings_.end() ? 0.0 : it->second;
}

double IsingModel::field(std::size_t i) const {
  check_spin_index(i, num_spins());
  return fields_[i];
}

const std::vector<Neighbor>& IsingModel::neighbors(std::size_t i) const {
  check_spin_index(i, num_spins());
  return adjacency_[i];
}

void QuboModel::add_term(std::size_t i, std::size_t j, double value) {
  if (i >= num_vars_ || j >= num_vars_) {
    throw std::out_of_range("term index out of range for " +
                            std::to_string(num_vars_) + " variables");
  }
  terms_[{std::min(i, j), std::max(i, j)}] += value;
}

bool QuboModel::has_term(std::size_t i, std::size_t j) const {
  return terms_.count({std::min(i, j), std::max(i, j)}) != 0;
}

double QuboModel::term(std::size_t i, std::size_t j) const {
  auto it = terms_.find({std::min(i, j), std::max(i, j)});
  return it == terms_.end() ? 0.0 : it->second;
}

double QuboModel::value(const std::vector<std::uint8_t>& bits) const {
  check_same_size(num_vars_, bits.size());
  double total = offset_;
  for (const auto& [key, coeff] : terms_) {
    if (bits[key.first] && bits[key.second]) total += coeff;
  }
  return total;
}

double energy(const IsingModel& model, const SpinState& state) {
  check_same_size(model.num_spins(), state.size());
  double pair_sum = 0.0;
  for (const auto& [key, value] : model.couplings()) {
    pair_sum += value * state[key.first] * state[key.second];
  }
  double field_sum = 0.0;
  const auto& fields = model.fields();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    field_sum += fields[i] * state[i];
  }
  return -pair_sum - field_sum + model.offset();
}

double local_field(const IsingModel& model, const SpinState& state,
                   std::size_t i) {
  check_same_size(model.num_spins(), state.size());
  check_spin_index(i, model.num_spins());
  double acc = 0.0;
  for (const Neighbor& n : model.neighbors(i)) {
    acc += n.weight * state[n.index];
  }
  return acc + model.field(i);
}

double flip_delta(const IsingModel& model, const SpinState& state,
                  std::size_t i) {
  return 2.0 * state[i] * local_field(model, state, i);
}

IsingModel qubo_to_ising(const QuboModel& qubo) {
  IsingModel model(qubo.num_vars());
  double offset = qubo.offset();
  for (const auto& [key, value] : qubo.terms()) {
    const auto [i, j] = key;
    if (i == j) {
      // Q x_i = (Q/2) s_i + Q/2
      model.add_field(i, -value / 2.0);
      offset += value / 2.0;
    } else {
      // Q x_i x_j = (Q/4)(1 + s_i + s_j + s_i s_j)
      model.add_coupling(i, j, -value / 4.0);
      model.add_field(i, -value / 4.0);
      model.add_field(j, -value / 4.0);
      offset += value / 4.0;
    }
  }
  model.set_offset(offset);
  return model;
}

double xy_energy(const XyModel& model, const std::vector<double>& angles) {
  check_same_size(model.num_rotors(), angles.size());
  const IsingModel& graph = model.graph();
  double pair_sum = 0.0;
  for (const auto& [key, value] : graph.couplings()) {
    pair_sum += value * std::cos(angles[key.first] - angles[key.second]);
  }
  double field_sum = 0.0;
  const auto& fields = graph.fields();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    field_sum += fields[i] * std::cos(angles[i]);
  }
  return -pair_sum - field_sum;
}

}  // namespace isingkit
