#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "isingkit/rng.hpp"

namespace isingkit {

using SpinPair = std::pair<std::size_t, std::size_t>;

/// One coupling as seen from a single endpoint.
struct Neighbor {
  std::size_t index;
  double weight;
};

/// Spin assignment, one value of {-1, +1} per spin.
class SpinState {
 public:
  SpinState() = default;

  /// `num_spins` spins, all +1.
  explicit SpinState(std::size_t num_spins)
      : signs_(num_spins, static_cast<std::int8_t>(+1)) {}

  /// Validates that every entry is exactly -1 or +1.
  static SpinState from_signs(std::vector<std::int8_t> signs);

  static SpinState random(std::size_t num_spins, Rng& rng);

  std::size_t size() const { return signs_.size(); }
  std::int8_t operator[](std::size_t i) const { return signs_[i]; }
  void set(std::size_t i, std::int8_t value);
  void flip(std::size_t i) { signs_[i] = static_cast<std::int8_t>(-signs_[i]); }
  const std::vector<std::int8_t>& signs() const { return signs_; }

  bool operator==(const SpinState&) const = default;
  bool operator<(const SpinState& other) const { return signs_ < other.signs_; }

 private:
  std::vector<std::int8_t> signs_;
};

/// Energy model over V spins,
///
///   H(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + offset.
///
/// Each unordered pair {i,j} contributes exactly once. Couplings are stored
/// once per pair with the symmetry left implicit, and are iterated in
/// ascending pair order, so energies do not depend on insertion order.
/// Self-couplings are rejected. Immutable once construction is done; all
/// operations below are pure.
class IsingModel {
 public:
  explicit IsingModel(std::size_t num_spins)
      : fields_(num_spins, 0.0), adjacency_(num_spins) {}

  std::size_t num_spins() const { return fields_.size(); }

  /// Adds `value` to the coupling on the unordered pair {i, j}, i != j.
  void add_coupling(std::size_t i, std::size_t j, double value);
  void set_field(std::size_t i, double value);
  void add_field(std::size_t i, double value);
  void set_offset(double value) { offset_ = value; }

  bool has_coupling(std::size_t i, std::size_t j) const;
  /// Coupling on {i, j}, or 0 when the pair is absent.
  double coupling(std::size_t i, std::size_t j) const;
  double field(std::size_t i) const;
  double offset() const { return offset_; }

  /// Pair -> value, keyed (min, max), ascending.
  const std::map<SpinPair, double>& couplings() const { return couplings_; }
  const std::vector<double>& fields() const { return fields_; }
  /// Neighbors of spin i, sorted by index.
  const std::vector<Neighbor>& neighbors(std::size_t i) const;

 private:
  std::vector<double> fields_;
  std::map<SpinPair, double> couplings_;
  std::vector<std::vector<Neighbor>> adjacency_;
  double offset_ = 0.0;
};

/// Quadratic form over binary variables,
///
///   Q(x) = sum_{i<=j} Q_ij x_i x_j + offset,   x in {0,1}^N.
///
/// Diagonal entries are the linear coefficients.
class QuboModel {
 public:
  explicit QuboModel(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }

  /// Adds `value` to the term on (i, j); (i, j) and (j, i) are the same term.
  void add_term(std::size_t i, std::size_t j, double value);
  void set_offset(double value) { offset_ = value; }

  bool has_term(std::size_t i, std::size_t j) const;
  double term(std::size_t i, std::size_t j) const;
  double offset() const { return offset_; }
  const std::map<SpinPair, double>& terms() const { return terms_; }

  /// Objective value at a 0/1 assignment.
  double value(const std::vector<std::uint8_t>& bits) const;

 private:
  std::size_t num_vars_;
  std::map<SpinPair, double> terms_;
  double offset_ = 0.0;
};

/// Planar-rotor relaxation with the same coupling structure,
///
///   H(theta) = -sum_{i<j} J_ij cos(theta_i - theta_j)
///              - sum_i h_i cos(theta_i).
class XyModel {
 public:
  explicit XyModel(std::size_t num_rotors) : graph_(num_rotors) {}
  /// Rotor model with the couplings and fields of an existing spin model.
  explicit XyModel(IsingModel graph) : graph_(std::move(graph)) {}

  std::size_t num_rotors() const { return graph_.num_spins(); }
  void add_coupling(std::size_t i, std::size_t j, double value) {
    graph_.add_coupling(i, j, value);
  }
  void set_field(std::size_t i, double value) { graph_.set_field(i, value); }
  const IsingModel& graph() const { return graph_; }

 private:
  IsingModel graph_;
};

/// H(s) as defined on IsingModel; each pair counted once.
double energy(const IsingModel& model, const SpinState& state);

/// Effective field at spin i: sum_j J_ij s_j + h_i. Equals -dH/ds_i.
double local_field(const IsingModel& model, const SpinState& state,
                   std::size_t i);

/// Energy change from flipping spin i: H(flipped) - H(s) = 2 s_i * local_field.
double flip_delta(const IsingModel& model, const SpinState& state,
                  std::size_t i);

/// Spin model with identical objective values under x_i = (1 + s_i) / 2;
/// the constant part of the substitution lands in the offset.
IsingModel qubo_to_ising(const QuboModel& qubo);

/// Rotor energy at the given angles (radians). Angles restricted to {0, pi}
/// reproduce the Ising energy of the corresponding +-1 state.
double xy_energy(const XyModel& model, const std::vector<double>& angles);

}  // namespace isingkit
