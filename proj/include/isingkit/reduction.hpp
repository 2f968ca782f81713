#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "isingkit/ising.hpp"

namespace isingkit {

enum class Sense { Equal, LessEqual, GreaterEqual };

struct LinearTerm {
  std::size_t var;
  double coeff;
};

/// One linear row: terms . x  (sense)  rhs.
struct Constraint {
  std::vector<LinearTerm> terms;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
};

enum class VarKind { Binary, Integer };

/// Declared domain of one decision variable. Binary is [0, 1].
struct VarDomain {
  VarKind kind = VarKind::Binary;
  long long lo = 0;
  long long hi = 1;

  static VarDomain binary() { return {VarKind::Binary, 0, 1}; }
  static VarDomain integer(long long lo, long long hi) {
    return {VarKind::Integer, lo, hi};
  }
  long long range() const { return hi - lo; }
};

/// Linear program over binary/bounded-integer variables. Always minimizes;
/// maximization inputs are negated into this form by the parsers.
class BilpInstance {
 public:
  explicit BilpInstance(std::size_t num_vars)
      : objective_(num_vars, 0.0), domains_(num_vars, VarDomain::binary()) {}

  std::size_t num_vars() const { return objective_.size(); }

  void set_objective(std::size_t var, double coeff);
  void set_objective_offset(double value);
  void set_domain(std::size_t var, VarDomain domain);
  /// Validates indices and finiteness; merges duplicate variables and sorts
  /// terms by variable index.
  void add_constraint(Constraint constraint);

  const std::vector<double>& objective() const { return objective_; }
  double objective_offset() const { return objective_offset_; }
  const VarDomain& domain(std::size_t var) const;
  const std::vector<VarDomain>& domains() const { return domains_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  bool in_bounds(const std::vector<long long>& x) const;
  double objective_value(const std::vector<long long>& x) const;
  /// terms . x of row `row`.
  double row_activity(std::size_t row, const std::vector<long long>& x) const;
  /// Amount by which row `row` is violated at x: zero when satisfied, else
  /// |residual| for equalities and the overshoot for inequalities.
  /// Comparisons use an absolute tolerance of 1e-9.
  double row_violation(std::size_t row, const std::vector<long long>& x) const;

 private:
  std::vector<double> objective_;
  double objective_offset_ = 0.0;
  std::vector<VarDomain> domains_;
  std::vector<Constraint> constraints_;
};

/// Relative weight of the constraint penalty against the cost term. The
/// penalty must dominate: constraint_weight >= objective_weight > 0.
struct PenaltyWeights {
  double constraint_weight;
  double objective_weight;
};

/// One QUBO bit with its integer weight in a binary expansion.
struct BitSlice {
  std::size_t bit;
  long long weight;
};

/// Value of one original variable: base + sum of weights of set bits.
struct VariableEncoding {
  long long base = 0;
  std::vector<BitSlice> bits;
};

/// Slack register of one inequality row. Weights are positive for <= rows
/// and negative for >= rows, so that row residual is always
/// rhs - terms . x - sum(weight * bit).
struct SlackEncoding {
  std::size_t constraint = 0;
  std::vector<BitSlice> bits;
};

struct DecodedSolution {
  std::vector<long long> assignment;
  double objective = 0.0;
  bool feasible = false;
  double violation = 0.0;  // sum of squared residuals over violated rows
};

/// A compiled instance: the penalty QUBO, its spin form, and the bookkeeping
/// needed to move assignments back and forth. Every QUBO bit is owned by
/// exactly one entry of variable_bits or slack_bits.
struct ReductionArtifact {
  QuboModel qubo;
  IsingModel ising;
  std::vector<VariableEncoding> variable_bits;  // one per original variable
  std::vector<SlackEncoding> slack_bits;        // one per inequality row
  PenaltyWeights weights{1.0, 1.0};
  /// Constant absorbed into qubo offset so that for every bit assignment z
  ///   qubo.value(z) = constraint_weight * sum_j residual_j(z)^2
  ///                 + objective_weight * objective(x(z)).
  double constant_shift = 0.0;
  BilpInstance instance;  // kept for decoding

  std::size_t num_bits() const { return qubo.num_vars(); }
};

/// Binary instance plus the per-variable encodings it was built with.
struct IntegerExpansion {
  BilpInstance binary;
  std::vector<VariableEncoding> variables;
};

/// Rewrites bounded integers as weighted sums of fresh binary variables with
/// weights 1, 2, 4, ..., residual, covering [lo, hi] exactly and nothing
/// more. Fixed variables ([v, v]) are substituted out as constants.
IntegerExpansion expand_integers_with_map(const BilpInstance& instance,
                                          int max_bits_per_var = 24);
BilpInstance expand_integers(const BilpInstance& instance,
                             int max_bits_per_var = 24);

/// objective_weight = 1 and constraint_weight = 1 + sum_i |c_i| * (hi_i - lo_i),
/// the objective spread of the binary expansion plus one. With integer data,
/// violating any row by the minimum nonzero amount then costs more than any
/// achievable objective gain, so every ground state of the reduction decodes
/// to a feasible optimum whenever the instance is feasible. An all-zero
/// objective yields equal weights 1.
PenaltyWeights choose_weights(const BilpInstance& instance);

/// Compiles the instance into a penalty QUBO: inequalities get slack
/// registers, each row contributes weight * (residual)^2, and the cost term
/// enters as +objective_weight * objective so that minimizing the QUBO
/// minimizes the objective. The spin model is the exact image of the QUBO.
ReductionArtifact reduce(const BilpInstance& instance,
                         std::optional<PenaltyWeights> weights = std::nullopt,
                         int max_bits_per_var = 24);

/// Spin state whose decode returns x. Slack registers take the smallest
/// value that satisfies their row, clamped into the representable range.
/// Total on in-bounds x, even when x violates constraints.
SpinState encode(const ReductionArtifact& artifact,
                 const std::vector<long long>& x);

/// Reconstructs the assignment, its objective, feasibility against every
/// original row, and the total squared violation.
DecodedSolution decode(const ReductionArtifact& artifact,
                       const SpinState& state);

}  // namespace isingkit
