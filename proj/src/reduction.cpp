#include "isingkit/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isingkit/errors.hpp"

namespace isingkit {

namespace {

constexpr double kRowTolerance = 1e-9;

void check_var_index(std::size_t var, std::size_t num_vars) {
  if (var >= num_vars) {
    throw std::invalid_argument("variable index " + std::to_string(var) +
                                " out of range for " +
                                std::to_string(num_vars) + " variables");
  }
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

/// Weights 1, 2, 4, ... with a final residual so subset sums cover
/// [0, range] exactly.
std::vector<long long> expansion_weights(long long range) {
  std::vector<long long> weights;
  long long remaining = range;
  long long next = 1;
  while (remaining > 0) {
    long long w = std::min(next, remaining);
    weights.push_back(w);
    remaining -= w;
    if (next <= (1LL << 61)) next <<= 1;
  }
  return weights;
}

/// Marks bits realizing `value` as a subset sum of the slice weight
/// magnitudes (slack weights carry the row sense as their sign). The
/// magnitudes form a complete sequence, so greedy from the largest lands
/// exactly for any value in [0, sum of magnitudes].
void mark_bits(long long value, const std::vector<BitSlice>& slices,
               std::vector<std::uint8_t>& bits) {
  long long remaining = value;
  for (auto it = slices.rbegin(); it != slices.rend(); ++it) {
    const long long magnitude = it->weight < 0 ? -it->weight : it->weight;
    if (magnitude <= remaining) {
      bits[it->bit] = 1;
      remaining -= magnitude;
    }
  }
  if (remaining != 0) {
    throw std::logic_error("bit decomposition failed for value " +
                           std::to_string(value));
  }
}

long long slice_sum(const std::vector<BitSlice>& slices) {
  long long total = 0;
  for (const auto& s : slices) total += s.weight < 0 ? -s.weight : s.weight;
  return total;
}

}  // namespace

void BilpInstance::set_objective(std::size_t var, double coeff) {
  check_var_index(var, num_vars());
  check_finite(coeff, "objective coefficient");
  objective_[var] = coeff;
}

void BilpInstance::set_objective_offset(double value) {
  check_finite(value, "objective offset");
  objective_offset_ = value;
}

void BilpInstance::set_domain(std::size_t var, VarDomain domain) {
  check_var_index(var, num_vars());
  if (domain.lo > domain.hi) {
    throw std::invalid_argument("empty domain [" + std::to_string(domain.lo) +
                                ", " + std::to_string(domain.hi) +
                                "] for variable " + std::to_string(var));
  }
  if (domain.kind == VarKind::Binary && (domain.lo != 0 || domain.hi != 1)) {
    throw std::invalid_argument("binary variable " + std::to_string(var) +
                                " must have bounds [0, 1]");
  }
  domains_[var] = domain;
}

void BilpInstance::add_constraint(Constraint constraint) {
  check_finite(constraint.rhs, "constraint rhs");
  for (const auto& term : constraint.terms) {
    check_var_index(term.var, num_vars());
    check_finite(term.coeff, "constraint coefficient");
  }
  std::sort(constraint.terms.begin(), constraint.terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) {
              return a.var < b.var;
            });
  std::vector<LinearTerm> merged;
  for (const auto& term : constraint.terms) {
    if (!merged.empty() && merged.back().var == term.var) {
      merged.back().coeff += term.coeff;
    } else {
      merged.push_back(term);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const LinearTerm& t) { return t.coeff == 0.0; }),
               merged.end());
  constraint.terms = std::move(merged);
  constraints_.push_back(std::move(constraint));
}

const VarDomain& BilpInstance::domain(std::size_t var) const {
  check_var_index(var, num_vars());
  return domains_[var];
}

bool BilpInstance::in_bounds(const std::vector<long long>& x) const {
  if (x.size() != num_vars()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < domains_[i].lo || x[i] > domains_[i].hi) return false;
  }
  return true;
}

double BilpInstance::objective_value(const std::vector<long long>& x) const {
  if (x.size() != num_vars()) {
    throw std::invalid_argument("assignment has " + std::to_string(x.size()) +
                                " entries but instance has " +
                                std::to_string(num_vars()) + " variables");
  }
  double value = objective_offset_;
  for (std::size_t i = 0; i < x.size(); ++i) {
    value += objective_[i] * static_cast<double>(x[i]);
  }
  return value;
}

double BilpInstance::row_activity(std::size_t row,
                                  const std::vector<long long>& x) const {
  if (row >= constraints_.size()) {
    throw std::invalid_argument("constraint index " + std::to_string(row) +
                                " out of range");
  }
  if (x.size() != num_vars()) {
    throw std::invalid_argument("assignment has " + std::to_string(x.size()) +
                                " entries but instance has " +
                                std::to_string(num_vars()) + " variables");
  }
  double activity = 0.0;
  for (const auto& term : constraints_[row].terms) {
    activity += term.coeff * static_cast<double>(x[term.var]);
  }
  return activity;
}

double BilpInstance::row_violation(std::size_t row,
                                   const std::vector<long long>& x) const {
  const double activity = row_activity(row, x);
  const Constraint& c = constraints_[row];
  switch (c.sense) {
    case Sense::Equal: {
      const double gap = std::abs(activity - c.rhs);
      return gap <= kRowTolerance ? 0.0 : gap;
    }
    case Sense::LessEqual: {
      const double over = activity - c.rhs;
      return over <= kRowTolerance ? 0.0 : over;
    }
    case Sense::GreaterEqual: {
      const double under = c.rhs - activity;
      return under <= kRowTolerance ? 0.0 : under;
    }
  }
  return 0.0;
}

IntegerExpansion expand_integers_with_map(const BilpInstance& instance,
                                          int max_bits_per_var) {
  if (max_bits_per_var < 1) {
    throw std::invalid_argument("max_bits_per_var must be at least 1");
  }
  const std::size_t n = instance.num_vars();
  std::vector<VariableEncoding> encodings(n);
  std::size_t next_bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const VarDomain& dom = instance.domain(i);
    encodings[i].base = dom.lo;
    const std::vector<long long> weights = expansion_weights(dom.range());
    if (weights.size() > static_cast<std::size_t>(max_bits_per_var)) {
      throw ReductionError(
          "variable " + std::to_string(i) + " with range [" +
          std::to_string(dom.lo) + ", " + std::to_string(dom.hi) + "] needs " +
          std::to_string(weights.size()) + " bits, limit is " +
          std::to_string(max_bits_per_var));
    }
    for (long long w : weights) {
      encodings[i].bits.push_back({next_bit++, w});
    }
  }

  BilpInstance binary(next_bit);
  double offset = instance.objective_offset();
  for (std::size_t i = 0; i < n; ++i) {
    const double coeff = instance.objective()[i];
    offset += coeff * static_cast<double>(encodings[i].base);
    if (coeff == 0.0) continue;
    for (const BitSlice& slice : encodings[i].bits) {
      binary.set_objective(slice.bit, coeff * static_cast<double>(slice.weight));
    }
  }
  binary.set_objective_offset(offset);

  for (const Constraint& row : instance.constraints()) {
    Constraint expanded;
    expanded.sense = row.sense;
    expanded.rhs = row.rhs;
    for (const LinearTerm& term : row.terms) {
      const VariableEncoding& enc = encodings[term.var];
      expanded.rhs -= term.coeff * static_cast<double>(enc.base);
      for (const BitSlice& slice : enc.bits) {
        expanded.terms.push_back(
            {slice.bit, term.coeff * static_cast<double>(slice.weight)});
      }
    }
    binary.add_constraint(std::move(expanded));
  }
  return {std::move(binary), std::move(encodings)};
}

BilpInstance expand_integers(const BilpInstance& instance,
                             int max_bits_per_var) {
  return expand_integers_with_map(instance, max_bits_per_var).binary;
}

PenaltyWeights choose_weights(const BilpInstance& instance) {
  double spread = 0.0;
  for (std::size_t i = 0; i < instance.num_vars(); ++i) {
    spread += std::abs(instance.objective()[i]) *
              static_cast<double>(instance.domain(i).range());
  }
  return {1.0 + spread, 1.0};
}

ReductionArtifact reduce(const BilpInstance& instance,
                         std::optional<PenaltyWeights> weights,
                         int max_bits_per_var) {
  const PenaltyWeights w = weights ? *weights : choose_weights(instance);
  if (!std::isfinite(w.constraint_weight) || !std::isfinite(w.objective_weight)) {
    throw ReductionError("penalty weights must be finite");
  }
  if (!(w.constraint_weight >= w.objective_weight &&
        w.objective_weight > 0.0)) {
    throw ReductionError(
        "penalty weights must satisfy constraint_weight >= objective_weight > 0");
  }

  IntegerExpansion expansion =
      expand_integers_with_map(instance, max_bits_per_var);
  const BilpInstance& binary = expansion.binary;
  const std::size_t num_var_bits = binary.num_vars();

  // Size a slack register per inequality row. The magnitudes cover every
  // integer slack value reachable from a satisfying assignment; the sign
  // carries the row sense per the SlackEncoding contract.
  std::vector<SlackEncoding> slack_registers;
  std::size_t next_bit = num_var_bits;
  const long long max_slack = (1LL << std::min(max_bits_per_var, 62)) - 1;
  for (std::size_t r = 0; r < binary.constraints().size(); ++r) {
    const Constraint& row = binary.constraints()[r];
    if (row.sense == Sense::Equal) continue;
    double row_min = 0.0;
    double row_max = 0.0;
    for (const auto& term : row.terms) {
      row_min += std::min(term.coeff, 0.0);
      row_max += std::max(term.coeff, 0.0);
    }
    const double reach = row.sense == Sense::LessEqual ? row.rhs - row_min
                                                       : row_max - row.rhs;
    long long range = static_cast<long long>(std::floor(reach + kRowTolerance));
    if (range < 0) range = 0;  // unsatisfiable row: penalty stays positive
    if (range > max_slack) {
      throw ReductionError("slack range " + std::to_string(range) +
                           " for constraint " + std::to_string(r) +
                           " exceeds " + std::to_string(max_bits_per_var) +
                           " bits");
    }
    SlackEncoding reg;
    reg.constraint = r;
    const long long sign = row.sense == Sense::LessEqual ? 1 : -1;
    for (long long weight : expansion_weights(range)) {
      reg.bits.push_back({next_bit++, sign * weight});
    }
    slack_registers.push_back(std::move(reg));
  }

  const std::size_t total_bits = next_bit;
  QuboModel qubo(total_bits);
  double offset = 0.0;
  const double A = w.constraint_weight;

  // Each row contributes A * (r0 - sum_t a_t z_t)^2. With z^2 = z the square
  // expands to A*r0^2 + sum_t A*(a_t^2 - 2 r0 a_t) z_t
  //                   + sum_{t<u} 2 A a_t a_u z_t z_u.
  std::size_t slack_cursor = 0;
  for (std::size_t r = 0; r < binary.constraints().size(); ++r) {
    const Constraint& row = binary.constraints()[r];
    std::vector<std::pair<std::size_t, double>> linear;
    linear.reserve(row.terms.size());
    for (const auto& term : row.terms) {
      linear.emplace_back(term.var, term.coeff);
    }
    if (row.sense != Sense::Equal) {
      const SlackEncoding& reg = slack_registers[slack_cursor++];
      for (const BitSlice& slice : reg.bits) {
        linear.emplace_back(slice.bit, static_cast<double>(slice.weight));
      }
    }
    const double r0 = row.rhs;
    offset += A * r0 * r0;
    for (std::size_t t = 0; t < linear.size(); ++t) {
      const auto [zt, at] = linear[t];
      qubo.add_term(zt, zt, A * (at * at - 2.0 * r0 * at));
      for (std::size_t u = t + 1; u < linear.size(); ++u) {
        const auto [zu, au] = linear[u];
        qubo.add_term(zt, zu, 2.0 * A * at * au);
      }
    }
  }

  const double B = w.objective_weight;
  for (std::size_t t = 0; t < num_var_bits; ++t) {
    const double coeff = binary.objective()[t];
    if (coeff != 0.0) qubo.add_term(t, t, B * coeff);
  }
  offset += B * binary.objective_offset();
  qubo.set_offset(offset);

  IsingModel ising = qubo_to_ising(qubo);
  ReductionArtifact artifact{std::move(qubo),
                             std::move(ising),
                             std::move(expansion.variables),
                             std::move(slack_registers),
                             w,
                             0.0,
                             instance};
  artifact.constant_shift = artifact.qubo.offset();
  return artifact;
}

SpinState encode(const ReductionArtifact& artifact,
                 const std::vector<long long>& x) {
  const BilpInstance& inst = artifact.instance;
  if (x.size() != inst.num_vars()) {
    throw std::invalid_argument("assignment has " + std::to_string(x.size()) +
                                " entries but instance has " +
                                std::to_string(inst.num_vars()) +
                                " variables");
  }
  if (!inst.in_bounds(x)) {
    throw std::invalid_argument("assignment violates variable bounds");
  }
  std::vector<std::uint8_t> bits(artifact.num_bits(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const VariableEncoding& enc = artifact.variable_bits[i];
    mark_bits(x[i] - enc.base, enc.bits, bits);
  }
  for (const SlackEncoding& reg : artifact.slack_bits) {
    const Constraint& row = inst.constraints()[reg.constraint];
    const double activity = inst.row_activity(reg.constraint, x);
    const double target = row.sense == Sense::LessEqual ? row.rhs - activity
                                                        : activity - row.rhs;
    const long long cap = slice_sum(reg.bits);
    long long value = std::llround(target);
    value = std::clamp(value, 0LL, cap);
    mark_bits(value, reg.bits, bits);
  }
  SpinState state(artifact.num_bits());
  for (std::size_t b = 0; b < bits.size(); ++b) {
    state.set(b, bits[b] ? +1 : -1);
  }
  return state;
}

DecodedSolution decode(const ReductionArtifact& artifact,
                       const SpinState& state) {
  if (state.size() != artifact.num_bits()) {
    throw std::invalid_argument("state has " + std::to_string(state.size()) +
                                " spins but reduction produced " +
                                std::to_string(artifact.num_bits()) + " bits");
  }
  const BilpInstance& inst = artifact.instance;
  DecodedSolution out;
  out.assignment.resize(inst.num_vars());
  for (std::size_t i = 0; i < inst.num_vars(); ++i) {
    const VariableEncoding& enc = artifact.variable_bits[i];
    long long value = enc.base;
    for (const BitSlice& slice : enc.bits) {
      if (state[slice.bit] > 0) value += slice.weight;
    }
    out.assignment[i] = value;
  }
  out.objective = inst.objective_value(out.assignment);
  out.feasible = true;
  out.violation = 0.0;
  for (std::size_t r = 0; r < inst.constraints().size(); ++r) {
    const double gap = inst.row_violation(r, out.assignment);
    if (gap > 0.0) {
      out.feasible = false;
      out.violation += gap * gap;
    }
  }
  return out;
}

}  // namespace isingkit
