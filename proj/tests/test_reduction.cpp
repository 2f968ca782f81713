#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "isingkit/errors.hpp"
#include "isingkit/oracle.hpp"
#include "isingkit/reduction.hpp"
#include "isingkit/rng.hpp"

using namespace isingkit;

namespace {

std::vector<std::uint8_t> bits_from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    bits[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
  }
  return bits;
}

SpinState state_from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<std::int8_t> signs(n);
  for (std::size_t i = 0; i < n; ++i) {
    signs[i] = ((mask >> i) & 1u) ? 1 : -1;
  }
  return SpinState::from_signs(signs);
}

// Penalty value computed straight from the definition: weighted squared
// residual per row plus the weighted objective of the decoded point.
double reference_value(const ReductionArtifact& artifact,
                       const SpinState& state) {
  const BilpInstance& instance = artifact.instance;
  const DecodedSolution decoded = decode(artifact, state);

  std::vector<double> slack_value_of_row(instance.constraints().size(), 0.0);
  for (const SlackEncoding& reg : artifact.slack_bits) {
    double total = 0.0;
    for (const BitSlice& slice : reg.bits) {
      if (state[slice.bit] > 0) total += static_cast<double>(slice.weight);
    }
    slack_value_of_row[reg.constraint] = total;
  }

  double penalty = 0.0;
  for (std::size_t row = 0; row < instance.constraints().size(); ++row) {
    const double activity = instance.row_activity(row, decoded.assignment);
    const double residual =
        instance.constraints()[row].rhs - activity - slack_value_of_row[row];
    penalty += residual * residual;
  }
  return artifact.weights.constraint_weight * penalty +
         artifact.weights.objective_weight *
             instance.objective_value(decoded.assignment);
}

std::set<long long> encoding_image(const VariableEncoding& encoding) {
  std::set<long long> image;
  const std::size_t n = encoding.bits.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long long value = encoding.base;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) value += encoding.bits[i].weight;
    }
    image.insert(value);
  }
  return image;
}

BilpInstance random_instance(Rng& rng, std::size_t num_vars,
                             std::size_t num_rows) {
  BilpInstance instance(num_vars);
  std::vector<long long> witness(num_vars);
  for (std::size_t v = 0; v < num_vars; ++v) {
    if (rng.bernoulli(0.3)) {
      instance.set_domain(v, VarDomain::integer(0, 3));
      witness[v] = rng.between(0, 3);
    } else {
      witness[v] = rng.between(0, 1);
    }
    instance.set_objective(v, static_cast<double>(rng.between(-5, 5)));
  }
  for (std::size_t row = 0; row < num_rows; ++row) {
    Constraint c;
    for (std::size_t v = 0; v < num_vars; ++v) {
      if (rng.bernoulli(0.6)) {
        c.terms.push_back({v, static_cast<double>(rng.between(-3, 3))});
      }
    }
    if (c.terms.empty()) c.terms.push_back({0, 1.0});
    double at_witness = 0.0;
    for (const LinearTerm& term : c.terms) {
      at_witness += term.coeff * static_cast<double>(witness[term.var]);
    }
    switch (rng.below(3)) {
      case 0:
        c.sense = Sense::Equal;
        c.rhs = at_witness;
        break;
      case 1:
        c.sense = Sense::LessEqual;
        c.rhs = at_witness + static_cast<double>(rng.between(0, 2));
        break;
      default:
        c.sense = Sense::GreaterEqual;
        c.rhs = at_witness - static_cast<double>(rng.between(0, 2));
        break;
    }
    instance.add_constraint(c);
  }
  return instance;
}

}  // namespace

TEST_CASE("instance validation") {
  BilpInstance instance(2);
  CHECK_THROWS_AS(instance.set_objective(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(instance.set_domain(0, VarDomain::integer(3, 1)),
                  std::invalid_argument);
  Constraint bad;
  bad.terms.push_back({5, 1.0});
  CHECK_THROWS_AS(instance.add_constraint(bad), std::invalid_argument);

  Constraint dup;
  dup.terms.push_back({1, 2.0});
  dup.terms.push_back({0, 1.0});
  dup.terms.push_back({1, 3.0});
  dup.rhs = 1.0;
  instance.add_constraint(dup);
  REQUIRE(instance.constraints().size() == 1);
  const auto& terms = instance.constraints()[0].terms;
  REQUIRE(terms.size() == 2);  // merged and sorted by variable
  CHECK(terms[0].var == 0);
  CHECK(terms[1].var == 1);
  CHECK(terms[1].coeff == doctest::Approx(5.0));
}

TEST_CASE("row activity and violation") {
  BilpInstance instance(2);
  Constraint row;
  row.terms = {{0, 1.0}, {1, 1.0}};
  row.sense = Sense::LessEqual;
  row.rhs = 1.0;
  instance.add_constraint(row);
  CHECK(instance.row_activity(0, {1, 1}) == doctest::Approx(2.0));
  CHECK(instance.row_violation(0, {1, 0}) == doctest::Approx(0.0));
  CHECK(instance.row_violation(0, {1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("weight choice dominates the objective spread") {
  SUBCASE("two binary variables") {
    BilpInstance instance(2);
    instance.set_objective(0, 1.0);
    instance.set_objective(1, 2.0);
    const PenaltyWeights weights = choose_weights(instance);
    CHECK(weights.constraint_weight == doctest::Approx(4.0));
    CHECK(weights.objective_weight == doctest::Approx(1.0));
  }
  SUBCASE("zero objective collapses to equal weights") {
    BilpInstance instance(3);
    const PenaltyWeights weights = choose_weights(instance);
    CHECK(weights.constraint_weight == doctest::Approx(1.0));
    CHECK(weights.objective_weight == doctest::Approx(1.0));
  }
  SUBCASE("integer ranges scale their coefficient's contribution") {
    BilpInstance instance(1);
    instance.set_domain(0, VarDomain::integer(0, 3));
    instance.set_objective(0, 2.0);
    const PenaltyWeights weights = choose_weights(instance);
    CHECK(weights.constraint_weight == doctest::Approx(7.0));
  }
}

TEST_CASE("minimizing negative of one binary variable") {
  BilpInstance instance(1);
  instance.set_objective(0, -1.0);
  const ReductionArtifact artifact = reduce(instance);
  CHECK(artifact.num_bits() == 1);
  CHECK(artifact.qubo.value({1}) < artifact.qubo.value({0}));

  const IsingOracleResult ground = enumerate_ising(artifact.ising);
  REQUIRE(ground.best_states.size() == 1);
  const DecodedSolution decoded = decode(artifact, ground.best_states[0]);
  CHECK(decoded.assignment == std::vector<long long>{1});
  CHECK(decoded.feasible);
  CHECK(decoded.objective == doctest::Approx(-1.0));
}

TEST_CASE("equality row selects the cheaper variable") {
  BilpInstance instance(2);
  instance.set_objective(0, 1.0);
  instance.set_objective(1, 2.0);
  Constraint row;
  row.terms = {{0, 1.0}, {1, 1.0}};
  row.rhs = 1.0;
  instance.add_constraint(row);

  const ReductionArtifact artifact = reduce(instance);
  CHECK(artifact.num_bits() == 2);  // equality rows get no slack
  CHECK(artifact.slack_bits.empty());

  const IsingOracleResult ground = enumerate_ising(artifact.ising);
  REQUIRE(ground.best_states.size() == 1);
  const DecodedSolution decoded = decode(artifact, ground.best_states[0]);
  CHECK(decoded.assignment == std::vector<long long>{1, 0});
  CHECK(decoded.feasible);
  CHECK(decoded.objective == doctest::Approx(1.0));
}

TEST_CASE("inequality row gets exactly the slack bits it needs") {
  BilpInstance instance(2);
  instance.set_objective(0, -1.0);
  instance.set_objective(1, -1.0);
  Constraint row;
  row.terms = {{0, 1.0}, {1, 1.0}};
  row.sense = Sense::LessEqual;
  row.rhs = 1.0;
  instance.add_constraint(row);

  const ReductionArtifact artifact = reduce(instance);
  REQUIRE(artifact.slack_bits.size() == 1);
  CHECK(artifact.slack_bits[0].bits.size() == 1);  // slack range is [0, 1]
  CHECK(artifact.num_bits() == 3);

  const IsingOracleResult ground = enumerate_ising(artifact.ising);
  std::set<std::vector<long long>> assignments;
  for (const SpinState& state : ground.best_states) {
    const DecodedSolution decoded = decode(artifact, state);
    CHECK(decoded.feasible);
    CHECK(decoded.objective == doctest::Approx(-1.0));
    assignments.insert(decoded.assignment);
  }
  const std::set<std::vector<long long>> expected = {{1, 0}, {0, 1}};
  CHECK(assignments == expected);
}

TEST_CASE("binary expansion images cover the range exactly") {
  SUBCASE("range 3 uses weights 1, 2") {
    BilpInstance instance(1);
    instance.set_domain(0, VarDomain::integer(0, 3));
    const IntegerExpansion expansion = expand_integers_with_map(instance);
    REQUIRE(expansion.variables.size() == 1);
    const VariableEncoding& enc = expansion.variables[0];
    REQUIRE(enc.bits.size() == 2);
    CHECK(enc.bits[0].weight == 1);
    CHECK(enc.bits[1].weight == 2);
    CHECK(encoding_image(enc) == std::set<long long>{0, 1, 2, 3});
  }
  SUBCASE("range 5 uses weights 1, 2, 2 and nothing outside") {
    BilpInstance instance(1);
    instance.set_domain(0, VarDomain::integer(0, 5));
    const IntegerExpansion expansion = expand_integers_with_map(instance);
    const VariableEncoding& enc = expansion.variables[0];
    REQUIRE(enc.bits.size() == 3);
    CHECK(enc.bits[0].weight == 1);
    CHECK(enc.bits[1].weight == 2);
    CHECK(enc.bits[2].weight == 2);
    CHECK(encoding_image(enc) == std::set<long long>{0, 1, 2, 3, 4, 5});
  }
  SUBCASE("fixed variable needs no bits") {
    BilpInstance instance(1);
    instance.set_domain(0, VarDomain::integer(2, 2));
    const IntegerExpansion expansion = expand_integers_with_map(instance);
    CHECK(expansion.variables[0].bits.empty());
    CHECK(expansion.variables[0].base == 2);
    CHECK(expansion.binary.num_vars() == 0);
  }
  SUBCASE("offset lower bound lands in the base") {
    BilpInstance instance(1);
    instance.set_domain(0, VarDomain::integer(-2, 1));
    const IntegerExpansion expansion = expand_integers_with_map(instance);
    const VariableEncoding& enc = expansion.variables[0];
    CHECK(enc.base == -2);
    CHECK(encoding_image(enc) == std::set<long long>{-2, -1, 0, 1});
  }
}

TEST_CASE("encode and decode are inverse on in-bounds assignments") {
  Rng rng(555);
  for (int round = 0; round < 40; ++round) {
    const std::size_t num_vars = 1 + rng.below(5);
    const BilpInstance instance = random_instance(rng, num_vars, rng.below(3));
    const ReductionArtifact artifact = reduce(instance);
    std::vector<long long> x(num_vars);
    for (std::size_t v = 0; v < num_vars; ++v) {
      x[v] = rng.between(instance.domain(v).lo, instance.domain(v).hi);
    }
    const SpinState state = encode(artifact, x);
    const DecodedSolution decoded = decode(artifact, state);
    CHECK(decoded.assignment == x);
  }
}

TEST_CASE("encode rejects out-of-bounds points") {
  BilpInstance instance(1);
  const ReductionArtifact artifact = reduce(instance);
  CHECK_THROWS_AS(encode(artifact, {2}), std::invalid_argument);
  CHECK_THROWS_AS(encode(artifact, {0, 0}), std::invalid_argument);
}

TEST_CASE("qubo value equals penalty plus weighted objective everywhere") {
  Rng rng(777);
  for (int round = 0; round < 30; ++round) {
    const std::size_t num_vars = 1 + rng.below(4);
    const BilpInstance instance = random_instance(rng, num_vars, rng.below(3));
    const ReductionArtifact artifact = reduce(instance);
    const std::size_t n = artifact.num_bits();
    if (n > 12) continue;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const SpinState state = state_from_mask(mask, n);
      const double via_qubo = artifact.qubo.value(bits_from_mask(mask, n));
      const double via_ising = energy(artifact.ising, state);
      const double reference = reference_value(artifact, state);
      CHECK(via_qubo == doctest::Approx(reference).epsilon(1e-9));
      CHECK(via_ising == doctest::Approx(via_qubo).epsilon(1e-9));
    }
  }
}

TEST_CASE("feasible points always beat infeasible ones under chosen weights") {
  Rng rng(901);
  for (int round = 0; round < 20; ++round) {
    const BilpInstance instance = random_instance(rng, 1 + rng.below(4), 1);
    const ReductionArtifact artifact = reduce(instance);
    const std::size_t n = artifact.num_bits();
    if (n > 12) continue;
    double best_feasible = 1e300;
    double best_infeasible = 1e300;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const SpinState state = state_from_mask(mask, n);
      const double value = artifact.qubo.value(bits_from_mask(mask, n));
      if (decode(artifact, state).feasible) {
        best_feasible = std::min(best_feasible, value);
      } else {
        best_infeasible = std::min(best_infeasible, value);
      }
    }
    REQUIRE(best_feasible < 1e300);  // witness construction guarantees this
    if (best_infeasible < 1e300) {
      CHECK(best_feasible < best_infeasible);
    }
  }
}

TEST_CASE("ground states decode to exact optima of the original program") {
  Rng rng(1333);
  int checked = 0;
  for (int round = 0; round < 40; ++round) {
    const BilpInstance instance =
        random_instance(rng, 2 + rng.below(4), rng.below(3));
    const ReductionArtifact artifact = reduce(instance);
    if (artifact.num_bits() > 16) continue;
    const BilpOracleResult truth = enumerate_bilp(instance);
    REQUIRE(truth.feasible);
    const IsingOracleResult ground = enumerate_ising(artifact.ising);
    const DecodedSolution decoded = decode(artifact, ground.best_states[0]);
    CHECK(decoded.feasible);
    CHECK(decoded.objective == truth.best_value);
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("penalty grows with the squared violation") {
  BilpInstance instance(2);
  Constraint row;
  row.terms = {{0, 1.0}, {1, 1.0}};
  row.rhs = 0.0;
  instance.add_constraint(row);
  const ReductionArtifact artifact = reduce(instance);
  const double none = artifact.qubo.value({0, 0});    // residual 0
  const double one = artifact.qubo.value({1, 0});     // residual 1
  const double two = artifact.qubo.value({1, 1});     // residual 2
  CHECK(one - none == doctest::Approx(artifact.weights.constraint_weight));
  CHECK(two - none ==
        doctest::Approx(4.0 * artifact.weights.constraint_weight));
}

TEST_CASE("reduction errors") {
  SUBCASE("oversized integer domain") {
    BilpInstance instance(1);
    instance.set_domain(0, VarDomain::integer(0, 100));
    CHECK_THROWS_AS(reduce(instance, std::nullopt, 3), ReductionError);
  }
  SUBCASE("oversized slack register") {
    BilpInstance instance(2);
    Constraint row;
    row.terms = {{0, 100.0}, {1, 100.0}};
    row.sense = Sense::LessEqual;
    row.rhs = 200.0;
    instance.add_constraint(row);
    CHECK_THROWS_AS(reduce(instance, std::nullopt, 3), ReductionError);
  }
  SUBCASE("invalid weights") {
    BilpInstance instance(1);
    CHECK_THROWS_AS(reduce(instance, PenaltyWeights{1.0, 2.0}),
                    ReductionError);
    CHECK_THROWS_AS(reduce(instance, PenaltyWeights{1.0, 0.0}),
                    ReductionError);
    CHECK_THROWS_AS(reduce(instance, PenaltyWeights{-1.0, -2.0}),
                    ReductionError);
  }
}

TEST_CASE("unsatisfiable equality keeps a positive penalty at every point") {
  BilpInstance instance(2);
  Constraint row;
  row.terms = {{0, 1.0}, {1, 1.0}};
  row.rhs = 3.0;  // two binaries cannot reach 3
  instance.add_constraint(row);
  const ReductionArtifact artifact = reduce(instance);
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    const SpinState state = state_from_mask(mask, 2);
    CHECK_FALSE(decode(artifact, state).feasible);
    CHECK(artifact.qubo.value(bits_from_mask(mask, 2)) > 0.0);
  }
}
