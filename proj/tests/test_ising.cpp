#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "isingkit/ising.hpp"
#include "isingkit/rng.hpp"

using namespace isingkit;

namespace {

// Direct evaluation of the defining sum, pair by pair. The library's
// adjacency-based energy() must agree with this to machine precision.
double naive_energy(const IsingModel& model, const SpinState& state) {
  double total = model.offset();
  for (const auto& [pair, value] : model.couplings()) {
    total -= value * state[pair.first] * state[pair.second];
  }
  for (std::size_t i = 0; i < model.num_spins(); ++i) {
    total -= model.field(i) * state[i];
  }
  return total;
}

IsingModel random_model(std::size_t num_spins, Rng& rng, double density = 0.4) {
  IsingModel model(num_spins);
  for (std::size_t i = 0; i < num_spins; ++i) {
    for (std::size_t j = i + 1; j < num_spins; ++j) {
      if (rng.bernoulli(density)) {
        model.add_coupling(i, j, rng.uniform01() * 4.0 - 2.0);
      }
    }
    model.set_field(i, rng.uniform01() * 2.0 - 1.0);
  }
  model.set_offset(rng.uniform01() - 0.5);
  return model;
}

}  // namespace

TEST_CASE("spin state construction and validation") {
  SpinState state(3);
  CHECK(state.size() == 3);
  CHECK(state[0] == 1);
  CHECK(state[2] == 1);

  state.set(1, -1);
  CHECK(state[1] == -1);
  state.flip(1);
  CHECK(state[1] == 1);

  const SpinState from = SpinState::from_signs({-1, 1, -1});
  CHECK(from[0] == -1);
  CHECK(from[1] == 1);
  CHECK_THROWS_AS(SpinState::from_signs({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SpinState::from_signs({2}), std::invalid_argument);
}

TEST_CASE("spin state ordering is lexicographic with -1 first") {
  const SpinState a = SpinState::from_signs({-1, 1});
  const SpinState b = SpinState::from_signs({1, -1});
  CHECK(a < b);
  CHECK_FALSE(b < a);
  CHECK(a == SpinState::from_signs({-1, 1}));
}

TEST_CASE("flip is an involution") {
  Rng rng(11);
  SpinState state = SpinState::random(8, rng);
  const SpinState original = state;
  for (std::size_t i = 0; i < state.size(); ++i) {
    state.flip(i);
    state.flip(i);
  }
  CHECK(state == original);
}

TEST_CASE("coupling accumulation and lookup") {
  IsingModel model(3);
  model.add_coupling(0, 1, 0.5);
  model.add_coupling(1, 0, 0.25);  // same unordered pair
  CHECK(model.coupling(0, 1) == doctest::Approx(0.75));
  CHECK(model.coupling(1, 0) == doctest::Approx(0.75));
  CHECK(model.has_coupling(0, 1));
  CHECK_FALSE(model.has_coupling(0, 2));
  CHECK(model.coupling(0, 2) == 0.0);

  CHECK_THROWS_AS(model.add_coupling(1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(model.add_coupling(0, 3, 1.0), std::out_of_range);
  CHECK_THROWS_AS(model.set_field(5, 1.0), std::out_of_range);
}

TEST_CASE("neighbors are sorted and symmetric") {
  IsingModel model(4);
  model.add_coupling(2, 0, 1.0);
  model.add_coupling(2, 3, -1.0);
  model.add_coupling(1, 2, 0.5);
  const auto& around_two = model.neighbors(2);
  REQUIRE(around_two.size() == 3);
  CHECK(around_two[0].index == 0);
  CHECK(around_two[1].index == 1);
  CHECK(around_two[2].index == 3);
  CHECK(model.neighbors(0).size() == 1);
  CHECK(model.neighbors(0)[0].weight == doctest::Approx(1.0));
}

TEST_CASE("two-spin ferromagnet energies") {
  IsingModel model(2);
  model.add_coupling(0, 1, 1.0);
  CHECK(energy(model, SpinState::from_signs({1, 1})) == doctest::Approx(-1.0));
  CHECK(energy(model, SpinState::from_signs({-1, -1})) ==
        doctest::Approx(-1.0));
  CHECK(energy(model, SpinState::from_signs({1, -1})) == doctest::Approx(1.0));
}

TEST_CASE("single spin in a field") {
  IsingModel model(1);
  model.set_field(0, -3.0);
  CHECK(energy(model, SpinState::from_signs({-1})) == doctest::Approx(-3.0));
  CHECK(energy(model, SpinState::from_signs({1})) == doctest::Approx(3.0));
}

TEST_CASE("offset shifts every energy") {
  IsingModel model(2);
  model.add_coupling(0, 1, 1.0);
  model.set_offset(10.0);
  CHECK(energy(model, SpinState::from_signs({1, 1})) == doctest::Approx(9.0));
}

TEST_CASE("energy matches the naive pair sum on random models") {
  Rng rng(42);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 1 + rng.below(10);
    const IsingModel model = random_model(n, rng);
    const SpinState state = SpinState::random(n, rng);
    CHECK(energy(model, state) ==
          doctest::Approx(naive_energy(model, state)).epsilon(1e-12));
  }
}

TEST_CASE("energy does not depend on insertion order") {
  IsingModel forward(4);
  forward.add_coupling(0, 1, 0.5);
  forward.add_coupling(1, 2, -0.75);
  forward.add_coupling(2, 3, 0.25);

  IsingModel backward(4);
  backward.add_coupling(2, 3, 0.25);
  backward.add_coupling(1, 2, -0.75);
  backward.add_coupling(0, 1, 0.5);

  CHECK(forward.couplings() == backward.couplings());
  Rng rng(3);
  for (int round = 0; round < 10; ++round) {
    const SpinState state = SpinState::random(4, rng);
    CHECK(energy(forward, state) == energy(backward, state));
  }
}

TEST_CASE("local field sums neighbor spins and the external field") {
  IsingModel model(3);
  model.add_coupling(0, 1, 2.0);
  model.add_coupling(0, 2, -1.0);
  model.set_field(0, 0.5);
  const SpinState state = SpinState::from_signs({1, 1, -1});
  CHECK(local_field(model, state, 0) == doctest::Approx(2.0 + 1.0 + 0.5));
  CHECK(local_field(model, state, 1) == doctest::Approx(2.0));
}

TEST_CASE("flip delta equals the energy difference of the flipped state") {
  Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng.below(12);
    const IsingModel model = random_model(n, rng);
    SpinState state = SpinState::random(n, rng);
    const std::size_t i = rng.below(n);
    const double delta = flip_delta(model, state, i);
    const double before = energy(model, state);
    state.flip(i);
    const double after = energy(model, state);
    CHECK(delta == doctest::Approx(after - before).epsilon(1e-9));
  }
}

TEST_CASE("qubo value includes offset and accumulates mirrored terms") {
  QuboModel qubo(2);
  qubo.add_term(0, 0, 1.0);   // linear term on x0
  qubo.add_term(0, 1, 2.0);
  qubo.add_term(1, 0, 1.0);   // same cell as (0, 1)
  qubo.set_offset(5.0);
  CHECK(qubo.term(0, 1) == doctest::Approx(3.0));
  CHECK(qubo.value({0, 0}) == doctest::Approx(5.0));
  CHECK(qubo.value({1, 0}) == doctest::Approx(6.0));
  CHECK(qubo.value({1, 1}) == doctest::Approx(9.0));
  CHECK_THROWS_AS(qubo.value({1}), std::invalid_argument);
}

TEST_CASE("qubo_to_ising preserves values under the bit-to-spin map") {
  Rng rng(2024);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 1 + rng.below(8);
    QuboModel qubo(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        if (rng.bernoulli(0.5)) {
          qubo.add_term(i, j, rng.uniform01() * 6.0 - 3.0);
        }
      }
    }
    qubo.set_offset(rng.uniform01() - 0.5);
    const IsingModel ising = qubo_to_ising(qubo);
    REQUIRE(ising.num_spins() == n);

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<std::uint8_t> bits(n);
      std::vector<std::int8_t> signs(n);
      for (std::size_t i = 0; i < n; ++i) {
        bits[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
        signs[i] = bits[i] ? 1 : -1;  // x = (1 + s) / 2
      }
      const double q = qubo.value(bits);
      const double h = energy(ising, SpinState::from_signs(signs));
      CHECK(q == doctest::Approx(h).epsilon(1e-9));
    }
  }
}

TEST_CASE("rotor energies at angles 0 and pi reproduce spin energies") {
  Rng rng(99);
  const double pi = std::acos(-1.0);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 1 + rng.below(8);
    IsingModel graph = random_model(n, rng);
    graph.set_offset(0.0);  // the rotor correspondence covers J and h only
    const XyModel rotor(graph);
    const SpinState state = SpinState::random(n, rng);
    std::vector<double> angles(n);
    for (std::size_t i = 0; i < n; ++i) {
      angles[i] = state[i] > 0 ? 0.0 : pi;
    }
    CHECK(xy_energy(rotor, angles) ==
          doctest::Approx(energy(graph, state)).epsilon(1e-9));
  }
}

TEST_CASE("rotor energy interpolates smoothly between spin values") {
  XyModel rotor(2);
  rotor.add_coupling(0, 1, 1.0);
  const double pi = std::acos(-1.0);
  // Aligned rotors sit at the minimum; a quarter turn costs the coupling.
  CHECK(xy_energy(rotor, {0.0, 0.0}) == doctest::Approx(-1.0));
  CHECK(xy_energy(rotor, {0.0, pi / 2}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(xy_energy(rotor, {0.0, pi}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(xy_energy(rotor, {0.0}), std::invalid_argument);
}
