#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "isingkit/io.hpp"

namespace isingkit {

enum class GeneratorKind { MaxcutRandom, MaxcutRing, Knapsack, RandomBilp };

/// Seeded benchmark instance recipe. Field use by kind:
///   maxcut-ring:   size nodes in a cycle, integer edge weights in
///                  [weight_min, weight_max]
///   maxcut-random: size nodes, each pair kept with probability density,
///                  weights as above
///   knapsack:      size items, integer weights/values in their ranges, one
///                  capacity row (default: half the total weight)
///   random-bilp:   size variables (binary or small integer), `rows`
///                  feasible-by-construction constraints with nonzero
///                  integer coefficients in [weight_min, weight_max]
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::MaxcutRing;
  std::size_t size = 8;
  long long weight_min = 1;
  long long weight_max = 1;
  long long value_min = 1;  // knapsack item values
  long long value_max = 9;
  double density = 0.5;  // maxcut-random edge probability
  std::size_t rows = 2;  // random-bilp constraint count
  std::optional<long long> capacity;
  std::uint64_t seed = 0;
};

/// Parses "kind:key=value,key=value". Kinds: maxcut-random, maxcut-ring,
/// knapsack, random-bilp. Keys: size (aliases nodes/items/vars), wmin, wmax,
/// vmin, vmax, density, rows, capacity, seed. Unknown kinds or keys, or
/// values violating the field constraints, throw ParseError.
GeneratorSpec parse_generator_spec(const std::string& text);

/// Deterministic instance from the spec. Max-cut kinds emit an IsingModel
/// with J_ij = -w_ij/2 and offset -sum(w)/2, so energy(state) equals minus
/// the cut weight and the ground state is a maximum cut. knapsack and
/// random-bilp emit BilpInstance (knapsack value maximization arrives
/// negated, as minimization).
Instance generate(const GeneratorSpec& spec);

}  // namespace isingkit
