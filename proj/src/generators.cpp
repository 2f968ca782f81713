#include "isingkit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "isingkit/errors.hpp"
#include "isingkit/rng.hpp"

namespace isingkit {

namespace {

long long parse_ll(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ParseError("generator key '" + key + "' needs an integer, got '" +
                     value + "'");
  }
}

double parse_real(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(parsed)) {
      throw std::invalid_argument(value);
    }
    return parsed;
  } catch (const std::exception&) {
    throw ParseError("generator key '" + key + "' needs a number, got '" +
                     value + "'");
  }
}

std::size_t parse_count(const std::string& value, const std::string& key) {
  const long long parsed = parse_ll(value, key);
  if (parsed < 0) {
    throw ParseError("generator key '" + key + "' must be non-negative");
  }
  return static_cast<std::size_t>(parsed);
}

IsingModel maxcut_model(std::size_t nodes,
                        const std::vector<std::pair<std::size_t, std::size_t>>&
                            edges,
                        const std::vector<long long>& weights) {
  // J = -w/2 with offset -sum(w)/2 makes energy(state) = -cut(state), so
  // the minimum energy state is a maximum cut.
  IsingModel model(nodes);
  double total = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double w = static_cast<double>(weights[e]);
    model.add_coupling(edges[e].first, edges[e].second, -w / 2.0);
    total += w;
  }
  model.set_offset(-total / 2.0);
  return model;
}

Instance generate_maxcut_ring(const GeneratorSpec& spec) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < spec.size; ++i) edges.push_back({i, i + 1});
  if (spec.size >= 3) edges.push_back({0, spec.size - 1});
  Rng rng(stream_seed(spec.seed, 0));
  std::vector<long long> weights;
  weights.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    weights.push_back(rng.between(spec.weight_min, spec.weight_max));
  }
  return maxcut_model(spec.size, edges, weights);
}

Instance generate_maxcut_random(const GeneratorSpec& spec) {
  Rng rng(stream_seed(spec.seed, 0));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<long long> weights;
  for (std::size_t i = 0; i < spec.size; ++i) {
    for (std::size_t j = i + 1; j < spec.size; ++j) {
      if (rng.bernoulli(spec.density)) {
        edges.push_back({i, j});
        weights.push_back(rng.between(spec.weight_min, spec.weight_max));
      }
    }
  }
  return maxcut_model(spec.size, edges, weights);
}

Instance generate_knapsack(const GeneratorSpec& spec) {
  Rng rng(stream_seed(spec.seed, 0));
  BilpInstance instance(spec.size);
  Constraint capacity_row;
  capacity_row.sense = Sense::LessEqual;
  long long total_weight = 0;
  for (std::size_t i = 0; i < spec.size; ++i) {
    const long long value = rng.between(spec.value_min, spec.value_max);
    const long long weight = rng.between(spec.weight_min, spec.weight_max);
    // Value maximization as minimization of the negated value.
    instance.set_objective(i, -static_cast<double>(value));
    capacity_row.terms.push_back({i, static_cast<double>(weight)});
    total_weight += weight;
  }
  capacity_row.rhs = static_cast<double>(
      spec.capacity ? *spec.capacity : std::max(total_weight / 2, 1LL));
  instance.add_constraint(std::move(capacity_row));
  return instance;
}

Instance generate_random_bilp(const GeneratorSpec& spec) {
  Rng rng(stream_seed(spec.seed, 0));
  BilpInstance instance(spec.size);

  // Feasibility by construction: draw a witness assignment first, then give
  // every row a right-hand side the witness satisfies.
  std::vector<long long> witness(spec.size);
  for (std::size_t i = 0; i < spec.size; ++i) {
    if (rng.bernoulli(0.7)) {
      witness[i] = static_cast<long long>(rng.below(2));
    } else {
      instance.set_domain(i, VarDomain::integer(0, 3));
      witness[i] = static_cast<long long>(rng.below(4));
    }
    instance.set_objective(
        i, static_cast<double>(rng.between(spec.weight_min, spec.weight_max)));
  }

  std::vector<std::size_t> vars(spec.size);
  for (std::size_t i = 0; i < spec.size; ++i) vars[i] = i;
  for (std::size_t r = 0; r < spec.rows; ++r) {
    rng.shuffle(vars);
    const std::size_t width =
        1 + static_cast<std::size_t>(rng.below(std::min<std::uint64_t>(
                3, static_cast<std::uint64_t>(spec.size))));
    Constraint row;
    double at_witness = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      long long coeff = 0;
      while (coeff == 0) coeff = rng.between(spec.weight_min, spec.weight_max);
      row.terms.push_back({vars[k], static_cast<double>(coeff)});
      at_witness += static_cast<double>(coeff * witness[vars[k]]);
    }
    const std::uint64_t pick = rng.below(3);
    const long long pad = static_cast<long long>(rng.below(4));
    if (pick == 0) {
      row.sense = Sense::Equal;
      row.rhs = at_witness;
    } else if (pick == 1) {
      row.sense = Sense::LessEqual;
      row.rhs = at_witness + static_cast<double>(pad);
    } else {
      row.sense = Sense::GreaterEqual;
      row.rhs = at_witness - static_cast<double>(pad);
    }
    instance.add_constraint(std::move(row));
  }
  return instance;
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string kind_name = text.substr(0, colon);

  GeneratorSpec spec;
  if (kind_name == "maxcut-random") {
    spec.kind = GeneratorKind::MaxcutRandom;
    spec.size = 10;
  } else if (kind_name == "maxcut-ring") {
    spec.kind = GeneratorKind::MaxcutRing;
    spec.size = 8;
  } else if (kind_name == "knapsack") {
    spec.kind = GeneratorKind::Knapsack;
    spec.size = 3;
    spec.weight_min = 1;
    spec.weight_max = 9;
  } else if (kind_name == "random-bilp") {
    spec.kind = GeneratorKind::RandomBilp;
    spec.size = 4;
    spec.weight_min = -5;
    spec.weight_max = 5;
  } else {
    throw ParseError("unknown generator kind '" + kind_name +
                     "' (expected maxcut-random, maxcut-ring, knapsack or "
                     "random-bilp)");
  }

  std::size_t pos = colon == std::string::npos ? text.size() : colon + 1;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError("generator option '" + item +
                       "' is not of the form key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "size" || key == "nodes" || key == "items" || key == "vars") {
      spec.size = parse_count(value, key);
    } else if (key == "wmin") {
      spec.weight_min = parse_ll(value, key);
    } else if (key == "wmax") {
      spec.weight_max = parse_ll(value, key);
    } else if (key == "vmin") {
      spec.value_min = parse_ll(value, key);
    } else if (key == "vmax") {
      spec.value_max = parse_ll(value, key);
    } else if (key == "density") {
      spec.density = parse_real(value, key);
    } else if (key == "rows") {
      spec.rows = parse_count(value, key);
    } else if (key == "capacity") {
      spec.capacity = parse_ll(value, key);
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_ll(value, key));
    } else {
      throw ParseError("unknown generator key '" + key + "'");
    }
  }

  if (spec.size < 1) throw ParseError("generator size must be at least 1");
  if (spec.weight_min > spec.weight_max) {
    throw ParseError("generator weight range is empty");
  }
  if (spec.value_min > spec.value_max) {
    throw ParseError("generator value range is empty");
  }
  if (!(spec.density >= 0.0 && spec.density <= 1.0)) {
    throw ParseError("generator density must lie in [0, 1]");
  }
  return spec;
}

Instance generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::MaxcutRandom:
      return generate_maxcut_random(spec);
    case GeneratorKind::MaxcutRing:
      return generate_maxcut_ring(spec);
    case GeneratorKind::Knapsack:
      return generate_knapsack(spec);
    case GeneratorKind::RandomBilp:
      return generate_random_bilp(spec);
  }
  throw std::logic_error("unhandled generator kind");
}

}  // namespace isingkit
