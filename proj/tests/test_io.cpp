#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <variant>
#include <vector>

#include "isingkit/errors.hpp"
#include "isingkit/generators.hpp"
#include "isingkit/io.hpp"

using namespace isingkit;

namespace {

BilpInstance parse_bilp(const std::string& text, InstanceFormat format) {
  return std::get<BilpInstance>(parse_instance(text, format));
}

IsingModel parse_ising(const std::string& text) {
  return std::get<IsingModel>(parse_instance(text, InstanceFormat::IsingJson));
}

}  // namespace

TEST_CASE("format names round-trip") {
  for (const InstanceFormat format :
       {InstanceFormat::BilpJson, InstanceFormat::IsingJson,
        InstanceFormat::LpText}) {
    CHECK(format_from_name(format_name(format)) == format);
  }
  CHECK_FALSE(format_from_name("xml").has_value());
}

TEST_CASE("spin model json parses fields, couplings and offset") {
  const std::string text = R"({
    "format_version": 1,
    "num_spins": 3,
    "couplings": [[0, 1, 0.5], [2, 1, -1.0]],
    "fields": [0.0, 0.25, 0.0],
    "offset": 2.0
  })";
  const IsingModel model = parse_ising(text);
  CHECK(model.num_spins() == 3);
  CHECK(model.coupling(0, 1) == doctest::Approx(0.5));
  CHECK(model.coupling(1, 2) == doctest::Approx(-1.0));
  CHECK(model.field(1) == doctest::Approx(0.25));
  CHECK(model.offset() == doctest::Approx(2.0));
}

TEST_CASE("spin model json rejects malformed input") {
  CHECK_THROWS_AS(parse_ising("{"), ParseError);
  CHECK_THROWS_AS(parse_ising(R"({"num_spins": 2})"), ParseError);  // version
  CHECK_THROWS_AS(
      parse_ising(R"({"format_version": 2, "num_spins": 2})"), ParseError);
  CHECK_THROWS_AS(
      parse_ising(
          R"({"format_version": 1, "num_spins": 2, "couplings": [[0, 0, 1]]})"),
      ParseError);
  // Same pair in either orientation is a duplicate.
  CHECK_THROWS_AS(
      parse_ising(
          R"({"format_version": 1, "num_spins": 2,
              "couplings": [[0, 1, 1], [1, 0, 2]]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_ising(R"({"format_version": 1, "num_spins": 2, "bogus": 1})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_ising(
          R"({"format_version": 1, "num_spins": 2, "fields": [1.0]})"),
      ParseError);
}

TEST_CASE("program json parses objective, rows, bounds and kinds") {
  const std::string text = R"({
    "format_version": 1,
    "num_vars": 2,
    "objective": [1.0, 2.0],
    "objective_offset": 0.5,
    "constraints": [
      {"coeffs": [[0, 1.0], [1, 1.0]], "sense": "<=", "rhs": 1.0}
    ],
    "bounds": [[0, 1], [0, 5]],
    "kinds": ["binary", "integer"]
  })";
  const BilpInstance instance = parse_bilp(text, InstanceFormat::BilpJson);
  CHECK(instance.num_vars() == 2);
  CHECK(instance.objective()[1] == doctest::Approx(2.0));
  CHECK(instance.objective_offset() == doctest::Approx(0.5));
  REQUIRE(instance.constraints().size() == 1);
  CHECK(instance.constraints()[0].sense == Sense::LessEqual);
  CHECK(instance.domain(1).hi == 5);
}

TEST_CASE("program json rejects unsupported variable kinds") {
  const std::string text = R"({
    "format_version": 1,
    "num_vars": 1,
    "kinds": ["continuous"],
    "bounds": [[0, 1]]
  })";
  try {
    parse_bilp(text, InstanceFormat::BilpJson);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string message = e.what();
    CHECK(message.find("continuous") != std::string::npos);
    CHECK(message.find("integer") != std::string::npos);  // suggests the fix
  }
}

TEST_CASE("program json requires bounds for integer variables") {
  const std::string text = R"({
    "format_version": 1,
    "num_vars": 1,
    "kinds": ["integer"]
  })";
  CHECK_THROWS_AS(parse_bilp(text, InstanceFormat::BilpJson), ParseError);
}

TEST_CASE("lp text parses declarations, objective and rows") {
  const std::string text =
      "# tiny assignment model\n"
      "min: x + 2 y;\n"
      "x + y = 1;\n"
      "bin x;\n"
      "bin y;\n";
  const BilpInstance instance = parse_bilp(text, InstanceFormat::LpText);
  CHECK(instance.num_vars() == 2);
  CHECK(instance.objective()[0] == doctest::Approx(1.0));
  CHECK(instance.objective()[1] == doctest::Approx(2.0));
  REQUIRE(instance.constraints().size() == 1);
  CHECK(instance.constraints()[0].rhs == doctest::Approx(1.0));
  CHECK(instance.constraints()[0].sense == Sense::Equal);
}

TEST_CASE("lp text maximization negates into minimization form") {
  const BilpInstance instance = parse_bilp(
      "max: 3 x - 1;\nbin x;\n", InstanceFormat::LpText);
  CHECK(instance.objective()[0] == doctest::Approx(-3.0));
  CHECK(instance.objective_offset() == doctest::Approx(1.0));
}

TEST_CASE("lp text supports integer declarations and constants") {
  const BilpInstance instance = parse_bilp(
      "min: 2 * x + y;\n3 x - y >= -2;\nint x in [0, 5];\nbin y;\n",
      InstanceFormat::LpText);
  CHECK(instance.domain(0).kind == VarKind::Integer);
  CHECK(instance.domain(0).hi == 5);
  CHECK(instance.constraints()[0].sense == Sense::GreaterEqual);
  CHECK(instance.constraints()[0].rhs == doctest::Approx(-2.0));
}

TEST_CASE("lp text errors carry 1-based positions") {
  try {
    parse_bilp("min: x +;\nbin x;\n", InstanceFormat::LpText);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() >= 8);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }

  try {
    parse_bilp("min: x;\nbin x;\nbin x;\n", InstanceFormat::LpText);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("lp text requires an objective and declarations") {
  CHECK_THROWS_AS(parse_bilp("x + y <= 1;\nbin x;\nbin y;\n",
                             InstanceFormat::LpText),
                  ParseError);
  try {
    parse_bilp("min: x + z;\nbin x;\n", InstanceFormat::LpText);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'z'") != std::string::npos);
  }
}

TEST_CASE("serialization and parsing are mutually inverse") {
  SUBCASE("spin models") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GeneratorSpec spec;
      spec.kind = GeneratorKind::MaxcutRandom;
      spec.size = 8;
      spec.weight_max = 9;
      spec.seed = seed;
      const Instance instance = generate(spec);
      const std::string once =
          serialize_instance(instance, InstanceFormat::IsingJson);
      const Instance reparsed = parse_instance(once, InstanceFormat::IsingJson);
      CHECK(serialize_instance(reparsed, InstanceFormat::IsingJson) == once);
    }
  }
  SUBCASE("programs in json form") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GeneratorSpec spec;
      spec.kind = GeneratorKind::RandomBilp;
      spec.size = 5;
      spec.weight_min = -5;
      spec.weight_max = 5;
      spec.seed = seed;
      const Instance instance = generate(spec);
      const std::string once =
          serialize_instance(instance, InstanceFormat::BilpJson);
      const Instance reparsed = parse_instance(once, InstanceFormat::BilpJson);
      CHECK(serialize_instance(reparsed, InstanceFormat::BilpJson) == once);
    }
  }
  SUBCASE("programs in lp text form") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GeneratorSpec spec;
      spec.kind = GeneratorKind::Knapsack;
      spec.size = 4;
      spec.seed = seed;
      const Instance instance = generate(spec);
      const std::string once =
          serialize_instance(instance, InstanceFormat::LpText);
      const Instance reparsed = parse_instance(once, InstanceFormat::LpText);
      CHECK(serialize_instance(reparsed, InstanceFormat::LpText) == once);
      // The two serializations describe the same program.
      CHECK(serialize_instance(reparsed, InstanceFormat::BilpJson) ==
            serialize_instance(instance, InstanceFormat::BilpJson));
    }
  }
}

TEST_CASE("serialization rejects mismatched kinds") {
  const IsingModel model(2);
  CHECK_THROWS_AS(serialize_instance(model, InstanceFormat::BilpJson),
                  std::invalid_argument);
  CHECK_THROWS_AS(serialize_instance(model, InstanceFormat::LpText),
                  std::invalid_argument);
  const BilpInstance instance(1);
  CHECK_THROWS_AS(serialize_instance(instance, InstanceFormat::IsingJson),
                  std::invalid_argument);
}

TEST_CASE("number rendering survives a parse round trip") {
  CHECK(number_repr(0.1) == "0.1");
  CHECK(number_repr(1.0) == "1.0");
  CHECK(number_repr(-2.5) == "-2.5");
  CHECK(std::stod(number_repr(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::stod(number_repr(1e300)) == 1e300);
}
