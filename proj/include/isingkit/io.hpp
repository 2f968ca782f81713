#pragma once

#include <optional>
#include <string>
#include <variant>

#include "isingkit/ising.hpp"
#include "isingkit/reduction.hpp"

namespace isingkit {

enum class InstanceFormat { BilpJson, IsingJson, LpText };

std::optional<InstanceFormat> format_from_name(const std::string& name);
std::string format_name(InstanceFormat format);

/// A parsed problem: either an integer program or a bare spin model.
using Instance = std::variant<BilpInstance, IsingModel>;

/// Parses `text` in the declared format. ising-json yields an IsingModel,
/// the other two yield a BilpInstance (lp-text maximization objectives are
/// negated into minimization form). Malformed input throws ParseError with
/// a 1-based line/column where one is known.
///
/// Formats:
///   ising-json: {"format_version": 1, "num_spins": V,
///                "couplings": [[i, j, J], ...], "fields": [h...],
///                "offset": real} with couplings/fields/offset optional;
///                repeating a pair in either order is an error.
///   bilp-json:  {"format_version": 1, "num_vars": N, "objective": [c...],
///                "objective_offset": real,
///                "constraints": [{"coeffs": [[i, s], ...],
///                                 "sense": "<="|">="|"=", "rhs": real}, ...],
///                "bounds": [[lo, hi], ...], "kinds": ["binary"|"integer"...]}
///                with everything after num_vars optional; integer kinds
///                require a bounds entry; unknown keys are rejected.
///   lp-text:    statements terminated by ';' with '#' comments:
///                  min: 3 x + 2 y;     (or max:; one objective required)
///                  x + 2 y <= 5;       (senses <=, >=, =)
///                  bin x;
///                  int y in [0, 5];
///                Every referenced variable needs a declaration somewhere in
///                the file; indices follow first appearance in the text.
Instance parse_instance(const std::string& text, InstanceFormat format);

/// Inverse of parse_instance for matching kinds: IsingModel serializes to
/// ising-json; BilpInstance to bilp-json or lp-text. Mismatched pairs throw
/// std::invalid_argument. parse(serialize(x)) reproduces x structurally.
std::string serialize_instance(const Instance& instance,
                               InstanceFormat format);

/// Shortest decimal form of `value` that parses back to the same double.
/// Reports use it everywhere so JSON and CSV print numbers identically.
std::string number_repr(double value);

}  // namespace isingkit
