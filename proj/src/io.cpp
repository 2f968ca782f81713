#include "isingkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"

#include "isingkit/errors.hpp"

namespace isingkit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::size_t kMaxDeclaredSize = 1000000;

ParseError wrap_json_error(const json::exception& e) {
  std::string message = e.what();
  std::size_t line = 0;
  std::size_t column = 0;
  const std::size_t at = message.find("at line ");
  if (at != std::string::npos) {
    if (std::sscanf(message.c_str() + at, "at line %zu, column %zu", &line,
                    &column) == 2) {
      const std::size_t colon = message.find(": ", at);
      if (colon != std::string::npos) {
        return ParseError(message.substr(colon + 2), line, column);
      }
    }
  }
  const std::size_t bracket = message.find("] ");
  return ParseError(
      bracket != std::string::npos ? message.substr(bracket + 2) : message);
}

void check_keys(const json& object, const std::set<std::string>& allowed,
                const char* where) {
  for (const auto& item : object.items()) {
    if (allowed.find(item.key()) == allowed.end()) {
      throw ParseError("unexpected key \"" + item.key() + "\" in " + where);
    }
  }
}

const json& require_key(const json& object, const char* key,
                        const char* where) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(std::string("missing \"") + key + "\" in " + where);
  }
  return *it;
}

long long require_int(const json& value, const std::string& what) {
  if (value.is_number_unsigned()) {
    const unsigned long long raw = value.get<unsigned long long>();
    if (raw > static_cast<unsigned long long>(
                  std::numeric_limits<long long>::max())) {
      throw ParseError(what + " is too large");
    }
    return static_cast<long long>(raw);
  }
  if (value.is_number_integer()) return value.get<long long>();
  throw ParseError(what + " must be an integer");
}

double require_finite(const json& value, const std::string& what) {
  if (!value.is_number()) throw ParseError(what + " must be a number");
  const double number = value.get<double>();
  if (!std::isfinite(number)) throw ParseError(what + " must be finite");
  return number;
}

std::size_t require_index(const json& value, std::size_t size,
                          const std::string& what) {
  const long long index = require_int(value, what);
  if (index < 0 || static_cast<unsigned long long>(index) >= size) {
    throw ParseError(what + " " + std::to_string(index) +
                     " is out of range for size " + std::to_string(size));
  }
  return static_cast<std::size_t>(index);
}

std::size_t parse_declared_size(const json& doc, const char* key,
                                const char* where) {
  const long long size = require_int(require_key(doc, key, where),
                                     std::string("\"") + key + "\"");
  if (size < 0) throw ParseError(std::string("\"") + key + "\" is negative");
  if (static_cast<unsigned long long>(size) > kMaxDeclaredSize) {
    throw ParseError(std::string("\"") + key + "\" exceeds the supported " +
                     std::to_string(kMaxDeclaredSize));
  }
  return static_cast<std::size_t>(size);
}

void check_format_version(const json& doc, const char* where) {
  const long long version =
      require_int(require_key(doc, "format_version", where),
                  "\"format_version\"");
  if (version != 1) {
    throw ParseError("unsupported format_version " + std::to_string(version) +
                     " (this build reads version 1)");
  }
}

IsingModel parse_ising_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("ising-json root must be an object");
  check_keys(doc, {"format_version", "num_spins", "couplings", "fields",
                   "offset"},
             "ising-json");
  check_format_version(doc, "ising-json");
  const std::size_t num_spins = parse_declared_size(doc, "num_spins",
                                                    "ising-json");

  IsingModel model(num_spins);
  if (const auto it = doc.find("couplings"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("\"couplings\" must be an array");
    std::set<SpinPair> seen;
    for (const json& entry : *it) {
      if (!entry.is_array() || entry.size() != 3) {
        throw ParseError("each coupling must be an [i, j, J] triple");
      }
      const std::size_t i = require_index(entry[0], num_spins,
                                          "coupling index");
      const std::size_t j = require_index(entry[1], num_spins,
                                          "coupling index");
      if (i == j) {
        throw ParseError("coupling connects spin " + std::to_string(i) +
                         " to itself");
      }
      const double weight = require_finite(entry[2], "coupling weight");
      const SpinPair pair{std::min(i, j), std::max(i, j)};
      if (!seen.insert(pair).second) {
        throw ParseError("duplicate coupling pair {" +
                         std::to_string(pair.first) + ", " +
                         std::to_string(pair.second) + "}");
      }
      model.add_coupling(i, j, weight);
    }
  }
  if (const auto it = doc.find("fields"); it != doc.end()) {
    if (!it->is_array() || it->size() != num_spins) {
      throw ParseError("\"fields\" must be an array of num_spins numbers");
    }
    for (std::size_t i = 0; i < num_spins; ++i) {
      model.set_field(i, require_finite((*it)[i], "field"));
    }
  }
  if (const auto it = doc.find("offset"); it != doc.end()) {
    model.set_offset(require_finite(*it, "\"offset\""));
  }
  return model;
}

BilpInstance parse_bilp_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("bilp-json root must be an object");
  check_keys(doc, {"format_version", "num_vars", "objective",
                   "objective_offset", "constraints", "bounds", "kinds"},
             "bilp-json");
  check_format_version(doc, "bilp-json");
  const std::size_t num_vars = parse_declared_size(doc, "num_vars",
                                                   "bilp-json");
  BilpInstance instance(num_vars);

  std::vector<VarKind> kinds(num_vars, VarKind::Binary);
  if (const auto it = doc.find("kinds"); it != doc.end()) {
    if (!it->is_array() || it->size() != num_vars) {
      throw ParseError("\"kinds\" must be an array of num_vars strings");
    }
    for (std::size_t i = 0; i < num_vars; ++i) {
      const json& kind = (*it)[i];
      if (!kind.is_string()) throw ParseError("variable kind must be a string");
      const std::string name = kind.get<std::string>();
      if (name == "binary") {
        kinds[i] = VarKind::Binary;
      } else if (name == "integer") {
        kinds[i] = VarKind::Integer;
      } else if (name == "continuous") {
        throw ParseError("variable " + std::to_string(i) +
                         " is continuous, which is not supported; model it "
                         "as a bounded integer so it can be binary-expanded");
      } else {
        throw ParseError("unknown variable kind \"" + name +
                         "\" (expected \"binary\" or \"integer\")");
      }
    }
  }

  const auto bounds_it = doc.find("bounds");
  if (bounds_it != doc.end() &&
      (!bounds_it->is_array() || bounds_it->size() != num_vars)) {
    throw ParseError("\"bounds\" must be an array of num_vars [lo, hi] pairs");
  }
  for (std::size_t i = 0; i < num_vars; ++i) {
    std::optional<std::pair<long long, long long>> bounds;
    if (bounds_it != doc.end()) {
      const json& pair = (*bounds_it)[i];
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError("bounds entry " + std::to_string(i) +
                         " must be a [lo, hi] pair");
      }
      bounds = {require_int(pair[0], "lower bound"),
                require_int(pair[1], "upper bound")};
      if (bounds->first > bounds->second) {
        throw ParseError("variable " + std::to_string(i) +
                         " has empty bounds [" +
                         std::to_string(bounds->first) + ", " +
                         std::to_string(bounds->second) + "]");
      }
    }
    if (kinds[i] == VarKind::Binary) {
      if (bounds && (bounds->first != 0 || bounds->second != 1)) {
        throw ParseError("binary variable " + std::to_string(i) +
                         " must have bounds [0, 1]");
      }
    } else {
      if (!bounds) {
        throw ParseError("integer variable " + std::to_string(i) +
                         " requires a bounds entry");
      }
      instance.set_domain(i, VarDomain::integer(bounds->first,
                                                bounds->second));
    }
  }

  if (const auto it = doc.find("objective"); it != doc.end()) {
    if (!it->is_array() || it->size() != num_vars) {
      throw ParseError("\"objective\" must be an array of num_vars numbers");
    }
    for (std::size_t i = 0; i < num_vars; ++i) {
      instance.set_objective(i, require_finite((*it)[i],
                                               "objective coefficient"));
    }
  }
  if (const auto it = doc.find("objective_offset"); it != doc.end()) {
    instance.set_objective_offset(require_finite(*it, "\"objective_offset\""));
  }

  if (const auto it = doc.find("constraints"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("\"constraints\" must be an array");
    for (const json& row : *it) {
      if (!row.is_object()) throw ParseError("each constraint must be an object");
      check_keys(row, {"coeffs", "sense", "rhs"}, "constraint");
      const json& coeffs = require_key(row, "coeffs", "constraint");
      if (!coeffs.is_array()) {
        throw ParseError("\"coeffs\" must be an array of [index, value] pairs");
      }
      Constraint constraint;
      for (const json& term : coeffs) {
        if (!term.is_array() || term.size() != 2) {
          throw ParseError("each coefficient must be an [index, value] pair");
        }
        constraint.terms.push_back(
            {require_index(term[0], num_vars, "coefficient index"),
             require_finite(term[1], "coefficient value")});
      }
      const json& sense = require_key(row, "sense", "constraint");
      if (!sense.is_string()) throw ParseError("\"sense\" must be a string");
      const std::string name = sense.get<std::string>();
      if (name == "<=") {
        constraint.sense = Sense::LessEqual;
      } else if (name == ">=") {
        constraint.sense = Sense::GreaterEqual;
      } else if (name == "=") {
        constraint.sense = Sense::Equal;
      } else {
        throw ParseError("unknown sense \"" + name +
                         "\" (expected \"<=\", \">=\" or \"=\")");
      }
      constraint.rhs = require_finite(require_key(row, "rhs", "constraint"),
                                      "\"rhs\"");
      instance.add_constraint(std::move(constraint));
    }
  }
  return instance;
}

// lp-text: a deliberately small LP-like grammar. Statements end with ';',
// '#' comments run to end of line. See io.hpp for the shape.

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  double value = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_blank();
    Token token;
    token.line = line_;
    token.column = column_;
    if (pos_ >= text_.size()) return token;

    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      token.kind = Token::Kind::Ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        token.text.push_back(text_[pos_]);
        step();
      }
      return token;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      return lex_number(token);
    }
    if (c == '<' || c == '>') {
      step();
      if (pos_ >= text_.size() || text_[pos_] != '=') {
        throw ParseError(std::string("expected '") + c + "='", token.line,
                         token.column);
      }
      step();
      token.kind = Token::Kind::Punct;
      token.text = std::string(1, c) + "=";
      return token;
    }
    if (std::string(";:,[]+-*=").find(c) != std::string::npos) {
      step();
      token.kind = Token::Kind::Punct;
      token.text = std::string(1, c);
      return token;
    }
    throw ParseError(std::string("unexpected character '") + c + "'",
                     token.line, token.column);
  }

 private:
  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
  }

  Token lex_number(Token token) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.')) {
      step();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      step();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        step();
      }
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("malformed exponent", token.line, token.column);
      }
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        step();
      }
    }
    const std::string span = text_.substr(start, pos_ - start);
    try {
      std::size_t used = 0;
      token.value = std::stod(span, &used);
      if (used != span.size()) {
        throw ParseError("invalid number '" + span + "'", token.line,
                         token.column);
      }
    } catch (const std::out_of_range&) {
      throw ParseError("number '" + span + "' is out of range", token.line,
                       token.column);
    } catch (const std::invalid_argument&) {
      throw ParseError("invalid number '" + span + "'", token.line,
                       token.column);
    }
    token.kind = Token::Kind::Number;
    token.text = span;
    return token;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool is_reserved(const std::string& word) {
  return word == "min" || word == "max" || word == "int" || word == "bin" ||
         word == "in";
}

class LpParser {
 public:
  explicit LpParser(const std::string& text) : lexer_(text) { advance(); }

  BilpInstance parse() {
    while (current_.kind != Token::Kind::End) statement();
    return build();
  }

 private:
  struct Expr {
    std::vector<std::pair<std::size_t, double>> terms;
    double constant = 0.0;
  };

  void advance() { current_ = lexer_.next(); }

  bool at_punct(const char* spelling) const {
    return current_.kind == Token::Kind::Punct && current_.text == spelling;
  }

  void expect_punct(const char* spelling) {
    if (!at_punct(spelling)) {
      throw ParseError(std::string("expected '") + spelling + "'",
                       current_.line, current_.column);
    }
    advance();
  }

  std::size_t intern(const Token& name) {
    if (is_reserved(name.text)) {
      throw ParseError("'" + name.text + "' is a reserved word", name.line,
                       name.column);
    }
    const auto it = index_.find(name.text);
    if (it != index_.end()) return it->second;
    const std::size_t id = names_.size();
    index_.emplace(name.text, id);
    names_.push_back(name.text);
    declared_.push_back(std::nullopt);
    first_seen_.push_back(name);
    return id;
  }

  void statement() {
    if (current_.kind == Token::Kind::Ident) {
      if (current_.text == "min" || current_.text == "max") {
        objective_statement();
        return;
      }
      if (current_.text == "int") {
        integer_declaration();
        return;
      }
      if (current_.text == "bin") {
        binary_declaration();
        return;
      }
    }
    constraint_statement();
  }

  Expr parse_expr() {
    Expr expr;
    double sign = 1.0;
    if (at_punct("+")) {
      advance();
    } else if (at_punct("-")) {
      sign = -1.0;
      advance();
    }
    while (true) {
      if (current_.kind == Token::Kind::Number) {
        const double value = current_.value;
        advance();
        if (at_punct("*")) {
          advance();
          if (current_.kind != Token::Kind::Ident) {
            throw ParseError("expected a variable after '*'", current_.line,
                             current_.column);
          }
          expr.terms.emplace_back(intern(current_), sign * value);
          advance();
        } else if (current_.kind == Token::Kind::Ident &&
                   !is_reserved(current_.text)) {
          expr.terms.emplace_back(intern(current_), sign * value);
          advance();
        } else {
          expr.constant += sign * value;
        }
      } else if (current_.kind == Token::Kind::Ident) {
        expr.terms.emplace_back(intern(current_), sign);
        advance();
      } else {
        throw ParseError("expected a number or variable", current_.line,
                         current_.column);
      }
      if (at_punct("+")) {
        sign = 1.0;
        advance();
      } else if (at_punct("-")) {
        sign = -1.0;
        advance();
      } else {
        break;
      }
    }
    return expr;
  }

  double parse_signed_number() {
    double sign = 1.0;
    if (at_punct("+")) {
      advance();
    } else if (at_punct("-")) {
      sign = -1.0;
      advance();
    }
    if (current_.kind != Token::Kind::Number) {
      throw ParseError("expected a number", current_.line, current_.column);
    }
    const double value = sign * current_.value;
    advance();
    return value;
  }

  long long parse_signed_integer() {
    const Token at = current_;
    const double value = parse_signed_number();
    double integral = 0.0;
    if (std::modf(value, &integral) != 0.0 || std::abs(value) > 9.0e15) {
      throw ParseError("expected an integer", at.line, at.column);
    }
    return static_cast<long long>(value);
  }

  void objective_statement() {
    if (have_objective_) {
      throw ParseError("duplicate objective", current_.line, current_.column);
    }
    have_objective_ = true;
    maximize_ = current_.text == "max";
    advance();
    expect_punct(":");
    Expr expr = parse_expr();
    expect_punct(";");
    objective_ = std::move(expr);
  }

  void constraint_statement() {
    Expr lhs = parse_expr();
    Sense sense;
    if (at_punct("<=")) {
      sense = Sense::LessEqual;
    } else if (at_punct(">=")) {
      sense = Sense::GreaterEqual;
    } else if (at_punct("=")) {
      sense = Sense::Equal;
    } else {
      throw ParseError("expected '<=', '>=' or '='", current_.line,
                       current_.column);
    }
    advance();
    const double rhs = parse_signed_number();
    expect_punct(";");
    rows_.push_back({std::move(lhs), sense, rhs});
  }

  void declare(const Token& name, VarDomain domain) {
    const std::size_t id = intern(name);
    if (declared_[id]) {
      throw ParseError("duplicate declaration of '" + name.text + "'",
                       name.line, name.column);
    }
    declared_[id] = domain;
  }

  void expect_keyword(const char* word) {
    if (current_.kind != Token::Kind::Ident || current_.text != word) {
      throw ParseError(std::string("expected '") + word + "'", current_.line,
                       current_.column);
    }
    advance();
  }

  void integer_declaration() {
    advance();  // int
    if (current_.kind != Token::Kind::Ident) {
      throw ParseError("expected a variable name", current_.line,
                       current_.column);
    }
    const Token name = current_;
    advance();
    expect_keyword("in");
    expect_punct("[");
    const Token bounds_at = current_;
    const long long lo = parse_signed_integer();
    expect_punct(",");
    const long long hi = parse_signed_integer();
    expect_punct("]");
    expect_punct(";");
    if (lo > hi) {
      throw ParseError("empty domain [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]",
                       bounds_at.line, bounds_at.column);
    }
    declare(name, VarDomain::integer(lo, hi));
  }

  void binary_declaration() {
    advance();  // bin
    if (current_.kind != Token::Kind::Ident) {
      throw ParseError("expected a variable name", current_.line,
                       current_.column);
    }
    const Token name = current_;
    advance();
    expect_punct(";");
    declare(name, VarDomain::binary());
  }

  BilpInstance build() {
    if (!have_objective_) {
      throw ParseError("missing objective (expected 'min:' or 'max:')");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!declared_[i]) {
        throw ParseError("unknown variable '" + names_[i] +
                             "' (missing bin/int declaration)",
                         first_seen_[i].line, first_seen_[i].column);
      }
    }

    BilpInstance instance(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      instance.set_domain(i, *declared_[i]);
    }
    const double flip = maximize_ ? -1.0 : 1.0;
    std::map<std::size_t, double> coeffs;
    for (const auto& [var, coeff] : objective_.terms) coeffs[var] += coeff;
    for (const auto& [var, coeff] : coeffs) {
      instance.set_objective(var, flip * coeff);
    }
    instance.set_objective_offset(flip * objective_.constant);
    for (Row& row : rows_) {
      Constraint constraint;
      constraint.sense = row.sense;
      constraint.rhs = row.rhs - row.lhs.constant;
      for (const auto& [var, coeff] : row.lhs.terms) {
        constraint.terms.push_back({var, coeff});
      }
      instance.add_constraint(std::move(constraint));
    }
    return instance;
  }

  struct Row {
    Expr lhs;
    Sense sense;
    double rhs;
  };

  Lexer lexer_;
  Token current_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> names_;
  std::vector<std::optional<VarDomain>> declared_;
  std::vector<Token> first_seen_;
  bool have_objective_ = false;
  bool maximize_ = false;
  Expr objective_;
  std::vector<Row> rows_;
};

std::string sense_name(Sense sense) {
  switch (sense) {
    case Sense::LessEqual:
      return "<=";
    case Sense::GreaterEqual:
      return ">=";
    case Sense::Equal:
      return "=";
  }
  return "=";
}

std::string serialize_ising_json(const IsingModel& model) {
  ordered_json doc;
  doc["format_version"] = 1;
  doc["num_spins"] = model.num_spins();
  ordered_json couplings = ordered_json::array();
  for (const auto& [pair, weight] : model.couplings()) {
    couplings.push_back({pair.first, pair.second, weight});
  }
  doc["couplings"] = std::move(couplings);
  doc["fields"] = model.fields();
  doc["offset"] = model.offset();
  return doc.dump(2) + "\n";
}

std::string serialize_bilp_json(const BilpInstance& instance) {
  ordered_json doc;
  doc["format_version"] = 1;
  doc["num_vars"] = instance.num_vars();
  doc["objective"] = instance.objective();
  doc["objective_offset"] = instance.objective_offset();
  ordered_json constraints = ordered_json::array();
  for (const Constraint& row : instance.constraints()) {
    ordered_json coeffs = ordered_json::array();
    for (const LinearTerm& term : row.terms) {
      coeffs.push_back({term.var, term.coeff});
    }
    constraints.push_back({{"coeffs", std::move(coeffs)},
                           {"sense", sense_name(row.sense)},
                           {"rhs", row.rhs}});
  }
  doc["constraints"] = std::move(constraints);
  ordered_json bounds = ordered_json::array();
  ordered_json kinds = ordered_json::array();
  for (const VarDomain& domain : instance.domains()) {
    bounds.push_back({domain.lo, domain.hi});
    kinds.push_back(domain.kind == VarKind::Binary ? "binary" : "integer");
  }
  doc["bounds"] = std::move(bounds);
  doc["kinds"] = std::move(kinds);
  return doc.dump(2) + "\n";
}

void append_linear(std::string& out,
                   const std::vector<std::pair<std::size_t, double>>& terms,
                   double constant) {
  bool first = true;
  for (const auto& [var, coeff] : terms) {
    if (first) {
      if (coeff < 0.0) out += "-";
      first = false;
    } else {
      out += coeff < 0.0 ? " - " : " + ";
    }
    out += number_repr(std::abs(coeff)) + " * x" + std::to_string(var);
  }
  if (constant != 0.0 || first) {
    if (first) {
      if (constant < 0.0) out += "-";
    } else {
      out += constant < 0.0 ? " - " : " + ";
    }
    out += number_repr(std::abs(constant));
  }
}

std::string serialize_lp_text(const BilpInstance& instance) {
  // Declarations come first so variable indices survive the round trip:
  // the parser numbers variables by first appearance.
  std::string out;
  for (std::size_t i = 0; i < instance.num_vars(); ++i) {
    const VarDomain& domain = instance.domain(i);
    if (domain.kind == VarKind::Binary) {
      out += "bin x" + std::to_string(i) + ";\n";
    } else {
      out += "int x" + std::to_string(i) + " in [" +
             std::to_string(domain.lo) + ", " + std::to_string(domain.hi) +
             "];\n";
    }
  }
  out += "min: ";
  std::vector<std::pair<std::size_t, double>> terms;
  for (std::size_t i = 0; i < instance.num_vars(); ++i) {
    if (instance.objective()[i] != 0.0) {
      terms.emplace_back(i, instance.objective()[i]);
    }
  }
  append_linear(out, terms, instance.objective_offset());
  out += ";\n";
  for (const Constraint& row : instance.constraints()) {
    terms.clear();
    for (const LinearTerm& term : row.terms) {
      terms.emplace_back(term.var, term.coeff);
    }
    append_linear(out, terms, 0.0);
    out += " " + sense_name(row.sense) + " ";
    if (row.rhs < 0.0) {
      out += "-" + number_repr(-row.rhs);
    } else {
      out += number_repr(row.rhs);
    }
    out += ";\n";
  }
  return out;
}

}  // namespace

std::optional<InstanceFormat> format_from_name(const std::string& name) {
  if (name == "bilp-json") return InstanceFormat::BilpJson;
  if (name == "ising-json") return InstanceFormat::IsingJson;
  if (name == "lp-text") return InstanceFormat::LpText;
  return std::nullopt;
}

std::string format_name(InstanceFormat format) {
  switch (format) {
    case InstanceFormat::BilpJson:
      return "bilp-json";
    case InstanceFormat::IsingJson:
      return "ising-json";
    case InstanceFormat::LpText:
      return "lp-text";
  }
  return "bilp-json";
}

Instance parse_instance(const std::string& text, InstanceFormat format) {
  if (format == InstanceFormat::LpText) {
    return LpParser(text).parse();
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw wrap_json_error(e);
  }
  try {
    if (format == InstanceFormat::IsingJson) return parse_ising_json(doc);
    return parse_bilp_json(doc);
  } catch (const json::exception& e) {
    throw wrap_json_error(e);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_instance(const Instance& instance,
                               InstanceFormat format) {
  if (const auto* model = std::get_if<IsingModel>(&instance)) {
    if (format != InstanceFormat::IsingJson) {
      throw std::invalid_argument("a spin model serializes to ising-json only");
    }
    return serialize_ising_json(*model);
  }
  const auto& bilp = std::get<BilpInstance>(instance);
  switch (format) {
    case InstanceFormat::BilpJson:
      return serialize_bilp_json(bilp);
    case InstanceFormat::LpText:
      return serialize_lp_text(bilp);
    case InstanceFormat::IsingJson:
      throw std::invalid_argument(
          "an integer program serializes to bilp-json or lp-text");
  }
  throw std::invalid_argument("unknown format");
}

std::string number_repr(double value) { return json(value).dump(); }

}  // namespace isingkit
