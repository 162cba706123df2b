#include "pbrel/opb_io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "pbrel/errors.hpp"

namespace pbrel {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  std::size_t line() const { return line_; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  std::string rest_of_line() {
    std::string out;
    while (!at_end() && peek() != '\n') {
      out += peek();
      advance();
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, col_); }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      out += peek();
      advance();
    }
    return out;
  }

  BigInt integer(const char* what) {
    std::string text;
    if (peek() == '+' || peek() == '-') {
      if (peek() == '-') text += '-';
      advance();
    }
    const std::string d = digits();
    if (d.empty()) fail(std::string("expected ") + what);
    return BigInt(text + d);
  }

  Literal literal() {
    bool positive = true;
    if (peek() == '~') {
      positive = false;
      advance();
    }
    if (peek() != 'x') fail("expected literal of the form x<index> or ~x<index>");
    advance();
    const std::size_t col = col_;
    const std::string d = digits();
    if (d.empty()) fail("expected variable index after 'x'");
    const BigInt index(d);
    if (index < 1) throw ParseError("variable index must be positive", line_, col);
    if (index > std::numeric_limits<Var>::max()) throw ParseError("variable index too large", line_, col);
    return Literal{static_cast<Var>(index), positive};
  }

  Relation relation() {
    std::string op;
    while (!at_end() && (peek() == '<' || peek() == '>' || peek() == '=' || peek() == '!')) {
      op += peek();
      advance();
    }
    if (op == ">=") return Relation::GreaterEqual;
    if (op == "<=") return Relation::LessEqual;
    if (op == "=") return Relation::Equal;
    fail("unknown relation '" + op + "'");
  }

  // Terms, relation, right-hand side and (optionally) the ';'.
  RawConstraint constraint(bool require_semicolon) {
    if (starts_with("min:") || starts_with("max:")) fail("objective functions are not supported");
    RawConstraint out;
    while (true) {
      skip_space();
      const char c = peek();
      if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
        BigInt coef = integer("coefficient");
        skip_space();
        Literal l = literal();
        out.terms.push_back({std::move(coef), l});
        skip_space();
        if (peek() == 'x' || peek() == '~') fail("non-linear products are not supported");
      } else if (c == '>' || c == '<' || c == '=' || c == '!') {
        break;
      } else if (c == 'x' || c == '~') {
        fail("expected coefficient before literal");
      } else if (at_end()) {
        fail("unexpected end of input, expected relation");
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    out.relation = relation();
    skip_space();
    out.rhs = integer("integer right-hand side");
    skip_space();
    if (peek() == ';') {
      advance();
    } else if (require_semicolon) {
      fail("expected ';'");
    }
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::GreaterEqual:
      return ">=";
    case Relation::LessEqual:
      return "<=";
    case Relation::Equal:
      return "=";
    case Relation::Greater:
      return ">";
    case Relation::Less:
      return "<";
  }
  return "?";
}

bool is_tautology(const RawConstraint& c) {
  const std::vector<PBConstraint> parts = normalize(c);
  return std::all_of(parts.begin(), parts.end(), [](const PBConstraint& p) { return p.is_tautology(); });
}

std::string header(std::uint64_t vars, std::uint64_t constraints) {
  return "* #variable= " + std::to_string(vars) + " #constraint= " + std::to_string(constraints) + "\n";
}

constexpr const char* kTautologyMarker = "* tautology omitted\n";

Literal parse_literal(const std::string& text) {
  Lexer lex(text);
  const Literal l = lex.literal();
  if (!lex.at_end()) lex.fail("trailing characters after literal");
  return l;
}

std::uint64_t as_id(const nlohmann::ordered_json& j, const char* field) {
  if (!j.is_number_unsigned()) throw InvalidArgument(std::string("field '") + field + "' must be a non-negative integer");
  return j.get<std::uint64_t>();
}

BigInt as_bigint(const nlohmann::ordered_json& j, const char* field) {
  if (!j.is_string()) throw InvalidArgument(std::string("field '") + field + "' must be a decimal string");
  const std::string s = j.get<std::string>();
  Lexer lex(s);
  BigInt v = lex.integer(field);
  if (!lex.at_end()) throw InvalidArgument(std::string("field '") + field + "' is not an integer");
  return v;
}

TraceStep parse_record(const std::string& line) {
  const auto j = nlohmann::ordered_json::parse(line);
  if (!j.is_object()) throw InvalidArgument("record must be a JSON object");
  for (const char* required : {"id", "rule", "operands", "result"}) {
    if (!j.contains(required)) throw InvalidArgument(std::string("missing field '") + required + "'");
  }
  TraceStep s;
  s.id = as_id(j["id"], "id");
  if (!j["rule"].is_string()) throw InvalidArgument("field 'rule' must be a string");
  s.rule = parse_rule(j["rule"].get<std::string>());
  if (!j["operands"].is_array()) throw InvalidArgument("field 'operands' must be an array");
  for (const auto& op : j["operands"]) s.operands.push_back(as_id(op, "operands"));
  if (j.contains("pivot")) {
    const std::uint64_t v = as_id(j["pivot"], "pivot");
    if (v < 1 || v > static_cast<std::uint64_t>(std::numeric_limits<Var>::max())) {
      throw InvalidArgument("pivot variable out of range");
    }
    s.pivot = static_cast<Var>(v);
  }
  if (j.contains("divisor")) s.divisor = as_bigint(j["divisor"], "divisor");
  if (j.contains("multiplier")) s.multiplier = as_bigint(j["multiplier"], "multiplier");
  if (j.contains("literals")) {
    if (!j["literals"].is_array()) throw InvalidArgument("field 'literals' must be an array");
    for (const auto& l : j["literals"]) {
      if (!l.is_string()) throw InvalidArgument("literals must be strings");
      s.literals.push_back(parse_literal(l.get<std::string>()));
    }
  }
  if (j.contains("strategy")) {
    if (!j["strategy"].is_string()) throw InvalidArgument("field 'strategy' must be a string");
    s.strategy = parse_removal_strategy(j["strategy"].get<std::string>());
  }
  if (j.contains("source")) s.source = as_id(j["source"], "source");
  if (!j["result"].is_string()) throw InvalidArgument("field 'result' must be a string");
  const RawConstraint raw = parse_constraint(j["result"].get<std::string>());
  if (raw.relation != Relation::GreaterEqual) throw InvalidArgument("result must be a >= constraint");
  s.result = normalize(raw).front();
  return s;
}

template <typename OnError>
DerivationTrace read_records(std::string_view text, OnError on_error) {
  DerivationTrace trace;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string line(text.substr(start, end - start));
    start = end + 1;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    try {
      trace.steps.push_back(parse_record(line));
    } catch (const nlohmann::json::exception& e) {
      on_error(line_no, std::string("malformed JSON: ") + e.what());
    } catch (const Error& e) {
      on_error(line_no, e.what());
    }
  }
  return trace;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Var OpbDocument::max_var() const {
  Var m = 0;
  for (const RawConstraint& c : constraints) {
    for (const auto& e : c.terms) m = std::max(m, e.literal.var);
  }
  return m;
}

OpbDocument parse_opb(std::string_view text) {
  OpbDocument doc;
  Lexer lex(text);
  while (true) {
    lex.skip_space();
    if (lex.at_end()) break;
    if (lex.peek() == '*') {
      lex.advance();
      std::string comment = lex.rest_of_line();
      if (doc.comments.empty() && doc.constraints.empty() && comment.find("#variable=") != std::string::npos) {
        static const std::regex vars(R"(#variable=\s*(\d+))");
        static const std::regex cons(R"(#constraint=\s*(\d+))");
        std::smatch m;
        if (std::regex_search(comment, m, vars)) doc.declared_variables = std::stoull(m[1]);
        if (std::regex_search(comment, m, cons)) doc.declared_constraints = std::stoull(m[1]);
      }
      doc.comments.push_back(std::move(comment));
      continue;
    }
    doc.constraints.push_back(lex.constraint(true));
  }
  if (doc.declared_variables && static_cast<std::uint64_t>(doc.max_var()) > *doc.declared_variables) {
    doc.warnings.push_back("header declares " + std::to_string(*doc.declared_variables) +
                           " variables but x" + std::to_string(doc.max_var()) + " is used");
  }
  if (doc.declared_constraints && *doc.declared_constraints != doc.constraints.size()) {
    doc.warnings.push_back("header declares " + std::to_string(*doc.declared_constraints) + " constraints, found " +
                           std::to_string(doc.constraints.size()));
  }
  return doc;
}

RawConstraint parse_constraint(std::string_view text) {
  Lexer lex(text);
  lex.skip_space();
  RawConstraint c = lex.constraint(false);
  lex.skip_space();
  if (!lex.at_end()) lex.fail("trailing input after constraint");
  return c;
}

std::vector<PBConstraint> parse_normalized(std::string_view text) { return normalize(parse_constraint(text)); }

std::vector<PBConstraint> normalized_constraints(const OpbDocument& doc) {
  std::vector<PBConstraint> out;
  for (const RawConstraint& raw : doc.constraints) {
    for (PBConstraint& c : normalize(raw)) out.push_back(std::move(c));
  }
  return out;
}

RawConstraint to_raw(const PBConstraint& c) {
  RawConstraint raw;
  for (const Term& t : c.terms()) raw.terms.push_back({t.coef, t.literal()});
  raw.relation = Relation::GreaterEqual;
  raw.rhs = c.degree();
  return raw;
}

std::string write_constraint(const RawConstraint& c) {
  std::vector<RawConstraint::Entry> terms = c.terms;
  std::stable_sort(terms.begin(), terms.end(),
                   [](const RawConstraint::Entry& a, const RawConstraint::Entry& b) { return a.literal < b.literal; });
  std::string out;
  for (const auto& e : terms) {
    if (e.coef >= 0) out += '+';
    out += e.coef.str();
    out += ' ';
    out += to_string(e.literal);
    out += ' ';
  }
  out += relation_symbol(c.relation);
  out += ' ';
  out += c.rhs.str();
  out += " ;";
  return out;
}

std::string write_opb(const OpbDocument& doc) {
  std::string body;
  std::uint64_t written = 0;
  for (const RawConstraint& c : doc.constraints) {
    if (is_tautology(c)) {
      body += kTautologyMarker;
      continue;
    }
    body += write_constraint(c);
    body += '\n';
    ++written;
  }
  const std::uint64_t vars = std::max<std::uint64_t>(doc.declared_variables.value_or(0), doc.max_var());
  return header(vars, written) + body;
}

std::string write_opb(std::span<const PBConstraint> constraints, Var num_vars) {
  std::string body;
  std::uint64_t written = 0;
  Var vars = num_vars;
  for (const PBConstraint& c : constraints) {
    vars = std::max(vars, c.max_var());
    if (c.is_tautology()) {
      body += kTautologyMarker;
      continue;
    }
    body += write_constraint(to_raw(c));
    body += '\n';
    ++written;
  }
  return header(static_cast<std::uint64_t>(vars), written) + body;
}

std::string write_trace(const DerivationTrace& trace) {
  std::string out;
  for (const TraceStep& s : trace.steps) {
    nlohmann::ordered_json j;
    j["id"] = s.id;
    j["rule"] = to_string(s.rule);
    j["operands"] = s.operands;
    if (s.pivot) j["pivot"] = *s.pivot;
    if (s.divisor) j["divisor"] = s.divisor->str();
    if (s.multiplier) j["multiplier"] = s.multiplier->str();
    if (!s.literals.empty()) {
      auto& lits = j["literals"] = nlohmann::ordered_json::array();
      for (Literal l : s.literals) lits.push_back(to_string(l));
    }
    if (s.strategy) j["strategy"] = to_string(*s.strategy);
    if (s.source) j["source"] = *s.source;
    j["result"] = to_string(s.result);
    out += j.dump();
    out += '\n';
  }
  return out;
}

DerivationTrace read_trace(std::string_view text) {
  return read_records(text, [](std::size_t line, const std::string& message) -> void {
    throw ParseError(message, line, 1);
  });
}

TraceReadResult read_trace_lenient(std::string_view text) {
  TraceReadResult result;
  result.trace = read_records(text, [&](std::size_t line, const std::string& message) {
    result.errors.push_back("line " + std::to_string(line) + ": " + message);
  });
  return result;
}

std::string write_stats_csv(std::span<const InstanceStats> rows) {
  std::ostringstream out;
  out << "instance,family,constraints_dumped,constraints_with_irrelevant,irrelevant_literals_total,"
         "checks_performed,skipped_constraints,cancellations\n";
  for (const InstanceStats& r : rows) {
    out << csv_field(r.instance) << ',' << csv_field(r.family) << ',' << r.constraints_dumped << ','
        << r.constraints_with_irrelevant << ',' << r.irrelevant_literals_total << ',' << r.checks_performed << ','
        << r.skipped_constraints << ',' << r.cancellations << '\n';
  }
  return out.str();
}

std::string family_of(const std::string& path) {
  return std::filesystem::path(path).parent_path().filename().string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed to write '" + path + "'");
}

}  // namespace pbrel
