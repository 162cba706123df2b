#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pbrel {

/// Coefficients and degrees are unbounded; derived degrees grow without limit.
using BigInt = boost::multiprecision::cpp_int;

using Var = std::int32_t;

struct Literal {
  Var var = 1;
  bool positive = true;

  static Literal pos(Var v) { return Literal{v, true}; }
  static Literal neg(Var v) { return Literal{v, false}; }

  Literal negated() const { return Literal{var, !positive}; }
  Literal operator~() const { return negated(); }

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

/// "x3" or "~x3".
std::string to_string(Literal l);

/// One entry of a normalized constraint: coefficient times literal.
struct Term {
  Var var = 1;
  bool positive = true;
  BigInt coef;

  Literal literal() const { return Literal{var, positive}; }
  bool operator==(const Term&) const = default;
};

/// A normalized pseudo-Boolean constraint  sum coef_i * lit_i >= degree.
///
/// Terms are kept sorted by variable with at most one term per variable and
/// strictly positive coefficients. A degree of zero is the canonical tautology
/// (always with an empty term list); an empty term list with a positive degree
/// is the canonical contradiction. Values are immutable once built.
class PBConstraint {
 public:
  /// The canonical tautology  0 >= 0.
  PBConstraint() = default;

  /// Validates and canonicalizes: sorts terms, rejects duplicate variables,
  /// non-positive coefficients and variables below one. A degree <= 0 yields
  /// the tautology.
  static PBConstraint from_terms(std::vector<Term> terms, BigInt degree);
  static PBConstraint tautology() { return PBConstraint(); }
  static PBConstraint contradiction() { return from_terms({}, 1); }

  const std::vector<Term>& terms() const { return terms_; }
  const BigInt& degree() const { return degree_; }
  const BigInt& coefficient_sum() const { return sum_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Term on variable `v`, if any (either polarity).
  const Term* find(Var v) const;
  /// Coefficient of `l` when it occurs with that exact polarity.
  std::optional<BigInt> coefficient(Literal l) const;
  bool contains(Literal l) const { return coefficient(l).has_value(); }

  BigInt max_coefficient() const;
  std::vector<Literal> literals() const;
  Var max_var() const { return terms_.empty() ? 0 : terms_.back().var; }

  bool is_tautology() const { return degree_ == 0; }
  /// True when no assignment can satisfy the constraint (negative slack).
  bool is_contradiction() const { return sum_ < degree_; }
  bool is_saturated() const;

  bool operator==(const PBConstraint&) const = default;

 private:
  std::vector<Term> terms_;
  BigInt degree_ = 0;
  BigInt sum_ = 0;
};

/// "+2 x1 +3 ~x2 >= 4" (OPB term syntax, no terminating semicolon).
std::string to_string(const PBConstraint& c);

enum class Relation { Less, LessEqual, Equal, GreaterEqual, Greater };

/// A constraint as written in the input, before normalization.
struct RawConstraint {
  struct Entry {
    BigInt coef;
    Literal literal;
    bool operator==(const Entry&) const = default;
  };
  std::vector<Entry> terms;
  Relation relation = Relation::GreaterEqual;
  BigInt rhs;

  bool operator==(const RawConstraint&) const = default;
};

/// Equivalent conjunction in normalized form. Equalities yield the >= half
/// first, then the <= half. An unsatisfiable constraint comes back as the
/// canonical contradiction.
std::vector<PBConstraint> normalize(const RawConstraint& raw);

/// A consistent conjunction of literals (never both v and ~v).
class Cube {
 public:
  Cube() = default;
  Cube(std::initializer_list<Literal> literals);
  explicit Cube(std::span<const Literal> literals);

  /// Returns false when `l` is already present; throws if ~l is.
  bool add(Literal l);
  bool contains(Literal l) const;
  const std::vector<Literal>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }

 private:
  std::vector<Literal> literals_;  // sorted
};

/// Substitutes the literals of `t` (true) and their negations (false), moving
/// constants to the degree. A degree that drops to zero gives the tautology.
PBConstraint condition(const PBConstraint& c, const Cube& t);

/// Partial assignment of variables to truth values.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var num_vars) : values_(static_cast<std::size_t>(num_vars) + 1, 0) {}
  Assignment(std::initializer_list<Literal> true_literals);

  /// Makes `l` true.
  void assign(Literal l);
  void unassign(Var v);

  std::optional<bool> value(Var v) const;
  bool is_assigned(Var v) const { return value(v).has_value(); }
  bool is_true(Literal l) const;
  bool is_false(Literal l) const { return is_true(l.negated()); }
  Var num_vars() const { return values_.empty() ? 0 : static_cast<Var>(values_.size() - 1); }

 private:
  std::vector<std::int8_t> values_;  // index = variable; 0 unassigned, 1 true, -1 false
};

/// (sum of coefficients) - degree.
BigInt slack(const PBConstraint& c);

/// (sum of coefficients of literals not falsified by `a`) - degree. Negative
/// exactly when no extension of `a` satisfies `c`.
BigInt slack_under(const PBConstraint& c, const Assignment& a);

/// Throws IncompleteAssignment if some variable of `c` is unassigned.
bool evaluate(const PBConstraint& c, const Assignment& a);

bool is_cardinality(const PBConstraint& c);
bool is_clause(const PBConstraint& c);

}  // namespace pbrel
