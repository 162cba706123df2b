#include "pbrel/pb_core.hpp"

#include <algorithm>
#include <map>

#include "pbrel/errors.hpp"

namespace pbrel {

std::string to_string(Literal l) {
  return (l.positive ? "x" : "~x") + std::to_string(l.var);
}

PBConstraint PBConstraint::from_terms(std::vector<Term> terms, BigInt degree) {
  PBConstraint c;
  if (degree <= 0) return c;
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].var < 1) throw InvalidArgument("variable index must be >= 1");
    if (terms[i].coef <= 0) throw InvalidArgument("coefficient of " + to_string(terms[i].literal()) + " must be positive");
    if (i > 0 && terms[i].var == terms[i - 1].var) {
      throw InvalidArgument("duplicate variable x" + std::to_string(terms[i].var));
    }
    c.sum_ += terms[i].coef;
  }
  c.terms_ = std::move(terms);
  c.degree_ = std::move(degree);
  return c;
}

const Term* PBConstraint::find(Var v) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), v, [](const Term& t, Var x) { return t.var < x; });
  if (it == terms_.end() || it->var != v) return nullptr;
  return &*it;
}

std::optional<BigInt> PBConstraint::coefficient(Literal l) const {
  const Term* t = find(l.var);
  if (t == nullptr || t->positive != l.positive) return std::nullopt;
  return t->coef;
}

BigInt PBConstraint::max_coefficient() const {
  BigInt m = 0;
  for (const Term& t : terms_) m = std::max(m, t.coef);
  return m;
}

std::vector<Literal> PBConstraint::literals() const {
  std::vector<Literal> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) out.push_back(t.literal());
  return out;
}

bool PBConstraint::is_saturated() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.coef <= degree_; });
}

std::string to_string(const PBConstraint& c) {
  std::string out;
  for (const Term& t : c.terms()) {
    out += '+';
    out += t.coef.str();
    out += ' ';
    out += to_string(t.literal());
    out += ' ';
  }
  out += ">= ";
  out += c.degree().str();
  return out;
}

namespace {

// sum coef_i * lit_i >= rhs with arbitrary signs, duplicates and opposite pairs.
PBConstraint normalize_ge(const std::vector<RawConstraint::Entry>& terms, int sign, BigInt rhs) {
  // Signed coefficient on the positive literal of each variable; ~v = 1 - v.
  std::map<Var, BigInt> on_positive;
  for (const auto& e : terms) {
    if (e.literal.var < 1) throw InvalidArgument("variable index must be >= 1");
    BigInt coef = sign > 0 ? e.coef : BigInt(-e.coef);
    BigInt& slot = on_positive[e.literal.var];
    if (e.literal.positive) {
      slot += coef;
    } else {
      slot -= coef;
      rhs -= coef;
    }
  }
  std::vector<Term> out;
  for (auto& [v, coef] : on_positive) {
    if (coef > 0) {
      out.push_back(Term{v, true, std::move(coef)});
    } else if (coef < 0) {
      // coef * v = |coef| * ~v - |coef|
      rhs -= coef;
      out.push_back(Term{v, false, BigInt(-coef)});
    }
  }
  PBConstraint c = PBConstraint::from_terms(std::move(out), std::move(rhs));
  if (c.is_contradiction()) return PBConstraint::contradiction();
  return c;
}

}  // namespace

std::vector<PBConstraint> normalize(const RawConstraint& raw) {
  switch (raw.relation) {
    case Relation::GreaterEqual:
      return {normalize_ge(raw.terms, 1, raw.rhs)};
    case Relation::Greater:
      return {normalize_ge(raw.terms, 1, raw.rhs + 1)};
    case Relation::LessEqual:
      return {normalize_ge(raw.terms, -1, -raw.rhs)};
    case Relation::Less:
      return {normalize_ge(raw.terms, -1, 1 - raw.rhs)};
    case Relation::Equal:
      return {normalize_ge(raw.terms, 1, raw.rhs), normalize_ge(raw.terms, -1, -raw.rhs)};
  }
  throw InvalidArgument("unknown relation");
}

Cube::Cube(std::initializer_list<Literal> literals) {
  for (Literal l : literals) add(l);
}

Cube::Cube(std::span<const Literal> literals) {
  for (Literal l : literals) add(l);
}

bool Cube::add(Literal l) {
  if (contains(l.negated())) throw InvalidArgument("inconsistent term: contains both " + to_string(l) + " and its negation");
  auto it = std::lower_bound(literals_.begin(), literals_.end(), l);
  if (it != literals_.end() && *it == l) return false;
  literals_.insert(it, l);
  return true;
}

bool Cube::contains(Literal l) const {
  return std::binary_search(literals_.begin(), literals_.end(), l);
}

PBConstraint condition(const PBConstraint& c, const Cube& t) {
  if (t.empty()) return c;
  std::vector<Term> kept;
  BigInt degree = c.degree();
  for (const Term& term : c.terms()) {
    if (t.contains(term.literal())) {
      degree -= term.coef;
    } else if (!t.contains(term.literal().negated())) {
      kept.push_back(term);
    }
  }
  return PBConstraint::from_terms(std::move(kept), std::move(degree));
}

Assignment::Assignment(std::initializer_list<Literal> true_literals) {
  for (Literal l : true_literals) assign(l);
}

void Assignment::assign(Literal l) {
  if (l.var < 1) throw InvalidArgument("variable index must be >= 1");
  auto idx = static_cast<std::size_t>(l.var);
  if (idx >= values_.size()) values_.resize(idx + 1, 0);
  values_[idx] = l.positive ? 1 : -1;
}

void Assignment::unassign(Var v) {
  auto idx = static_cast<std::size_t>(v);
  if (v >= 1 && idx < values_.size()) values_[idx] = 0;
}

std::optional<bool> Assignment::value(Var v) const {
  auto idx = static_cast<std::size_t>(v);
  if (v < 1 || idx >= values_.size() || values_[idx] == 0) return std::nullopt;
  return values_[idx] > 0;
}

bool Assignment::is_true(Literal l) const {
  auto v = value(l.var);
  return v.has_value() && *v == l.positive;
}

BigInt slack(const PBConstraint& c) {
  return c.coefficient_sum() - c.degree();
}

BigInt slack_under(const PBConstraint& c, const Assignment& a) {
  BigInt s = -c.degree();
  for (const Term& t : c.terms()) {
    if (!a.is_false(t.literal())) s += t.coef;
  }
  return s;
}

bool evaluate(const PBConstraint& c, const Assignment& a) {
  BigInt satisfied = 0;
  for (const Term& t : c.terms()) {
    if (!a.is_assigned(t.var)) throw IncompleteAssignment("variable x" + std::to_string(t.var) + " is unassigned");
    if (a.is_true(t.literal())) satisfied += t.coef;
  }
  return satisfied >= c.degree();
}

bool is_cardinality(const PBConstraint& c) {
  return std::all_of(c.terms().begin(), c.terms().end(), [](const Term& t) { return t.coef == 1; });
}

bool is_clause(const PBConstraint& c) {
  return c.degree() == 1 && is_cardinality(c);
}

}  // namespace pbrel
