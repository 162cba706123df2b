#include "pbrel/relevance.hpp"

#include <algorithm>
#include <limits>

#include "pbrel/cutting_planes.hpp"
#include "pbrel/errors.hpp"

namespace pbrel {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ProvenIrrelevant:
      return "irrelevant";
    case Verdict::Relevant:
      return "relevant";
    case Verdict::NotProven:
      return "not-proven";
  }
  return "?";
}

void DetectorConfig::validate() const {
  if (moduli.empty()) throw InvalidArgument("detector needs at least one modulus");
  for (std::uint32_t p : moduli) {
    if (p < 2) throw InvalidArgument("modulus must be >= 2, got " + std::to_string(p));
  }
  if (max_literals < 1) throw InvalidArgument("max_literals must be >= 1");
}

namespace {

const BigInt& coefficient_or_throw(const PBConstraint& c, Literal l) {
  const Term* t = c.find(l.var);
  if (t == nullptr || t->positive != l.positive) {
    throw LiteralNotPresent(to_string(l) + " does not occur in " + to_string(c));
  }
  return t->coef;
}

std::vector<BigInt> other_coefficients(const PBConstraint& c, Literal l) {
  std::vector<BigInt> out;
  out.reserve(c.size());
  for (const Term& t : c.terms()) {
    if (t.var != l.var) out.push_back(t.coef);
  }
  return out;
}

}  // namespace

Window irrelevance_window(const PBConstraint& c, Literal l) {
  const BigInt& alpha = coefficient_or_throw(c, l);
  return Window{c.degree() - alpha, c.degree() - 1};
}

bool exact_is_irrelevant(const PBConstraint& c, Literal l, std::uint64_t budget) {
  Window w = irrelevance_window(c, l);
  // The empty sub-multiset reaches 0.
  if (w.lo <= 0) return false;
  const BigInt cells = BigInt(c.size()) * c.degree();
  if (cells > budget) {
    throw OracleCapacityExceeded("exact relevance check needs " + cells.str() + " table cells, budget is " +
                                 std::to_string(budget));
  }
  const auto width = c.degree().convert_to<std::size_t>();  // sums 0 .. degree-1
  boost::dynamic_bitset<std::uint64_t> reach(width);
  reach.set(0);
  for (const Term& t : c.terms()) {
    if (t.var == l.var || t.coef >= c.degree()) continue;
    reach |= reach << t.coef.convert_to<std::size_t>();
  }
  const auto lo = w.lo.convert_to<std::size_t>();
  const auto next = reach.find_next(lo - 1);
  return next == boost::dynamic_bitset<std::uint64_t>::npos || next >= width;
}

ResidueSet::ResidueSet(std::uint32_t modulus) : bits_(modulus) {
  if (modulus < 2) throw InvalidArgument("modulus must be >= 2");
  bits_.set(0);
}

std::vector<std::uint32_t> ResidueSet::residues() const {
  std::vector<std::uint32_t> out;
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<std::uint64_t>::npos; i = bits_.find_next(i)) {
    out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

void ResidueSet::include(std::uint32_t r) {
  r %= modulus();
  if (r == 0) return;
  const auto old = bits_;
  bits_ |= old << r;
  bits_ |= old >> (modulus() - r);
}

ResidueSet modular_reachable(std::span<const BigInt> coefficients, std::uint32_t modulus) {
  ResidueSet reach(modulus);
  for (const BigInt& a : coefficients) {
    if (reach.full()) break;
    reach.include(static_cast<std::uint32_t>(a % modulus));
  }
  return reach;
}

Verdict incomplete_is_irrelevant(const PBConstraint& c, Literal l, const DetectorConfig& cfg) {
  Window w = irrelevance_window(c, l);
  if (w.lo <= 0) return Verdict::NotProven;
  const BigInt length = w.hi - w.lo + 1;

  std::vector<BigInt> others = other_coefficients(c, l);
  std::vector<ResidueSet> sets;
  std::vector<std::uint32_t> residue;  // residue of the current target per usable modulus
  for (std::uint32_t p : cfg.moduli) {
    if (length >= p) continue;
    sets.push_back(modular_reachable(others, p));
    if (sets.back().full()) {
      sets.pop_back();
      continue;
    }
    residue.push_back(static_cast<std::uint32_t>(w.lo % p));
  }
  if (sets.empty()) return Verdict::NotProven;

  const auto targets = length.convert_to<std::uint64_t>();
  for (std::uint64_t i = 0; i < targets; ++i) {
    bool ruled_out = false;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      if (!sets[k].contains(residue[k])) ruled_out = true;
      residue[k] = residue[k] + 1 == sets[k].modulus() ? 0 : residue[k] + 1;
    }
    if (!ruled_out) return Verdict::NotProven;
  }
  return Verdict::ProvenIrrelevant;
}

std::vector<Literal> RelevanceReport::irrelevant() const {
  std::vector<Literal> out;
  for (const auto& [lit, v] : verdicts) {
    if (v == Verdict::ProvenIrrelevant) out.push_back(lit);
  }
  return out;
}

RelevanceReport detect_all(const PBConstraint& input, const DetectorConfig& cfg, bool oracle) {
  cfg.validate();
  RelevanceReport report;
  if (input.size() > cfg.max_literals) {
    report.skipped = true;
    for (const Term& t : input.terms()) report.verdicts.emplace(t.literal(), Verdict::NotProven);
    return report;
  }
  const PBConstraint c = saturate(input);

  std::map<BigInt, std::vector<Literal>> by_coefficient;
  for (const Term& t : c.terms()) by_coefficient[t.coef].push_back(t.literal());

  std::optional<Verdict> rest;
  for (const auto& [coef, lits] : by_coefficient) {
    Verdict v;
    if (rest) {
      v = *rest;
    } else {
      ++report.checks;
      if (oracle) {
        v = exact_is_irrelevant(c, lits.front(), cfg.oracle_budget) ? Verdict::ProvenIrrelevant : Verdict::Relevant;
      } else {
        v = incomplete_is_irrelevant(c, lits.front(), cfg);
      }
      if (v != Verdict::ProvenIrrelevant) rest = v;
    }
    for (Literal l : lits) report.verdicts.emplace(l, v);
  }
  return report;
}

PBConstraint remove_by_weakening(const PBConstraint& c, std::span<const Literal> irrelevant) {
  PBConstraint out = c;
  for (Literal l : irrelevant) out = weaken(out, l);
  return saturate(out);
}

PBConstraint remove_simple(const PBConstraint& c, std::span<const Literal> irrelevant) {
  for (Literal l : irrelevant) coefficient_or_throw(c, l);
  std::vector<Term> kept;
  for (const Term& t : c.terms()) {
    if (std::find(irrelevant.begin(), irrelevant.end(), t.literal()) == irrelevant.end()) kept.push_back(t);
  }
  return PBConstraint::from_terms(std::move(kept), c.degree());
}

PBConstraint remove_slack_based(const PBConstraint& c, std::span<const Literal> irrelevant) {
  PBConstraint weakened = remove_by_weakening(c, irrelevant);
  PBConstraint simple = remove_simple(c, irrelevant);
  return slack(weakened) < slack(simple) ? weakened : simple;
}

const char* to_string(RemovalStrategy s) {
  switch (s) {
    case RemovalStrategy::Weaken:
      return "weaken";
    case RemovalStrategy::Simple:
      return "simple";
    case RemovalStrategy::SlackBased:
      return "slack";
  }
  return "?";
}

RemovalStrategy parse_removal_strategy(const std::string& name) {
  if (name == "weaken") return RemovalStrategy::Weaken;
  if (name == "simple") return RemovalStrategy::Simple;
  if (name == "slack") return RemovalStrategy::SlackBased;
  throw InvalidArgument("unknown removal strategy '" + name + "'");
}

PBConstraint remove_irrelevant(const PBConstraint& c, std::span<const Literal> irrelevant, RemovalStrategy s) {
  switch (s) {
    case RemovalStrategy::Weaken:
      return remove_by_weakening(c, irrelevant);
    case RemovalStrategy::Simple:
      return remove_simple(c, irrelevant);
    case RemovalStrategy::SlackBased:
      return remove_slack_based(c, irrelevant);
  }
  throw InvalidArgument("unknown removal strategy");
}

}  // namespace pbrel
