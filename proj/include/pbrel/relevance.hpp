#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pbrel/pb_core.hpp"

namespace pbrel {

enum class Verdict {
  ProvenIrrelevant,
  Relevant,   // only the exact oracle proves relevance
  NotProven,  // incomplete detector could not rule out relevance
};

const char* to_string(Verdict v);

struct DetectorConfig {
  std::vector<std::uint32_t> moduli{4547};
  std::size_t max_literals = 500;
  /// Upper bound on n * degree table cells for the exact oracle.
  std::uint64_t oracle_budget = 100'000'000;

  /// Throws InvalidArgument on an empty modulus list, a modulus below 2 or
  /// max_literals == 0.
  void validate() const;
};

/// Closed interval of subset sums that make a literal relevant.
struct Window {
  BigInt lo;
  BigInt hi;
};

/// [degree - alpha, degree - 1] for the literal `l` of coefficient alpha. The
/// literal is irrelevant iff no sub-multiset of the other coefficients sums
/// into this window. `lo` is negative when `c` is not saturated on `l`.
Window irrelevance_window(const PBConstraint& c, Literal l);

/// Pseudo-polynomial dynamic program over the other coefficients. Throws
/// OracleCapacityExceeded when n * degree exceeds `budget` and
/// LiteralNotPresent when `l` is not in `c`.
bool exact_is_irrelevant(const PBConstraint& c, Literal l, std::uint64_t budget = 100'000'000);

/// Residues modulo p reachable as subset sums.
class ResidueSet {
 public:
  explicit ResidueSet(std::uint32_t modulus);

  std::uint32_t modulus() const { return static_cast<std::uint32_t>(bits_.size()); }
  bool contains(std::uint32_t residue) const { return bits_.test(residue); }
  bool full() const { return bits_.all(); }
  std::size_t count() const { return bits_.count(); }
  std::vector<std::uint32_t> residues() const;

  /// Adds `r` to every reachable residue, keeping the old ones.
  void include(std::uint32_t r);

 private:
  boost::dynamic_bitset<std::uint64_t> bits_;
};

ResidueSet modular_reachable(std::span<const BigInt> coefficients, std::uint32_t modulus);

/// Sound but incomplete: never returns Relevant, and ProvenIrrelevant implies
/// irrelevance. A window target is ruled out when its residue is unreachable
/// for some modulus; moduli not larger than the window length are skipped.
Verdict incomplete_is_irrelevant(const PBConstraint& c, Literal l, const DetectorConfig& cfg);

struct RelevanceReport {
  std::map<Literal, Verdict> verdicts;
  std::size_t checks = 0;
  bool skipped = false;

  std::vector<Literal> irrelevant() const;
};

/// Checks one literal per distinct coefficient value, smallest first, and
/// stops at the first one not proven irrelevant: every literal with a larger
/// coefficient inherits that verdict. Constraints with more than
/// cfg.max_literals terms are skipped. Unsaturated input is saturated first.
RelevanceReport detect_all(const PBConstraint& c, const DetectorConfig& cfg, bool oracle = false);

/// Weakens every listed literal, then saturates.
PBConstraint remove_by_weakening(const PBConstraint& c, std::span<const Literal> irrelevant);
/// Drops the listed terms keeping the degree.
PBConstraint remove_simple(const PBConstraint& c, std::span<const Literal> irrelevant);
/// Whichever of the two above has the smaller slack; ties go to remove_simple.
PBConstraint remove_slack_based(const PBConstraint& c, std::span<const Literal> irrelevant);

enum class RemovalStrategy { Weaken, Simple, SlackBased };

const char* to_string(RemovalStrategy s);
RemovalStrategy parse_removal_strategy(const std::string& name);

PBConstraint remove_irrelevant(const PBConstraint& c, std::span<const Literal> irrelevant, RemovalStrategy s);

}  // namespace pbrel
