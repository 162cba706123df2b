#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbrel/pb_core.hpp"
#include "pbrel/trace.hpp"

namespace pbrel {

struct OpbDocument {
  std::optional<std::uint64_t> declared_variables;
  std::optional<std::uint64_t> declared_constraints;
  std::vector<RawConstraint> constraints;
  /// Comment lines without the leading '*', in input order.
  std::vector<std::string> comments;
  /// Header counts that disagree with the parsed content.
  std::vector<std::string> warnings;

  /// Highest variable index used by any constraint.
  Var max_var() const;
};

/// Linear OPB with `~x` negation. Throws ParseError with the line and column
/// of the offending token.
OpbDocument parse_opb(std::string_view text);

/// A single constraint; the terminating ';' is optional.
RawConstraint parse_constraint(std::string_view text);

/// Convenience: parse_constraint followed by normalize().
std::vector<PBConstraint> parse_normalized(std::string_view text);

/// All constraints of a document in normalized form, equalities split.
std::vector<PBConstraint> normalized_constraints(const OpbDocument& doc);

RawConstraint to_raw(const PBConstraint& c);

/// "+2 x1 -3 ~x2 = 4 ;" with terms in ascending variable order.
std::string write_constraint(const RawConstraint& c);

/// Header line, then one constraint per line. Constraints that are
/// tautologies have no normalized representation and are written as a
/// comment marker instead.
std::string write_opb(const OpbDocument& doc);
std::string write_opb(std::span<const PBConstraint> constraints, Var num_vars = 0);

/// One JSON object per line and step.
std::string write_trace(const DerivationTrace& trace);
/// Throws ParseError naming the line of the first malformed record.
DerivationTrace read_trace(std::string_view text);

struct TraceReadResult {
  DerivationTrace trace;
  /// One message per malformed record; those records are skipped.
  std::vector<std::string> errors;
};
TraceReadResult read_trace_lenient(std::string_view text);

struct InstanceStats {
  std::string instance;
  std::string family;
  std::uint64_t constraints_dumped = 0;
  std::uint64_t constraints_with_irrelevant = 0;
  std::uint64_t irrelevant_literals_total = 0;
  std::uint64_t checks_performed = 0;
  std::uint64_t skipped_constraints = 0;
  std::uint64_t cancellations = 0;

  bool operator==(const InstanceStats&) const = default;
};

std::string write_stats_csv(std::span<const InstanceStats> rows);

/// Name of the directory immediately containing `path` ("" when none).
std::string family_of(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace pbrel
