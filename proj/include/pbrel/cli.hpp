#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pbrel/opb_io.hpp"
#include "pbrel/relevance.hpp"
#include "pbrel/trace.hpp"

namespace pbrel {

/// Exit codes of `pbrel solve`; every other subcommand returns 0 on success.
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitUnknown = 0;
inline constexpr int kExitError = 1;

/// Detector statistics over the dumped steps of one trace; `instance` and
/// `family` are left empty.
InstanceStats analyze_trace(const DerivationTrace& trace, const DetectorConfig& cfg, bool exact = false);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbrel
