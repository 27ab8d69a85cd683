#pragma once

#include "driftmeter/drift.hpp"
#include "driftmeter/monic.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace driftmeter::cli {

/// Runs the command line `args` (program name excluded). Returns the process
/// exit status: 0 success, 1 validation error, 2 IO error, 3 computation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Series in long CSV form followed by a blank line and a slope table.
void write_series_csv(const DriftSeries& series, std::ostream& out);
void write_series_json(const DriftSeries& series, std::ostream& out);

void write_transitions_csv(const TransitionReport& report, std::ostream& out);
void write_transitions_json(const TransitionReport& report, std::ostream& out);

} // namespace driftmeter::cli
