#pragma once

#include <iosfwd>

namespace thermoflow {

/// Subcommands: run, mms, wsu, check-model, infsup.
/// Exit codes: 0 success, 1 invalid input or usage, 2 solver failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace thermoflow
