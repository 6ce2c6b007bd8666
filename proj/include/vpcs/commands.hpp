#pragma once

#include <iosfwd>

#include "vpcs/cli_config.hpp"

namespace vpcs {

// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 numerical
// failure.  Reports go to `out`; the single-line machine-parsable error
// (code plus message) goes to `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace vpcs
