#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vicsim/vsystem.hpp"

namespace vicsim::cli {

// Runs one command line (without the program name). Returns the process exit
// code: 0 on success, 2 on invalid usage or input, 1 on a numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Maximum |published - master equation| per matrix element over a gamma_t
// grid, for the single atom and the two Bell states. Requires p = 1.
nlohmann::ordered_json compare_report(const VParams& params, std::span<const double> gamma_t_grid);

// %.12e with negative zero folded to zero.
std::string format_scientific(double value);

}  // namespace vicsim::cli
