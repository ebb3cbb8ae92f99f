#pragma once

#include "config.hpp"
#include "table.hpp"

namespace wqed::cli {

std::vector<std::string> command_names();
// Throws ConfigError for bad configurations; numerical failures are flagged per row.
Table run_command(const RunConfig& cfg);

}  // namespace wqed::cli
