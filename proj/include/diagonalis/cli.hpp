#pragma once

// Command-line front end. JSON goes to `out`, human-readable diagnostics to `err`.
//
// Exit codes: 0 Yes / success, 1 No / precondition failed, 2 Unknown / not found,
// 3 malformed input or internal error.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace diagonalis::cli {

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The schema document printed by `schema`.
nlohmann::json schema_document();

}  // namespace diagonalis::cli
