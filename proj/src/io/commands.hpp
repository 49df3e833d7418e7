#pragma once

#include "io/json_io.hpp"

namespace trop {

// Runs one named command against a request document
//   {"inputs": [{"name": ..., "doc": ...}, ...], "options": {...}, "seed": "..."}
// and fills response = {"status", "payload", "diagnostics"}. Returns the
// process exit code contract: 0 ok, 1 internal error, 2 input error,
// 3 precondition failure.
int run_command(const std::string& command, const Json& request, Json& response);

}  // namespace trop
