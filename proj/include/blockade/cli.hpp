#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blockade {

/// Entry point of the `blockade` tool. args excludes the program name.
/// Returns 0 on success, 1 on validation or solver failure, 2 on usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blockade
