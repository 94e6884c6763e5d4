#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace mvalex {

/// Runs one command (`eval`, `verify`, `oracle`, `stats`); `args` excludes the
/// program name.  Returns 0 on success, 1 on a failed check or computation,
/// 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace mvalex
