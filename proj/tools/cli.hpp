#pragma once

#include <iosfwd>
#include <string>

namespace monocone::cli {

/// Exit codes: 0 when every requested check passes, 1 when a check fails
/// (mismatch, non-monotone extension, ...), 2 on bad input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// --fixtures, then $MONOCONE_FIXTURES, then the directory baked in at
/// build time.
std::string fixture_dir(const std::string& flag);

}  // namespace monocone::cli
