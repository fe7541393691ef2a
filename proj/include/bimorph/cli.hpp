#pragma once

#include <ostream>

namespace bimorph {

/// Runs one command. Returns 0 on success, 1 on a domain error (reported
/// on `err` as "error: <kind>: <message>") and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bimorph
