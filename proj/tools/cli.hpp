#pragma once

#include <iosfwd>

namespace ntcc::cli {

/// Runs one command line. Exit codes: 0 success, 1 runtime failure
/// (inconsistent unit, unreadable file, lint errors), 2 usage or parse error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ntcc::cli
