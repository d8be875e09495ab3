#pragma once

#include <iosfwd>

namespace hamcert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFails = 2;
inline constexpr int kExitInconclusive = 3;

/// Entry point of the hamcert tool. Human text goes to `out`, diagnostics to
/// `err`; the JSON report is written to the --out path.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hamcert::cli
