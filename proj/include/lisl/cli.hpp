#pragma once

#include <iosfwd>

namespace lisl::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kInputError = 2;

// Entry point behind the `lisl-sim` binary. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lisl::cli
