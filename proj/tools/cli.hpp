#pragma once

#include <iosfwd>

namespace addcomb::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;

// Entire command-line front end. Artifacts go to `out` unless --out is
// given; notices and errors go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace addcomb::cli
