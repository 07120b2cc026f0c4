#pragma once

#include <iosfwd>

namespace srptlab {

// Exit codes: 0 pass, 2 input error, 3 parameter-domain error, 4 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitCheckFailed = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srptlab
