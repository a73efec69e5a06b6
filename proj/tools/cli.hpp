#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace obsel::cli {

// Exit codes: 0 success, 1 internal error or failed check, 2 bad input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Same, with args excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obsel::cli
