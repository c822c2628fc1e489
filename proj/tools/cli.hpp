#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace games::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kValidation = 1;
inline constexpr int kIo = 2;
inline constexpr int kRejected = 3;
inline constexpr int kUnsupported = 4;

/// Entry point behind `main`; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace games::cli
