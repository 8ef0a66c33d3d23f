#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coulomb::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;  // verify: some oracle check failed
inline constexpr int kValidation = 2;
inline constexpr int kNumerical = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coulomb::cli
