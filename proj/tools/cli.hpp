#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace addcomb::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 usage or I/O error, 2 an asserted bound failed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace addcomb::cli
