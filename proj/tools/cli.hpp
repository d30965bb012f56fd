#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maslov::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kDisagreement = 2;

// args excludes the program name.  Summary lines go to `out`, diagnostics to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maslov::cli
