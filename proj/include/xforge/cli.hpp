#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xforge::cli {

enum ExitCode : int {
    kPass = 0,
    kFail = 1,
    kUsage = 2,
    kInfeasible = 3,
    kInconclusive = 4,
    kShortInput = 5,
    kSeedMismatch = 6,
    kUnreadableSpec = 7,
};

// Runs one `xforge` invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

}  // namespace xforge::cli
