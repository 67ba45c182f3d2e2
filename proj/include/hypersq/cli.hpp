#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypersq/types.hpp"

namespace hypersq::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kDomainError = 2, kIoError = 3 };

/// Parses "a+bi" style literals: "0.5", "-0.5i", "i", "0.1-2e-3i".
std::optional<Complex> parse_complex(std::string_view text);

/// Runs the command line; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypersq::cli
