#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nomura::cli {

/// What a subcommand did. Printed as text, or as JSON with --json.
struct RunReport {
    std::string command;
    std::vector<std::string> inputs; // "path sha256:<hex>"
    double tol = 1e-8;
    bool pass = false;
    std::string message; // first error, empty on success
    std::map<std::string, double> metrics;
    std::vector<std::string> artifacts;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMathFailure = 1;
inline constexpr int kBadInput = 2;

/// Runs one command line (without the program name). Artifacts requested
/// without -o go to out and the report to err; otherwise the report goes
/// to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nomura::cli
