#pragma once

// Command-line front end. Exit codes: 0 success, 1 internal failure, 2 usage error,
// 3 ambiguous tie in high-precision rounding, 4 theorem hypotheses not met.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bernint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAmbiguousTie = 3;
inline constexpr int kExitPrecondition = 4;

struct RunConfig {
    std::string subcommand;
    std::string function;
    std::string op;
    std::string rule;
    std::vector<long> n_list;
    int s = 0;
    long k = 0;
    std::string at;
    std::string value;
    std::string order;
    std::vector<std::string> t_list;
    std::string bound;
    std::string threshold;
    long n_max = 0;
    long grid = 0;
    int steps = 0;
    bool refine = false;
    bool skip_hypotheses = false;
    std::optional<int> precision;
    std::string out;
    std::string format = "plain";

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses argv (without the program name) into a normalized config; throws CLI::ParseError
/// subclasses or bernint::LookupError on bad input.
RunConfig parse_args(const std::vector<std::string>& args);
/// Inverse of parse_args for a normalized config.
std::vector<std::string> to_args(const RunConfig& config);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bernint::cli
