#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace matsym::cli {

// Process exit codes.
inline constexpr int exit_success = 0;
inline constexpr int exit_infeasible = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_limit = 3;

// Fixed stats CSV schema.
inline constexpr const char* stats_header = "instance,scheme,nodes,failures,solutions,seconds";

struct StatsRow {
    std::string instance;
    std::string scheme;
    std::uint64_t nodes = 0;
    std::uint64_t failures = 0;
    std::uint64_t solutions = 0;
    double seconds = 0.0;

    bool operator==(const StatsRow&) const = default;
};

std::string format_stats_row(const StatsRow& row);
// Returns nullopt for a malformed row.
std::optional<StatsRow> parse_stats_row(const std::string& line);

/// Runs the command line `args` (without the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matsym::cli
