#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace disjlab::cli {

enum class Format { Json, Csv };

/// Everything a subcommand may read. Unset optionals fall back to per-command defaults.
struct RunConfig {
    std::string subcommand;
    std::string family = "NDISJ";
    std::string table_path;
    int n = 2;
    std::optional<int> k;
    std::optional<int> m;
    std::string lp = "lovasz";
    std::string solver = "auto";
    std::string arithmetic = "auto";
    bool zero_rows = false;
    std::string sigma = "1";
    std::string epsilon = "0";
    std::optional<std::string> ambiguity;
    std::string alpha = "1";
    std::string beta = "0";
    std::optional<double> gamma;
    std::optional<double> delta;
    std::string tolerance = "0";
    int s = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 10'000;
    std::string population = "auto";
    std::string construction;
    std::string verify = "oracle";
    std::string certificate_in;
    std::string certificate_out;
    std::string task = "ndisj";
    std::string success_mode = "exact";
    std::string aggregate = "worst";
    std::uint64_t trials = 200;
    std::string base_success = "1";
    int K = 1;
    std::optional<double> protocol_alpha;
    bool bridge = false;
    bool timing = false;
    std::optional<Format> format;
    std::string out_path;

    // Caps; the environment can override the defaults.
    std::uint64_t support_cap = 0;
    std::uint64_t oracle_cap = 0;
    std::uint64_t enum_cap = 0;
    std::uint64_t run_cap = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailed = 2;

struct CommandResult {
    int status = kExitOk;
    std::string text;  // full report, newline-terminated
};

CommandResult cmd_bound(const RunConfig& cfg);
CommandResult cmd_certify(const RunConfig& cfg);
CommandResult cmd_scan(const RunConfig& cfg);
CommandResult cmd_protocol(const RunConfig& cfg);

/// Parses argv, runs one subcommand and writes the report to `out` or --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads DISJLAB_SUPPORT_CAP, DISJLAB_ORACLE_ROW_CAP, DISJLAB_ENUM_CAP and DISJLAB_RUN_CAP.
void apply_environment_caps(RunConfig& cfg);

}  // namespace disjlab::cli
