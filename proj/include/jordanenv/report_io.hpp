#pragma once

#include <optional>
#include <string>

#include "jordanenv/classifier.hpp"

namespace jordanenv {

// Exit-code contract shared by the CLI commands.
enum ExitCode {
    kExitOk = 0,
    kExitParseError = 1,
    kExitStructural = 2,
    kExitUndecided = 3,
    kExitVerifyFailed = 4,
};

struct ParsedInput {
    std::optional<JordanSpec> finite;
    std::optional<InfiniteJordanSpec> infinite;
};

// Input document: {"blocks":[{"m":int,"re":float,"im":float,"d":int}, ...]}
// or {"infinite":{"re":float,"im":float,"bounded":bool,"max_m":int}}.
// Throws std::invalid_argument with a human-readable message.
ParsedInput parse_spec_json(const std::string& text);

// Round to 12 significant digits so serialized reports are stable.
double round_sig(double x);

// Report payloads; both are byte-deterministic for a fixed input and config.
std::string classify_report_json(const ParsedInput& input, const EngineOptions& opts);
std::string membership_report_json(const ParsedInput& input, int block_1based,
                                   const EngineOptions& opts);

// Boundary traces: a "# hull" section, then one section per block disk when
// the spec has several blocks. Rows are "theta,x,y" at 9 decimal places.
std::string numrange_csv(const ParsedInput& input, int n_theta, const EngineOptions& opts);

struct RunConfig {
    std::string input_path;
    std::string output_path; // empty writes to stdout
    int block = 0;           // 1-based block index for check-membership
    double tol_band = -1.0;  // overrides the boundary-ambiguity band when positive
    int n_theta = -1;        // overrides the direction grid when positive
    int max_iter = -1;       // overrides the oracle iteration cap when positive
    std::string format;      // "json" or "csv" where a choice exists
    bool verify_full = false;
    double inject_radius_bias = 0.0; // verification fault-injection hook
};

struct CmdResult {
    int exit_code = kExitOk;
    std::string payload; // the report, or an error message on failure
};

CmdResult cmd_classify(const RunConfig& config);
CmdResult cmd_numrange(const RunConfig& config);
CmdResult cmd_check_membership(const RunConfig& config);
CmdResult cmd_verify(const RunConfig& config);

} // namespace jordanenv
