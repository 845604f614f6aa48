#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qortho::cli {

enum class Command { Verify, Discover, Order, Zeros, Suite, Moments };

struct RunConfig {
    Command command = Command::Verify;
    std::string family;     // empty: taken from the spec file
    std::string spec_path;  // empty: built-in instance for the family
    unsigned n_lo = 1, n_hi = 1;
    std::string shift;      // "alpha/q^2", "a-1,c-1", or a catalog entry id
    unsigned depth = 1;
    mpq_class width = mpq_class(1, 1000000000000UL);
    std::string out = ".";
    unsigned jobs = 1;
    bool all = false;
    bool expect_none = false; // discover: NoConstantCombination is the expected outcome
    std::string sweep;        // zeros: "param=lo..hi:steps"
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInconclusive = 3;

// "A..B" or "A".
std::pair<unsigned, unsigned> parse_range(const std::string& text);
// "1e-12", "2^-40", "1/1024"; must be a positive power of 1/2 or 1/10.
mpq_class parse_width(const std::string& text);
Command parse_command(const std::string& text);

// Runs one command, writes its artifacts under config.out, returns the exit code.
// Summary lines go to stdout; diagnostics to stderr.
int run(const RunConfig& config);

// Same, with the report text returned instead of printed (used by tests).
struct RunOutput {
    int code = kOk;
    std::string report;             // contents of report.json
    std::vector<std::string> files; // artifacts written
};
RunOutput run_capture(const RunConfig& config);

} // namespace qortho::cli
