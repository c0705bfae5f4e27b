#pragma once
// Command layer behind the `ciani` binary. Each run_* function executes one
// subcommand against a RunConfig and returns the process exit code:
//   0  success
//   1  invariant violation (a verified mathematical property failed)
//   2  usage or parse error
//   3  budget / feasibility refusal

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ciani::cli {

enum class Format { Table, Json, Csv };

struct RunConfig {
    uint64_t p = 0;
    int deg = 2;
    std::optional<uint64_t> d_override;
    std::string r, s, t;
    bool oracle = false;
    uint64_t sample = 0;  // 0: verify every survivor when --oracle is given
    int workers = 0;      // 0: CIANI_WORKERS env, then hardware concurrency
    std::string out;      // empty: stdout
    Format format = Format::Table;
    bool yes_i_know = false;
};

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_scan_ext(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_count(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses a full command line and dispatches; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ciani::cli
