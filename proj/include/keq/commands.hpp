#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "keq/runconfig.hpp"

namespace keq {

struct CliOptions {
    std::string out_path;        // empty: stdout
    std::string format = "csv";  // csv | json (tables only; reports are JSON)
    int threads = 1;
    std::uint64_t seed = 20250810;
};

// Columnar output of sweep/trajectory/scan. Cells hold typed JSON values;
// the CSV writer formats numbers with %.12g.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

std::string table_to_csv(const Table& t);
Json table_to_json(const Table& t);

// Report builders (pure; no I/O).
Json solve_report(const Json& cfg);
Table sweep_table(const Json& cfg, int threads);
Json maxlabor_report(const Json& cfg);
Table trajectory_table(const Json& cfg);
Table scan_table(const Json& cfg);

// Entry points used by the CLI; return the process exit code.
int run_solve(const Json& cfg, const CliOptions& opt);
int run_sweep(const Json& cfg, const CliOptions& opt);
int run_maxlabor(const Json& cfg, const CliOptions& opt);
int run_trajectory(const Json& cfg, const CliOptions& opt);
int run_scan(const Json& cfg, const CliOptions& opt);
int run_verify(const Json& cfg, const CliOptions& opt);

}  // namespace keq
