#pragma once

#include "model_file.hpp"
#include "report.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace moller::app {

enum ExitCode : int { ExitOk = 0, ExitParse = 2, ExitInvariant = 3, ExitInconsistent = 4 };

struct Options {
    std::optional<int> weight; // W, window on source weights
    std::optional<int> order;  // L, maximal lambda order
    std::string mode = "algebra";
    std::string route = "both";
    int degree = 0;
    int weight_max = 6;
};

// Flags win over the model file, which wins over W = 4, L = 3.
int resolved_weight(const LoadedModel& m, const Options& o);
int resolved_order(const LoadedModel& m, const Options& o);

// Sets the verdict from whichever routes ran and returns 0, or 4 when they disagree
// or a certificate is invalid.
int reconcile_routes(Report& r, bool certificates_ok);

// Each command fills report.exit_code.
Report cmd_check(const LoadedModel& m, const Options& o);
Report cmd_cohomology(const LoadedModel& m, const Options& o);
Report cmd_jacobi(const LoadedModel& m, const Options& o);
Report cmd_mc(const LoadedModel& m, const Options& o);

// The full command line, returning the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace moller::app
