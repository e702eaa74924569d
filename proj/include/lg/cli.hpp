// Command-line front end: CSV ingestion plus subcommands for evaluation,
// sampling, fitting, model comparison, shape classification, curve grids,
// and moment summaries. Emits JSON, CSV, or aligned tables.
//
// Exit codes: 0 success, 2 validation error, 3 non-convergence.
#ifndef LG_CLI_HPP
#define LG_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lg/distribution.hpp"
#include "lg/inference.hpp"
#include "lg/lifetime.hpp"
#include "lg/series.hpp"

namespace lg::cli {

enum class Command { Eval, Sample, Fit, Compare, Shape, Curves, Moments };
enum class Format { Json, Csv, Table };

struct RunConfig {
    Command command = Command::Eval;
    Format format = Format::Table;
    std::optional<std::string> input_path;  // required for fit/compare
    std::optional<LGParams> params;         // required for the parameter commands
    std::uint64_t seed = 0;
    SeriesControl series;
    EMConfig em;

    std::size_t n = 0;             // sample: number of draws
    std::optional<double> xi;      // eval: quantile level
    CurveKind curve = CurveKind::Lorenz;
    int points = 200;
    FitMethod method = FitMethod::EM;
    double quantile_tol = 1e-10;
};

// Executes a parsed configuration; reports go to `out`, errors to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (program name excluded) and runs them.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lg::cli

#endif
