#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "dkwsmc/dkw.hpp"

namespace dkwsmc {

// Exit codes of the command-line front end.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io_error = 2;         // missing model file, unwritable output
inline constexpr int input_error = 3;      // parse or validation failure
inline constexpr int non_termination = 4;  // a sampled path never finished
}  // namespace exit_code

// Exact decimal rendering of a double: the shortest decimal string that
// parses back to the same value, always in plain (non-scientific) notation.
// Infinite values render as "inf"/"-inf".
std::string decimal_string(double value);

// Writes the band as CSV: header "value,ecdf,lower,upper", one row per ecdf
// jump, ascending. lower/upper are the band edges in cdf space,
// max(F(x) - delta, 0) and min(F(x) + delta, 1). Note the naming flip
// relative to the envelope variables: the band's lower edge is the cdf of
// the stochastically larger envelope.
void export_cdf_csv(const DkwBand& band, std::ostream& out);
void export_cdf_csv(const DkwBand& band, const std::string& path);

struct AnalysisOptions {
    std::string model_path;
    std::string query;
    std::size_t k = 100;
    double confidence = 0.1;
    std::uint64_t seed = 0;
    std::size_t max_steps = 10'000'000;
    std::optional<std::string> cdf_path;

    bool sequential = false;
    int base_n = 100;
    std::optional<double> epsilon;   // sequential: stop at interval width <= 2 epsilon
    std::optional<int> max_stages;   // sequential: stage cap

    enum class Format { Table, JsonLines };
    Format format = Format::Table;
};

// Loads the model, runs the query, and writes the report to `out` (errors
// to `err`). Returns an exit_code value. The report is a pure function of
// (model file, query, k, confidence, seed, max_steps); nothing is written
// on failure.
int run_analysis(const AnalysisOptions& options, std::ostream& out, std::ostream& err);

}  // namespace dkwsmc
