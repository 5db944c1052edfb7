#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dkwsmc/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "dkwsmc - statistical model checker with simultaneous confidence bands.\n"
        "Samples paths of a DTMC/CTMC, builds a distribution-free confidence band\n"
        "around the empirical cdf of the path reward, and derives jointly valid\n"
        "confidence intervals for means, moments, quantiles, cvar, and entropic risk."};

    dkwsmc::AnalysisOptions options;
    std::string format = "table";
    double epsilon = 0.0;
    int max_stages = 0;
    std::string cdf_path;

    app.add_option("--model", options.model_path, "model file (JSON)")->required();
    app.add_option("--query", options.query,
                   "property query, e.g. \"mean; quantile(0.3)\" or "
                   "\"cvar(0.3) until goal bounded 10\"")
        ->required();
    app.add_option("-k", options.k, "number of simulated paths (fixed-k mode)")
        ->default_val(options.k);
    app.add_option("--delta", options.confidence, "confidence budget delta in (0, 1)")
        ->default_val(options.confidence);
    app.add_option("--seed", options.seed, "random seed")->default_val(options.seed);
    app.add_option("--max-steps", options.max_steps, "per-path step cap")
        ->default_val(options.max_steps);
    app.add_option("--cdf", cdf_path, "export the empirical cdf with its band as CSV");
    app.add_flag("--sequential", options.sequential,
                 "run the staged anytime procedure instead of a fixed-k analysis");
    app.add_option("--base-n", options.base_n, "sequential: stage-1 sample count")
        ->default_val(options.base_n);
    auto* eps_opt = app.add_option(
        "--epsilon", epsilon, "sequential: stop once the interval width is <= 2*epsilon");
    auto* stages_opt =
        app.add_option("--max-stages", max_stages, "sequential: stop after this many stages");
    app.add_option("--format", format, "output format: table or json-lines")
        ->check(CLI::IsMember({"table", "json-lines"}))
        ->default_val(format);

    CLI11_PARSE(app, argc, argv);

    if (!cdf_path.empty()) options.cdf_path = cdf_path;
    if (eps_opt->count() > 0) options.epsilon = epsilon;
    if (stages_opt->count() > 0) options.max_stages = max_stages;
    options.format = format == "json-lines" ? dkwsmc::AnalysisOptions::Format::JsonLines
                                            : dkwsmc::AnalysisOptions::Format::Table;

    return dkwsmc::run_analysis(options, std::cout, std::cerr);
}
