#include "dkwsmc/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "dkwsmc/aggregator.hpp"
#include "dkwsmc/errors.hpp"
#include "dkwsmc/parser.hpp"
#include "dkwsmc/rng.hpp"
#include "dkwsmc/sequential.hpp"
#include "dkwsmc/simulate.hpp"

namespace dkwsmc {

namespace {

// Rewrites "d[.ddd]e±EE" into plain decimal by moving the point.
std::string expand_scientific(const std::string& s) {
    const std::size_t e_pos = s.find_first_of("eE");
    std::string mantissa = s.substr(0, e_pos);
    const int exponent = std::atoi(s.c_str() + e_pos + 1);

    std::string sign;
    if (mantissa.front() == '-' || mantissa.front() == '+') {
        if (mantissa.front() == '-') sign = "-";
        mantissa.erase(0, 1);
    }
    const std::size_t point = mantissa.find('.');
    int int_len = point == std::string::npos ? static_cast<int>(mantissa.size())
                                             : static_cast<int>(point);
    if (point != std::string::npos) mantissa.erase(point, 1);

    const int new_point = int_len + exponent;
    const int digits = static_cast<int>(mantissa.size());
    std::string body;
    if (new_point <= 0)
        body = "0." + std::string(static_cast<std::size_t>(-new_point), '0') + mantissa;
    else if (new_point >= digits)
        body = mantissa + std::string(static_cast<std::size_t>(new_point - digits), '0');
    else
        body = mantissa.substr(0, static_cast<std::size_t>(new_point)) + "." +
               mantissa.substr(static_cast<std::size_t>(new_point));
    return sign + body;
}

}  // namespace

std::string decimal_string(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
        if (std::strtod(buffer, nullptr) == value) break;
    }
    const std::string s(buffer);
    return s.find_first_of("eE") == std::string::npos ? s : expand_scientific(s);
}

void export_cdf_csv(const DkwBand& band, std::ostream& out) {
    out << "value,ecdf,lower,upper\n";
    const double delta = band.half_width();
    for (const CdfJump& j : band.ecdf().jumps()) {
        out << decimal_string(j.value) << ',' << decimal_string(j.cumulative) << ','
            << decimal_string(std::max(j.cumulative - delta, 0.0)) << ','
            << decimal_string(std::min(j.cumulative + delta, 1.0)) << '\n';
    }
}

void export_cdf_csv(const DkwBand& band, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw IoError("cannot write CSV file '" + path + "'");
    export_cdf_csv(band, file);
    file.flush();
    if (!file) throw IoError("failed writing CSV file '" + path + "'");
}

namespace {

using nlohmann::json;

std::string interval_string(const ConfidenceInterval& ci) {
    const std::string lo = decimal_string(ci.lo);
    if (std::isinf(ci.hi)) return "[" + lo + ", ∞)";
    return "[" + lo + ", " + decimal_string(ci.hi) + "]";
}

json params_json(const Aggregator& agg) {
    switch (agg.kind()) {
        case Aggregator::Kind::Mean: return json::object();
        case Aggregator::Kind::Moment: return {{"n", agg.order()}};
        case Aggregator::Kind::Quantile:
        case Aggregator::Kind::CVaR: return {{"t", agg.level()}};
        case Aggregator::Kind::EntropicRisk: return {{"gamma", agg.gamma()}};
    }
    return json::object();
}

const char* aggregator_base_name(const Aggregator& agg) {
    switch (agg.kind()) {
        case Aggregator::Kind::Mean: return "mean";
        case Aggregator::Kind::Moment: return "moment";
        case Aggregator::Kind::Quantile: return "quantile";
        case Aggregator::Kind::CVaR: return "cvar";
        case Aggregator::Kind::EntropicRisk: return "erisk";
    }
    return "?";
}

json finite_or_null(double value) {
    if (std::isfinite(value)) return value;
    return nullptr;
}

struct Row {
    std::string name;
    std::string estimate;
    std::string interval;
};

void write_table(std::ostream& out, const std::vector<Row>& rows) {
    std::size_t name_width = std::string("aggregator").size();
    std::size_t estimate_width = std::string("estimate").size();
    for (const Row& r : rows) {
        name_width = std::max(name_width, r.name.size());
        estimate_width = std::max(estimate_width, r.estimate.size());
    }
    const auto pad = [](const std::string& s, std::size_t width) {
        return s + std::string(width - s.size() + 2, ' ');
    };
    out << pad("aggregator", name_width) << pad("estimate", estimate_width) << "interval\n";
    for (const Row& r : rows)
        out << pad(r.name, name_width) << pad(r.estimate, estimate_width) << r.interval << '\n';
}

DkwBand run_fixed_k(const AnalysisOptions& options, const Model& model, const Query& query,
                    const PathVariable& rv, std::ostream& out) {
    SimConfig config;
    config.paths = options.k;
    config.seed = options.seed;
    config.max_steps = options.max_steps;
    config.confidence = options.confidence;
    const SampleSet samples = run_simulations(model, rv, config);
    const DkwBand band(samples, options.confidence, query.bound());
    const StepCdf& ecdf = band.ecdf();

    if (options.format == AnalysisOptions::Format::JsonLines) {
        for (const Aggregator& agg : query.aggregators) {
            const ConfidenceInterval ci = confidence_interval(band, agg);
            json record;
            record["name"] = aggregator_base_name(agg);
            record["params"] = params_json(agg);
            record["estimate"] = finite_or_null(agg.evaluate(ecdf));
            record["lo"] = finite_or_null(ci.lo);
            record["hi"] = finite_or_null(ci.hi);
            record["k"] = options.k;
            record["delta"] = options.confidence;
            record["warnings"] = ci.warnings;
            out << record.dump() << '\n';
        }
        return band;
    }

    out << "model: " << options.model_path << " ("
        << (model.kind() == ModelKind::Dtmc ? "dtmc" : "ctmc") << ", " << model.state_count()
        << " states)\n";
    out << "query: " << options.query << '\n';
    out << "k = " << options.k << ", delta = " << decimal_string(options.confidence)
        << ", seed = " << options.seed
        << ", band half-width = " << decimal_string(band.half_width()) << '\n';
    out << '\n';

    std::vector<Row> rows;
    std::vector<std::string> notes;
    for (const Aggregator& agg : query.aggregators) {
        const ConfidenceInterval ci = confidence_interval(band, agg);
        rows.push_back(
            {agg.display_name(), decimal_string(agg.evaluate(ecdf)), interval_string(ci)});
        for (const std::string& w : ci.warnings)
            notes.push_back(agg.display_name() + ": " + w);
    }
    write_table(out, rows);
    if (!notes.empty()) {
        out << '\n';
        for (const std::string& n : notes) out << "note: " << n << '\n';
    }
    out << "\nall intervals hold simultaneously with probability >= "
        << decimal_string(1.0 - options.confidence) << '\n';
    return band;
}

// Returns the band of the last completed stage so --cdf can export it.
DkwBand run_sequential(const AnalysisOptions& options, const Model& model, const Query& query,
                       const PathVariable& rv, std::ostream& out) {
    if (query.aggregators.size() != 1)
        throw ValidationError("sequential mode takes a query with exactly one aggregator");

    SequentialConfig config;
    config.base_n = options.base_n;
    config.confidence = options.confidence;
    config.aggregator = query.aggregators.front();
    config.bound = query.bound();
    if (options.epsilon) {
        config.stopping = StoppingRule::target_width(*options.epsilon);
        if (options.max_stages) config.stopping.and_max_stages(*options.max_stages);
    } else {
        config.stopping = StoppingRule::max_stages(options.max_stages.value_or(5));
    }

    const detail::ResolvedRv resolved = detail::resolve(model, rv);
    const bool ctmc = model.kind() == ModelKind::Ctmc;
    std::uint64_t trace = 0;
    std::vector<double> drawn;
    const SampleSource source = [&]() -> std::optional<double> {
        PathRng rng(options.seed, trace);
        ++trace;
        const double value =
            ctmc ? detail::sample_path_ctmc_resolved(model, resolved, rng, options.max_steps)
                 : detail::sample_path_dtmc_resolved(model, resolved, rng, options.max_steps);
        drawn.push_back(value);
        return value;
    };

    const std::vector<StageResult> stages = sequential_estimate(source, config);

    if (options.format == AnalysisOptions::Format::JsonLines) {
        for (const StageResult& stage : stages) {
            json record;
            record["name"] = aggregator_base_name(config.aggregator);
            record["params"] = params_json(config.aggregator);
            record["stage"] = stage.schedule.stage;
            record["k"] = stage.schedule.samples;
            record["delta"] = options.confidence;
            record["delta_i"] = stage.schedule.stage_confidence;
            record["eps_i"] = stage.schedule.half_width;
            record["estimate"] = finite_or_null(stage.estimate);
            record["lo"] = finite_or_null(stage.interval.lo);
            record["hi"] = finite_or_null(stage.interval.hi);
            record["warnings"] = stage.interval.warnings;
            out << record.dump() << '\n';
        }
    } else {
        out << "model: " << options.model_path << " ("
            << (model.kind() == ModelKind::Dtmc ? "dtmc" : "ctmc") << ", " << model.state_count()
            << " states)\n";
        out << "query: " << options.query << " (sequential, base n = " << options.base_n
            << ", delta = " << decimal_string(options.confidence) << ")\n\n";
        std::vector<std::array<std::string, 5>> cells = {
            {"stage", "n", "delta_i", "eps_i", "interval"}};
        for (const StageResult& stage : stages)
            cells.push_back({std::to_string(stage.schedule.stage),
                             std::to_string(stage.schedule.samples),
                             decimal_string(stage.schedule.stage_confidence),
                             decimal_string(stage.schedule.half_width),
                             interval_string(stage.interval)});
        std::size_t width[4] = {0, 0, 0, 0};
        for (const auto& row : cells)
            for (int c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
        for (const auto& row : cells) {
            for (int c = 0; c < 4; ++c)
                out << row[c] << std::string(width[c] - row[c].size() + 2, ' ');
            out << row[4] << '\n';
        }
        out << "\nall stage intervals hold simultaneously with probability >= "
            << decimal_string(1.0 - options.confidence) << '\n';
    }

    const StageResult& last = stages.back();
    return DkwBand::with_half_width(SampleSet::from_values(std::move(drawn)),
                                    last.schedule.half_width, last.schedule.stage_confidence,
                                    config.bound);
}

}  // namespace

int run_analysis(const AnalysisOptions& options, std::ostream& out, std::ostream& err) {
    try {
        std::ifstream file(options.model_path);
        if (!file) {
            err << "error: cannot open model file '" << options.model_path << "'\n";
            return exit_code::io_error;
        }
        std::ostringstream text;
        text << file.rdbuf();

        const Model model = parse_model(text.str());
        const Query query = parse_query(options.query);
        const PathVariable rv = resolve_path_variable(query, model);
        if (options.k < 1) throw ParameterError("k must be >= 1");
        if (!(options.confidence > 0.0) || !(options.confidence < 1.0))
            throw ParameterError("delta must lie in (0, 1)");

        // Buffer so that a failing run emits no partial report.
        std::ostringstream report;
        std::optional<DkwBand> cdf_band;
        if (options.sequential)
            cdf_band = run_sequential(options, model, query, rv, report);
        else
            cdf_band = run_fixed_k(options, model, query, rv, report);
        if (options.cdf_path) export_cdf_csv(*cdf_band, *options.cdf_path);
        out << report.str();
        return exit_code::ok;
    } catch (const NonTerminationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::non_termination;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::io_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::input_error;
    }
}

}  // namespace dkwsmc
