#include "dkwsmc/sequential.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace dkwsmc {

StageSchedule stage_schedule(int base_n, double confidence, int stage) {
    if (base_n < 1) throw ParameterError("base sample count must be positive");
    if (!(confidence > 0.0) || !(confidence < 1.0))
        throw ParameterError("confidence parameter must lie in (0, 1)");
    if (stage < 1) throw ParameterError("stage index must be >= 1");

    StageSchedule s;
    s.base_n = base_n;
    s.confidence = confidence;
    s.stage = stage;
    s.samples = static_cast<std::size_t>(base_n) * static_cast<std::size_t>(stage) *
                static_cast<std::size_t>(stage);
    s.stage_confidence = confidence / std::exp2(stage);
    s.half_width = std::sqrt(std::log(2.0 / s.stage_confidence) /
                             (2.0 * static_cast<double>(s.samples)));
    return s;
}

StoppingRule StoppingRule::target_width(double target) {
    if (!(target > 0.0)) throw ParameterError("target width must be positive");
    StoppingRule rule;
    rule.target_ = target;
    return rule;
}

StoppingRule StoppingRule::max_stages(int limit) {
    if (limit < 1) throw ParameterError("stage limit must be positive");
    StoppingRule rule;
    rule.stage_limit_ = limit;
    return rule;
}

StoppingRule& StoppingRule::and_max_stages(int limit) {
    if (limit < 1) throw ParameterError("stage limit must be positive");
    stage_limit_ = limit;
    return *this;
}

std::vector<StageResult> sequential_estimate(const SampleSource& stream,
                                             const SequentialConfig& config) {
    if (!config.stopping.target() && !config.stopping.stage_limit())
        throw ParameterError("stopping rule must set a target width or a stage limit");

    std::vector<StageResult> results;
    SampleSet samples;
    for (int stage = 1;; ++stage) {
        const StageSchedule schedule = stage_schedule(config.base_n, config.confidence, stage);

        std::vector<double> batch;
        batch.reserve(schedule.samples - samples.size());
        while (samples.size() + batch.size() < schedule.samples) {
            std::optional<double> value = stream();
            if (!value) {
                throw StreamExhaustedError(
                    "sample source exhausted during stage " + std::to_string(stage) + " (" +
                        std::to_string(samples.size() + batch.size()) + " of " +
                        std::to_string(schedule.samples) + " samples)",
                    std::move(results));
            }
            batch.push_back(*value);
        }
        samples.append_merge(std::move(batch));

        // The stage width comes from the schedule, not from re-applying the
        // DKW formula to the run-level confidence.
        const DkwBand band = DkwBand::with_half_width(samples, schedule.half_width,
                                                      schedule.stage_confidence, config.bound);
        StageResult result{schedule, confidence_interval(band, config.aggregator),
                           config.aggregator.evaluate(band.ecdf())};
        results.push_back(std::move(result));

        const ConfidenceInterval& interval = results.back().interval;
        if (config.stopping.target() && interval.width() <= 2.0 * *config.stopping.target()) break;
        if (config.stopping.stage_limit() && stage >= *config.stopping.stage_limit()) break;
    }
    return results;
}

}  // namespace dkwsmc
