#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "dkwsmc/aggregator.hpp"
#include "dkwsmc/dkw.hpp"
#include "dkwsmc/errors.hpp"

namespace dkwsmc {

// Parameters of one stage of the sequential procedure. Stage i >= 1 uses
//   samples          n_i   = base_n * i^2
//   stage_confidence d_i   = confidence / 2^i
//   half_width       eps_i = sqrt(ln(2 / d_i) / (2 n_i))
// The stage confidences form a geometric series summing to `confidence`,
// so all stages are jointly valid at that budget.
struct StageSchedule {
    int base_n = 0;
    double confidence = 0.0;
    int stage = 0;
    std::size_t samples = 0;
    double stage_confidence = 0.0;
    double half_width = 0.0;
};

StageSchedule stage_schedule(int base_n, double confidence, int stage);

// When to stop emitting stages: at a target interval width (stop once
// width <= 2 * target), after a fixed number of stages, or whichever of the
// two fires first when both are set. At least one must be set.
class StoppingRule {
  public:
    static StoppingRule target_width(double target);
    static StoppingRule max_stages(int limit);

    StoppingRule& and_max_stages(int limit);

    const std::optional<double>& target() const { return target_; }
    const std::optional<int>& stage_limit() const { return stage_limit_; }

  private:
    StoppingRule() = default;
    std::optional<double> target_;
    std::optional<int> stage_limit_;
};

struct SequentialConfig {
    int base_n = 0;
    double confidence = 0.0;
    Aggregator aggregator;
    BoundKind bound = BoundKind::general();
    StoppingRule stopping = StoppingRule::max_stages(1);
};

struct StageResult {
    StageSchedule schedule;
    ConfidenceInterval interval;
    double estimate = 0.0;  // aggregator applied to the stage's empirical cdf
};

// Pulls one sample per call; empty signals exhaustion.
using SampleSource = std::function<std::optional<double>()>;

// Raised when the source runs dry before a stage completes. Carries every
// stage emitted so far (the last entry is the last valid interval).
class StreamExhaustedError : public Error {
  public:
    StreamExhaustedError(const std::string& what, std::vector<StageResult> stages)
        : Error(what), completed_stages(std::move(stages)) {}

    std::vector<StageResult> completed_stages;
};

// Runs stages 1, 2, ... until the stopping rule fires. Each stage extends
// the previous stage's sample set (no sample is discarded), builds a band
// with the stage's scheduled half-width, and emits the aggregator interval.
// Every emitted interval is jointly valid at confidence 1 - config.confidence.
std::vector<StageResult> sequential_estimate(const SampleSource& stream,
                                             const SequentialConfig& config);

}  // namespace dkwsmc
