#pragma once

#include <cstddef>
#include <optional>

#include "dkwsmc/step_cdf.hpp"

namespace dkwsmc {

// DKW band half-width: sqrt(ln(2/delta_conf) / (2k)).
// Strictly decreasing in k; grows as delta_conf shrinks.
double dkw_delta(std::size_t k, double delta_conf);

// Whether the path random variable has a known almost-sure upper bound.
class BoundKind {
  public:
    static BoundKind general() { return BoundKind(std::nullopt); }
    static BoundKind bounded(double upper);

    bool is_bounded() const { return upper_.has_value(); }
    double upper() const { return *upper_; }  // requires is_bounded()

  private:
    explicit BoundKind(std::optional<double> upper) : upper_(upper) {}
    std::optional<double> upper_;
};

// Simultaneous confidence band around an empirical cdf: with probability at
// least 1 - confidence, the true cdf lies within half_width of the ecdf
// everywhere at once. The band yields the two envelope distributions that
// bracket the unknown variable in stochastic-dominance order.
class DkwBand {
  public:
    // Half-width from the DKW formula for (sample count, confidence),
    // clamped to 1 (a wider band carries no extra information).
    DkwBand(SampleSet samples, double confidence, BoundKind bound = BoundKind::general());

    // Explicit half-width in (0, 1]; used by the sequential procedure, whose
    // stages fix the width from their own budget rather than from confidence.
    static DkwBand with_half_width(SampleSet samples, double half_width, double confidence,
                                   BoundKind bound = BoundKind::general());

    const SampleSet& samples() const { return samples_; }
    const StepCdf& ecdf() const { return ecdf_; }
    double half_width() const { return half_width_; }
    double confidence() const { return confidence_; }
    std::size_t sample_count() const { return samples_.size(); }
    const BoundKind& bound() const { return bound_; }

    // Cdf of the stochastically smallest variable consistent with the band:
    // the ecdf shifted up by the half-width and capped at 1; equivalently,
    // mass half_width relocated to value 0. Lies above the ecdf.
    StepCdf lower_envelope() const;

    // Cdf of the stochastically largest variable consistent with the band:
    // the ecdf shifted down by the half-width and floored at 0. The displaced
    // mass goes to infinity in the general case, or to a jump at the bound
    // in the bounded case. Lies below the ecdf.
    StepCdf upper_envelope() const;

  private:
    DkwBand(SampleSet samples, double half_width, double confidence, BoundKind bound);

    SampleSet samples_;
    StepCdf ecdf_;
    double half_width_;
    double confidence_;
    BoundKind bound_;
};

struct BandEnvelopes {
    StepCdf lower;  // cdf of the smaller envelope variable
    StepCdf upper;  // cdf of the larger envelope variable
};

BandEnvelopes band_envelopes(const DkwBand& band);

}  // namespace dkwsmc
