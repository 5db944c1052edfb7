#include "dkwsmc/dkw.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "dkwsmc/errors.hpp"

namespace dkwsmc {

double dkw_delta(std::size_t k, double delta_conf) {
    if (k == 0) throw ParameterError("sample count must be positive");
    if (!(delta_conf > 0.0) || !(delta_conf < 1.0))
        throw ParameterError("confidence parameter must lie in (0, 1)");
    return std::sqrt(std::log(2.0 / delta_conf) / (2.0 * static_cast<double>(k)));
}

BoundKind BoundKind::bounded(double upper) {
    if (!std::isfinite(upper) || upper < 0.0)
        throw ParameterError("bound must be a nonnegative finite value");
    return BoundKind(upper);
}

DkwBand::DkwBand(SampleSet samples, double half_width, double confidence, BoundKind bound)
    : samples_(std::move(samples)),
      ecdf_(ecdf_from_samples(samples_)),
      // A half-width of 0 requests the DKW formula for (k, confidence).
      half_width_(half_width > 0.0
                      ? half_width
                      : std::min(dkw_delta(samples_.size(), confidence), 1.0)),
      confidence_(confidence),
      bound_(bound) {
    if (!(half_width_ > 0.0) || half_width_ > 1.0)
        throw ParameterError("band half-width must lie in (0, 1]");
    if (!(confidence_ > 0.0) || !(confidence_ < 1.0))
        throw ParameterError("confidence parameter must lie in (0, 1)");
    if (bound_.is_bounded() && bound_.upper() < samples_.max_value())
        throw Error("bound below observed support");
}

DkwBand::DkwBand(SampleSet samples, double confidence, BoundKind bound)
    : DkwBand(std::move(samples), 0.0, confidence, bound) {}

DkwBand DkwBand::with_half_width(SampleSet samples, double half_width, double confidence,
                                 BoundKind bound) {
    if (!(half_width > 0.0))
        throw ParameterError("band half-width must lie in (0, 1]");
    return DkwBand(std::move(samples), half_width, confidence, bound);
}

StepCdf DkwBand::lower_envelope() const {
    const double delta = half_width_;
    std::vector<CdfJump> jumps;
    jumps.reserve(ecdf_.jumps().size() + 1);
    double prev = 0.0;
    if (ecdf_.jumps().front().value > 0.0) {
        jumps.push_back({0.0, delta});
        prev = delta;
    }
    for (const CdfJump& j : ecdf_.jumps()) {
        const double cum = std::min(j.cumulative + delta, 1.0);
        if (cum > prev) {
            jumps.push_back({j.value, cum});
            prev = cum;
        }
    }
    return StepCdf::from_jumps(std::move(jumps));
}

StepCdf DkwBand::upper_envelope() const {
    const double delta = half_width_;
    std::vector<CdfJump> jumps;
    jumps.reserve(ecdf_.jumps().size() + 1);
    double prev = 0.0;
    for (const CdfJump& j : ecdf_.jumps()) {
        const double cum = std::max(j.cumulative - delta, 0.0);
        if (cum > prev) {
            jumps.push_back({j.value, cum});
            prev = cum;
        }
    }
    if (bound_.is_bounded()) {
        if (!jumps.empty() && jumps.back().value == bound_.upper())
            jumps.back().cumulative = 1.0;
        else
            jumps.push_back({bound_.upper(), 1.0});
        return StepCdf::from_jumps(std::move(jumps));
    }
    return StepCdf::from_jumps(std::move(jumps), 1.0 - prev);
}

BandEnvelopes band_envelopes(const DkwBand& band) {
    return {band.lower_envelope(), band.upper_envelope()};
}

}  // namespace dkwsmc
