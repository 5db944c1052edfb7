#include "dkwsmc/step_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dkwsmc/errors.hpp"

namespace dkwsmc {

SampleSet SampleSet::from_values(std::vector<double> values) {
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            throw ParameterError("sample values must be nonnegative and finite, got " +
                                 std::to_string(v));
    }
    std::sort(values.begin(), values.end());
    SampleSet set;
    set.values_ = std::move(values);
    return set;
}

double SampleSet::max_value() const {
    if (values_.empty()) throw Error("no samples");
    return values_.back();
}

double SampleSet::sample_mean() const {
    if (values_.empty()) throw Error("no samples");
    return std::accumulate(values_.begin(), values_.end(), 0.0) /
           static_cast<double>(values_.size());
}

void SampleSet::append_merge(std::vector<double> batch) {
    for (double v : batch) {
        if (!std::isfinite(v) || v < 0.0)
            throw ParameterError("sample values must be nonnegative and finite, got " +
                                 std::to_string(v));
    }
    std::sort(batch.begin(), batch.end());
    const std::size_t old_size = values_.size();
    values_.insert(values_.end(), batch.begin(), batch.end());
    std::inplace_merge(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(old_size),
                       values_.end());
}

StepCdf StepCdf::from_jumps(std::vector<CdfJump> jumps, double infinity_mass) {
    if (infinity_mass < -kProbTolerance || infinity_mass > 1.0 + kProbTolerance)
        throw ParameterError("infinity mass must lie in [0, 1]");
    infinity_mass = std::clamp(infinity_mass, 0.0, 1.0);

    double prev_value = -1.0;
    double prev_cum = 0.0;
    for (const CdfJump& j : jumps) {
        if (!std::isfinite(j.value) || j.value < 0.0)
            throw ParameterError("cdf jump values must be nonnegative and finite");
        if (j.value <= prev_value) throw ParameterError("cdf jump values must strictly increase");
        if (j.cumulative <= prev_cum || j.cumulative > 1.0 + kProbTolerance)
            throw ParameterError("cdf cumulative probabilities must strictly increase within (0, 1]");
        prev_value = j.value;
        prev_cum = j.cumulative;
    }
    const double total = prev_cum + infinity_mass;
    if (std::abs(total - 1.0) > kProbTolerance)
        throw ParameterError("cdf total mass is " + std::to_string(total) + ", expected 1");
    return StepCdf(std::move(jumps), infinity_mass);
}

StepCdf StepCdf::from_masses(std::vector<std::pair<double, double>> masses, double infinity_mass) {
    std::sort(masses.begin(), masses.end());
    std::vector<CdfJump> jumps;
    jumps.reserve(masses.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const auto [value, mass] = masses[i];
        if (mass < 0.0) throw ParameterError("probability mass must be nonnegative");
        cum += mass;
        const bool last_of_value = i + 1 == masses.size() || masses[i + 1].first != value;
        if (!last_of_value) continue;
        if (jumps.empty() ? cum > 0.0 : cum > jumps.back().cumulative)
            jumps.push_back({value, cum});
    }
    return from_jumps(std::move(jumps), infinity_mass);
}

double StepCdf::value_at(double x) const {
    // Greatest jump value <= x; jumps_ is sorted by value.
    auto it = std::upper_bound(jumps_.begin(), jumps_.end(), x,
                               [](double lhs, const CdfJump& j) { return lhs < j.value; });
    if (it == jumps_.begin()) return 0.0;
    return std::prev(it)->cumulative;
}

StepCdf ecdf_from_samples(const SampleSet& samples) {
    if (samples.empty()) throw Error("no samples");
    const auto& values = samples.values();
    const double k = static_cast<double>(values.size());
    std::vector<CdfJump> jumps;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        jumps.push_back({values[i], static_cast<double>(i + 1) / k});
    }
    return StepCdf::from_jumps(std::move(jumps));
}

double mean_of_step_cdf(const StepCdf& cdf) {
    if (cdf.infinity_mass() > 0.0) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t i = 0; i < cdf.jumps().size(); ++i)
        sum += cdf.jumps()[i].value * cdf.mass_at(i);
    return sum;
}

bool stochastically_dominates(const StepCdf& a, const StepCdf& b) {
    const auto check_points = [&](const StepCdf& cdf) {
        for (const CdfJump& j : cdf.jumps())
            if (b.value_at(j.value) < a.value_at(j.value) - kProbTolerance) return false;
        return true;
    };
    return check_points(a) && check_points(b);
}

}  // namespace dkwsmc
