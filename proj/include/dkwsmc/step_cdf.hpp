#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace dkwsmc {

// Absolute tolerance for probability comparisons and mass bookkeeping.
inline constexpr double kProbTolerance = 1e-12;

// A multiset of nonnegative finite reals, stored sorted ascending.
class SampleSet {
  public:
    SampleSet() = default;

    // Validates (nonnegative, finite) and sorts.
    static SampleSet from_values(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    const std::vector<double>& values() const { return values_; }
    double max_value() const;     // requires nonempty
    double sample_mean() const;   // requires nonempty

    // Merges a batch into the sorted store without re-sorting the prefix.
    void append_merge(std::vector<double> batch);

  private:
    std::vector<double> values_;
};

// One step of a cdf: the function value at and after `value`, until the
// next jump.
struct CdfJump {
    double value;       // nonnegative, finite
    double cumulative;  // in (0, 1]
};

// A right-continuous nondecreasing step function on the nonnegative reals,
// possibly with residual mass at infinity. Carrier for empirical cdfs, band
// envelope distributions, and analytic oracle distributions alike.
//
// Invariants (enforced at construction):
//   - jump values strictly increasing, nonnegative, finite
//   - cumulative probabilities strictly increasing, in (0, 1]
//   - last cumulative + infinity_mass = 1 within kProbTolerance
//     (no jumps is allowed iff infinity_mass is 1)
//
// Immutable after construction; safe to share across threads.
class StepCdf {
  public:
    static StepCdf from_jumps(std::vector<CdfJump> jumps, double infinity_mass = 0.0);

    // Builds from (value, mass) pairs in any order; equal values merge.
    static StepCdf from_masses(std::vector<std::pair<double, double>> masses,
                               double infinity_mass = 0.0);

    // F(x): cumulative probability of the greatest jump value <= x, else 0.
    double value_at(double x) const;
    double operator()(double x) const { return value_at(x); }

    const std::vector<CdfJump>& jumps() const { return jumps_; }
    double infinity_mass() const { return infinity_mass_; }

    // Probability mass carried by jump i.
    double mass_at(std::size_t i) const {
        return i == 0 ? jumps_[0].cumulative : jumps_[i].cumulative - jumps_[i - 1].cumulative;
    }

  private:
    StepCdf(std::vector<CdfJump> jumps, double infinity_mass)
        : jumps_(std::move(jumps)), infinity_mass_(infinity_mass) {}

    std::vector<CdfJump> jumps_;
    double infinity_mass_ = 0.0;
};

// Empirical cdf: one jump per distinct sample value, height multiplicity/k.
// Throws Error("no samples") on an empty set.
StepCdf ecdf_from_samples(const SampleSet& samples);

// Sum of value * mass over the jumps; +infinity iff infinity_mass > 0.
double mean_of_step_cdf(const StepCdf& cdf);

// True iff the variable of `a` stochastically dominates the variable of `b`,
// i.e. b's cdf >= a's cdf everywhere (a yields larger values). Compared at
// the jump points of both cdfs, with tolerance kProbTolerance.
bool stochastically_dominates(const StepCdf& a, const StepCdf& b);

}  // namespace dkwsmc
