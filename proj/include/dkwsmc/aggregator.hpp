#pragma once

#include <string>
#include <vector>

#include "dkwsmc/dkw.hpp"
#include "dkwsmc/step_cdf.hpp"

namespace dkwsmc {

// n-th moment around 0: sum of value^order * mass. +infinity iff the cdf
// carries mass at infinity. order = 1 equals mean_of_step_cdf.
double moment(const StepCdf& cdf, int order);

// Smallest jump value whose cumulative probability reaches level;
// +infinity when no finite jump does.
double quantile(const StepCdf& cdf, double level);

// Conditional value-at-risk: mean of the worst `level` fraction of
// outcomes, with fractional inclusion of the atom at the quantile.
// cvar(cdf, 1) equals the mean.
double cvar(const StepCdf& cdf, double level);

// Entropic risk -(1/gamma) ln E(e^{-gamma X}). Mass at infinity contributes
// nothing to the inner expectation; the result is finite whenever some
// finite value carries mass. Evaluated in log-sum-exp form.
double entropic_risk(const StepCdf& cdf, double gamma);

// A tagged aggregation query over a distribution.
class Aggregator {
  public:
    enum class Kind { Mean, Moment, Quantile, CVaR, EntropicRisk };

    Aggregator() = default;  // Mean
    static Aggregator mean() { return Aggregator(); }
    static Aggregator moment(int order);          // order >= 2 (Mean covers 1)
    static Aggregator quantile(double level);     // level in (0, 1)
    static Aggregator cvar(double level);         // level in (0, 1]
    static Aggregator entropic_risk(double gamma);  // gamma > 0

    Kind kind() const { return kind_; }
    int order() const { return order_; }
    double level() const { return level_; }
    double gamma() const { return gamma_; }

    double evaluate(const StepCdf& cdf) const;

    // "mean", "moment(2)", "quantile(0.3)", "cvar(0.3)", "erisk(2)"
    std::string display_name() const;

    bool operator==(const Aggregator&) const = default;

  private:
    Kind kind_ = Kind::Mean;
    int order_ = 0;
    double level_ = 0.0;
    double gamma_ = 0.0;
};

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 0.0;  // may be +infinity
    double confidence = 0.0;
    Aggregator aggregator;
    std::vector<std::string> warnings;

    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Interval bracketing the true aggregator value whenever the band holds:
// lo/hi are the aggregator applied to the band's lower/upper envelope.
// All intervals derived from one band share its confidence with no budget
// splitting; they are jointly valid with probability >= 1 - confidence.
// Trivial quantile bounds (level <= half-width, or level > 1 - half-width
// in the general case) are reported with a warning rather than an error.
ConfidenceInterval confidence_interval(const DkwBand& band, const Aggregator& aggregator);

}  // namespace dkwsmc
