#include "dkwsmc/aggregator.hpp"

#include <cmath>
#include <limits>

#include "dkwsmc/errors.hpp"

namespace dkwsmc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double moment(const StepCdf& cdf, int order) {
    if (order < 1) throw ParameterError("moment order must be >= 1");
    if (cdf.infinity_mass() > 0.0) return kInf;
    double sum = 0.0;
    for (std::size_t i = 0; i < cdf.jumps().size(); ++i)
        sum += std::pow(cdf.jumps()[i].value, static_cast<double>(order)) * cdf.mass_at(i);
    return sum;
}

double quantile(const StepCdf& cdf, double level) {
    if (!(level > 0.0) || !(level < 1.0))
        throw ParameterError("quantile level must lie in (0, 1)");
    for (const CdfJump& j : cdf.jumps())
        if (j.cumulative >= level - kProbTolerance) return j.value;
    return kInf;
}

namespace {

// Quantile with level = 1 permitted, for cvar's internal cut.
double quantile_closed(const StepCdf& cdf, double level) {
    for (const CdfJump& j : cdf.jumps())
        if (j.cumulative >= level - kProbTolerance) return j.value;
    return kInf;
}

}  // namespace

double cvar(const StepCdf& cdf, double level) {
    if (!(level > 0.0) || level > 1.0) throw ParameterError("cvar level must lie in (0, 1]");
    const double cut = quantile_closed(cdf, level);
    if (std::isinf(cut)) return kInf;
    // Mass strictly below the cut enters whole; the atom at the cut enters
    // only with the fraction needed to fill the level.
    double below_mass = 0.0;
    double below_sum = 0.0;
    for (std::size_t i = 0; i < cdf.jumps().size() && cdf.jumps()[i].value < cut; ++i) {
        below_mass += cdf.mass_at(i);
        below_sum += cdf.jumps()[i].value * cdf.mass_at(i);
    }
    return (below_sum + (level - below_mass) * cut) / level;
}

double entropic_risk(const StepCdf& cdf, double gamma) {
    if (!(gamma > 0.0)) throw ParameterError("entropic risk parameter must be positive");
    if (cdf.jumps().empty()) return kInf;  // all mass at infinity
    // -(1/g) ln sum_i m_i e^{-g v_i}  =  v_min - (1/g) ln sum_i m_i e^{-g (v_i - v_min)},
    // keeping the largest exponent at 0 so the sum never underflows entirely.
    const double v_min = cdf.jumps().front().value;
    double sum = 0.0;
    for (std::size_t i = 0; i < cdf.jumps().size(); ++i)
        sum += cdf.mass_at(i) * std::exp(-gamma * (cdf.jumps()[i].value - v_min));
    return v_min - std::log(sum) / gamma;
}

Aggregator Aggregator::moment(int order) {
    if (order < 2) throw ParameterError("moment order must be >= 2");
    Aggregator a;
    a.kind_ = Kind::Moment;
    a.order_ = order;
    return a;
}

Aggregator Aggregator::quantile(double level) {
    if (!(level > 0.0) || !(level < 1.0))
        throw ParameterError("quantile level must lie in (0, 1)");
    Aggregator a;
    a.kind_ = Kind::Quantile;
    a.level_ = level;
    return a;
}

Aggregator Aggregator::cvar(double level) {
    if (!(level > 0.0) || level > 1.0) throw ParameterError("cvar level must lie in (0, 1]");
    Aggregator a;
    a.kind_ = Kind::CVaR;
    a.level_ = level;
    return a;
}

Aggregator Aggregator::entropic_risk(double gamma) {
    if (!(gamma > 0.0)) throw ParameterError("entropic risk parameter must be positive");
    Aggregator a;
    a.kind_ = Kind::EntropicRisk;
    a.gamma_ = gamma;
    return a;
}

double Aggregator::evaluate(const StepCdf& cdf) const {
    switch (kind_) {
        case Kind::Mean: return mean_of_step_cdf(cdf);
        case Kind::Moment: return dkwsmc::moment(cdf, order_);
        case Kind::Quantile: return dkwsmc::quantile(cdf, level_);
        case Kind::CVaR: return dkwsmc::cvar(cdf, level_);
        case Kind::EntropicRisk: return dkwsmc::entropic_risk(cdf, gamma_);
    }
    throw Error("unreachable aggregator kind");
}

namespace {

std::string trimmed_number(double x) {
    std::string s = std::to_string(x);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

std::string Aggregator::display_name() const {
    switch (kind_) {
        case Kind::Mean: return "mean";
        case Kind::Moment: return "moment(" + std::to_string(order_) + ")";
        case Kind::Quantile: return "quantile(" + trimmed_number(level_) + ")";
        case Kind::CVaR: return "cvar(" + trimmed_number(level_) + ")";
        case Kind::EntropicRisk: return "erisk(" + trimmed_number(gamma_) + ")";
    }
    throw Error("unreachable aggregator kind");
}

ConfidenceInterval confidence_interval(const DkwBand& band, const Aggregator& aggregator) {
    ConfidenceInterval ci;
    ci.aggregator = aggregator;
    ci.confidence = band.confidence();
    ci.lo = aggregator.evaluate(band.lower_envelope());
    ci.hi = aggregator.evaluate(band.upper_envelope());

    const double delta = band.half_width();
    const bool general = !band.bound().is_bounded();
    switch (aggregator.kind()) {
        case Aggregator::Kind::Mean:
        case Aggregator::Kind::Moment:
            if (general)
                ci.warnings.push_back(
                    "upper bound is infinite in the general case; supply a bound for a "
                    "two-sided interval");
            break;
        case Aggregator::Kind::Quantile:
            if (aggregator.level() <= delta)
                ci.warnings.push_back("level <= band half-width; lower bound is the trivial 0");
            if (general && aggregator.level() > 1.0 - delta)
                ci.warnings.push_back(
                    "level > 1 - band half-width in the general case; upper bound is infinite");
            break;
        case Aggregator::Kind::CVaR:
            if (general && aggregator.level() > 1.0 - delta)
                ci.warnings.push_back(
                    "level > 1 - band half-width in the general case; upper bound is infinite");
            break;
        case Aggregator::Kind::EntropicRisk: break;
    }
    return ci;
}

}  // namespace dkwsmc
