#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dkwsmc/errors.hpp"
#include "dkwsmc/model.hpp"
#include "dkwsmc/step_cdf.hpp"

namespace dkwsmc {

namespace detail {

struct ResolvedRv {
    PathVariable::Kind kind = PathVariable::Kind::TotalReward;
    std::vector<char> goal_mask;  // indexed by state, nonempty iff reachability
};

ResolvedRv resolve(const Model& model, const PathVariable& rv);

// One DTMC path. Accumulates the reward of every visited state. Total-reward
// paths end on entering an absorbing state with reward 0 (all further
// summands are 0); reachability paths end on first entry to a goal state,
// whose reward is not counted. A path that provably cannot end (absorbing
// dead end, or positive-reward absorbing state under total reward) or that
// exceeds max_steps raises NonTerminationError.
template <typename Rng>
double sample_path_dtmc_resolved(const Model& model, const ResolvedRv& rv, Rng& rng,
                                 std::size_t max_steps) {
    const bool reachability = rv.kind == PathVariable::Kind::ReachabilityReward;
    std::size_t state = model.initial_index();
    double total = 0.0;
    for (std::size_t step = 0; step <= max_steps; ++step) {
        if (reachability && rv.goal_mask[state]) return total;
        total += model.reward(state);
        if (model.is_absorbing(state)) {
            if (!reachability && model.reward(state) == 0.0) return total;
            throw NonTerminationError(
                reachability ? "path reached absorbing non-goal state '" +
                                   model.states()[state].id + "'"
                             : "path reached absorbing state '" + model.states()[state].id +
                                   "' with positive reward");
        }
        const double u = rng.next_unit() * model.exit_weight(state);
        double acc = 0.0;
        std::size_t next = model.successors(state).back().first;
        for (const auto& [target, weight] : model.successors(state)) {
            acc += weight;
            if (u < acc) {
                next = target;
                break;
            }
        }
        state = next;
    }
    throw NonTerminationError("path exceeded max_steps");
}

// One CTMC path: sojourn time drawn first (exponential in the state's total
// exit rate), then the jump is chosen proportionally to rates. Rewards are
// rates, accumulated as reward * sojourn.
template <typename Rng>
double sample_path_ctmc_resolved(const Model& model, const ResolvedRv& rv, Rng& rng,
                                 std::size_t max_steps) {
    const bool reachability = rv.kind == PathVariable::Kind::ReachabilityReward;
    std::size_t state = model.initial_index();
    double total = 0.0;
    for (std::size_t step = 0; step <= max_steps; ++step) {
        if (reachability && rv.goal_mask[state]) return total;
        if (model.is_absorbing(state)) {
            if (!reachability && model.reward(state) == 0.0) return total;
            throw NonTerminationError(
                reachability ? "path reached absorbing non-goal state '" +
                                   model.states()[state].id + "'"
                             : "path reached absorbing state '" + model.states()[state].id +
                                   "' with positive reward rate");
        }
        const double exit_rate = model.exit_weight(state);
        total += model.reward(state) * rng.next_exponential(exit_rate);
        const double u = rng.next_unit() * exit_rate;
        double acc = 0.0;
        std::size_t next = model.successors(state).back().first;
        for (const auto& [target, rate] : model.successors(state)) {
            acc += rate;
            if (u < acc) {
                next = target;
                break;
            }
        }
        state = next;
    }
    throw NonTerminationError("path exceeded max_steps");
}

}  // namespace detail

template <typename Rng>
double sample_path_dtmc(const Model& model, const PathVariable& rv, Rng& rng,
                        std::size_t max_steps) {
    if (model.kind() != ModelKind::Dtmc) throw ParameterError("model is not a dtmc");
    const detail::ResolvedRv resolved = detail::resolve(model, rv);
    return detail::sample_path_dtmc_resolved(model, resolved, rng, max_steps);
}

template <typename Rng>
double sample_path_ctmc(const Model& model, const PathVariable& rv, Rng& rng,
                        std::size_t max_steps) {
    if (model.kind() != ModelKind::Ctmc) throw ParameterError("model is not a ctmc");
    const detail::ResolvedRv resolved = detail::resolve(model, rv);
    return detail::sample_path_ctmc_resolved(model, resolved, rng, max_steps);
}

// Draws config.paths i.i.d. path rewards. Trace i uses its own random
// stream derived from (config.seed, i), so the result is bit-identical for
// a fixed configuration no matter how many worker threads run. Any
// non-terminating path aborts the whole run.
SampleSet run_simulations(const Model& model, const PathVariable& rv, const SimConfig& config);

}  // namespace dkwsmc
