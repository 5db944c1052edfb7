#include "dkwsmc/model.hpp"

#include <cmath>
#include <string>

#include "dkwsmc/errors.hpp"

namespace dkwsmc {

namespace {
constexpr double kProbSumTolerance = 1e-9;
}

Model Model::build(ModelKind kind, std::vector<StateSpec> states, const std::string& initial,
                   std::vector<std::string> goal) {
    if (states.empty()) throw ValidationError("model has no states");

    Model model;
    model.kind_ = kind;
    model.states_ = std::move(states);
    model.goal_ = std::move(goal);

    for (std::size_t i = 0; i < model.states_.size(); ++i) {
        const StateSpec& s = model.states_[i];
        if (s.id.empty()) throw ValidationError("state " + std::to_string(i) + ": empty id");
        if (!model.index_.emplace(s.id, i).second)
            throw ValidationError("duplicate state id '" + s.id + "'");
        if (!std::isfinite(s.reward) || s.reward < 0.0)
            throw ValidationError("state '" + s.id + "': reward must be nonnegative and finite");
    }

    const auto initial_it = model.index_.find(initial);
    if (initial_it == model.index_.end())
        throw ValidationError("initial state '" + initial + "' is not declared");
    model.initial_ = initial_it->second;

    for (const std::string& g : model.goal_)
        if (!model.index_.contains(g))
            throw ValidationError("goal state '" + g + "' is not declared");

    model.successors_.resize(model.states_.size());
    model.exit_weight_.resize(model.states_.size(), 0.0);
    model.absorbing_.resize(model.states_.size(), false);
    for (std::size_t i = 0; i < model.states_.size(); ++i) {
        const StateSpec& s = model.states_[i];
        double total = 0.0;
        bool all_self = true;
        for (const Transition& t : s.transitions) {
            const auto it = model.index_.find(t.target);
            if (it == model.index_.end())
                throw ValidationError("state '" + s.id + "': transition target '" + t.target +
                                      "' is not declared");
            if (!std::isfinite(t.weight) || t.weight <= 0.0)
                throw ValidationError("state '" + s.id + "': transition to '" + t.target + "': " +
                                      (kind == ModelKind::Dtmc ? "probability must lie in (0, 1]"
                                                               : "rate must be positive"));
            if (kind == ModelKind::Dtmc && t.weight > 1.0 + kProbSumTolerance)
                throw ValidationError("state '" + s.id + "': transition to '" + t.target +
                                      "': probability must lie in (0, 1]");
            model.successors_[i].emplace_back(it->second, t.weight);
            total += t.weight;
            all_self = all_self && it->second == i;
        }
        model.exit_weight_[i] = total;
        if (kind == ModelKind::Dtmc && !s.transitions.empty() &&
            std::abs(total - 1.0) > kProbSumTolerance)
            throw ValidationError("state '" + s.id + "': outgoing probabilities sum to " +
                                  std::to_string(total) + ", expected 1");
        model.absorbing_[i] =
            s.transitions.empty() || (kind == ModelKind::Dtmc && all_self);
    }
    return model;
}

std::optional<std::size_t> Model::index_of(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Model::operator==(const Model& other) const {
    if (kind_ != other.kind_ || initial_ != other.initial_ || goal_ != other.goal_ ||
        states_.size() != other.states_.size())
        return false;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const StateSpec& a = states_[i];
        const StateSpec& b = other.states_[i];
        if (a.id != b.id || a.reward != b.reward || a.transitions.size() != b.transitions.size())
            return false;
        for (std::size_t j = 0; j < a.transitions.size(); ++j)
            if (a.transitions[j].target != b.transitions[j].target ||
                a.transitions[j].weight != b.transitions[j].weight)
                return false;
    }
    return true;
}

PathVariable PathVariable::reachability_reward(std::vector<std::string> goal_ids) {
    if (goal_ids.empty())
        throw ParameterError("reachability reward requires a nonempty goal set");
    PathVariable rv;
    rv.kind = Kind::ReachabilityReward;
    rv.goal = std::move(goal_ids);
    return rv;
}

}  // namespace dkwsmc
