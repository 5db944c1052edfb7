#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace dkwsmc {

enum class ModelKind { Dtmc, Ctmc };

// Raw transition as written in the model file: weight is a probability for
// DTMCs and a rate for CTMCs.
struct Transition {
    std::string target;
    double weight = 0.0;
};

struct StateSpec {
    std::string id;
    double reward = 0.0;  // per visit (DTMC) or per time unit (CTMC)
    std::vector<Transition> transitions;
};

// A validated DTMC/CTMC with state rewards. A state with no outgoing
// transitions (or, for a DTMC, only self-loops) is absorbing. For states
// with transitions: DTMC probabilities must sum to 1 within 1e-9, CTMC
// rates must be positive. Immutable once built.
class Model {
  public:
    static Model build(ModelKind kind, std::vector<StateSpec> states, const std::string& initial,
                       std::vector<std::string> goal);

    ModelKind kind() const { return kind_; }
    std::size_t state_count() const { return states_.size(); }
    const std::vector<StateSpec>& states() const { return states_; }
    std::size_t initial_index() const { return initial_; }
    const std::string& initial_id() const { return states_[initial_].id; }
    const std::vector<std::string>& goal_ids() const { return goal_; }

    std::optional<std::size_t> index_of(const std::string& id) const;

    double reward(std::size_t state) const { return states_[state].reward; }
    bool is_absorbing(std::size_t state) const { return absorbing_[state]; }

    // Resolved outgoing edges and their total weight (1 for DTMC rows,
    // total exit rate for CTMC rows). Empty for absorbing states.
    const std::vector<std::pair<std::size_t, double>>& successors(std::size_t state) const {
        return successors_[state];
    }
    double exit_weight(std::size_t state) const { return exit_weight_[state]; }

    bool operator==(const Model& other) const;

  private:
    Model() = default;

    ModelKind kind_ = ModelKind::Dtmc;
    std::vector<StateSpec> states_;
    std::size_t initial_ = 0;
    std::vector<std::string> goal_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::pair<std::size_t, double>>> successors_;
    std::vector<double> exit_weight_;
    std::vector<bool> absorbing_;
};

// The path random variable: total accumulated reward, or the same sum cut
// off on first entry to a goal state (the goal state's reward excluded).
struct PathVariable {
    enum class Kind { TotalReward, ReachabilityReward };

    Kind kind = Kind::TotalReward;
    std::vector<std::string> goal;  // nonempty for ReachabilityReward

    static PathVariable total_reward() { return {}; }
    static PathVariable reachability_reward(std::vector<std::string> goal_ids);
};

struct SimConfig {
    std::size_t paths = 0;               // k, >= 1
    std::uint64_t seed = 0;
    std::size_t max_steps = 10'000'000;  // per-path safety cap
    double confidence = 0.1;             // run-level delta, carried for band building
    unsigned threads = 0;                // 0 = hardware default
};

}  // namespace dkwsmc
