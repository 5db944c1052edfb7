#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here is computed from first principles (series sums, direct enumeration)
// so the checks stay independent of the library's own evaluation paths.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "dkwsmc/model.hpp"
#include "dkwsmc/rng.hpp"
#include "dkwsmc/step_cdf.hpp"

namespace testsupport {

// The running example chain: initial state with reward 0 branches 1/2 to a
// reward-1 state that exits, and 1/2 to a reward-2 state that self-loops
// with probability 1/2. Total reward outcomes: 1 with mass 1/2, and 2i with
// mass (1/2)^(i+1) for i >= 1.
inline dkwsmc::Model example_chain() {
    using dkwsmc::StateSpec;
    std::vector<StateSpec> states = {
        {"s0", 0.0, {{"s1", 0.5}, {"s2", 0.5}}},
        {"s1", 1.0, {{"done", 1.0}}},
        {"s2", 2.0, {{"s2", 0.5}, {"done", 0.5}}},
        {"done", 0.0, {{"done", 1.0}}},
    };
    return dkwsmc::Model::build(dkwsmc::ModelKind::Dtmc, std::move(states), "s0", {"done"});
}

inline const char* example_chain_json() {
    return R"({
  "kind": "dtmc",
  "states": [
    {"id": "s0", "reward": 0, "transitions": [{"target": "s1", "prob": 0.5},
                                              {"target": "s2", "prob": 0.5}]},
    {"id": "s1", "reward": 1, "transitions": [{"target": "done", "prob": 1.0}]},
    {"id": "s2", "reward": 2, "transitions": [{"target": "s2", "prob": 0.5},
                                              {"target": "done", "prob": 0.5}]},
    {"id": "done", "reward": 0, "transitions": [{"target": "done", "prob": 1.0}]}
  ],
  "initial": "s0",
  "goal": ["done"]
})";
}

// (value, mass) atoms of the example chain's reward distribution, truncated
// once the residual tail mass drops to `tail_mass` or below, renormalized.
inline std::vector<std::pair<double, double>> example_chain_atoms(double tail_mass = 1e-12) {
    std::vector<std::pair<double, double>> atoms = {{1.0, 0.5}};
    for (int i = 1;; ++i) {
        const double mass = std::pow(0.5, i + 1);
        atoms.emplace_back(2.0 * i, mass);
        if (mass <= tail_mass) break;  // residual after term i equals its mass
    }
    double total = 0.0;
    for (const auto& atom : atoms) total += atom.second;
    for (auto& atom : atoms) atom.second /= total;
    return atoms;
}

inline dkwsmc::StepCdf example_chain_cdf(double tail_mass = 1e-12) {
    return dkwsmc::StepCdf::from_masses(example_chain_atoms(tail_mass));
}

// Largest value of the truncated support (the known bound used by bounded-
// case experiments).
inline double example_chain_support_max(double tail_mass = 1e-12) {
    return example_chain_atoms(tail_mass).back().first;
}

// Draws one value from a discrete (value, mass) distribution by inversion.
template <typename Rng>
double draw_discrete(const std::vector<std::pair<double, double>>& atoms, Rng& rng) {
    const double u = rng.next_unit();
    double cum = 0.0;
    for (const auto& [value, mass] : atoms) {
        cum += mass;
        if (u < cum) return value;
    }
    return atoms.back().first;
}

template <typename Rng>
dkwsmc::SampleSet draw_samples(const std::vector<std::pair<double, double>>& atoms,
                               std::size_t k, Rng& rng) {
    std::vector<double> values(k);
    for (std::size_t i = 0; i < k; ++i) values[i] = draw_discrete(atoms, rng);
    return dkwsmc::SampleSet::from_values(std::move(values));
}

// Scripted uniform source for forcing specific path choices.
class ScriptedRng {
  public:
    explicit ScriptedRng(std::vector<double> units) : units_(std::move(units)) {}

    double next_unit() { return units_.at(pos_++); }
    double next_exponential(double rate) { return -std::log1p(-next_unit()) / rate; }

  private:
    std::vector<double> units_;
    std::size_t pos_ = 0;
};

// True cdf F(x) of a discrete distribution given by atoms.
inline double discrete_cdf_at(const std::vector<std::pair<double, double>>& atoms, double x) {
    double cum = 0.0;
    for (const auto& [value, mass] : atoms)
        if (value <= x) cum += mass;
    return cum;
}

// The pure DKW event: |ecdf - F| <= delta at every jump point of either
// step function (where the supremum over all x is attained).
inline bool band_covers(const dkwsmc::StepCdf& ecdf,
                        const std::vector<std::pair<double, double>>& atoms, double delta) {
    for (const dkwsmc::CdfJump& j : ecdf.jumps()) {
        const double truth = discrete_cdf_at(atoms, j.value);
        if (std::abs(j.cumulative - truth) > delta) return false;
    }
    for (const auto& [value, mass] : atoms) {
        const double truth = discrete_cdf_at(atoms, value);
        if (std::abs(ecdf.value_at(value) - truth) > delta) return false;
    }
    return true;
}

}  // namespace testsupport
