#include "dkwsmc/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <utility>

#include "dkwsmc/rng.hpp"

namespace dkwsmc {

namespace detail {

ResolvedRv resolve(const Model& model, const PathVariable& rv) {
    ResolvedRv resolved;
    resolved.kind = rv.kind;
    if (rv.kind == PathVariable::Kind::ReachabilityReward) {
        if (rv.goal.empty())
            throw ParameterError("reachability reward requires a nonempty goal set");
        resolved.goal_mask.assign(model.state_count(), 0);
        for (const std::string& id : rv.goal) {
            const auto index = model.index_of(id);
            if (!index) throw ValidationError("goal state '" + id + "' is not declared");
            resolved.goal_mask[*index] = 1;
        }
    }
    return resolved;
}

}  // namespace detail

SampleSet run_simulations(const Model& model, const PathVariable& rv, const SimConfig& config) {
    if (config.paths < 1) throw ParameterError("path count must be >= 1");
    if (config.max_steps < 1) throw ParameterError("max_steps must be >= 1");
    const detail::ResolvedRv resolved = detail::resolve(model, rv);
    const bool ctmc = model.kind() == ModelKind::Ctmc;

    std::vector<double> values(config.paths);
    unsigned threads = config.threads != 0 ? config.threads
                                           : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, config.paths));

    std::atomic<std::size_t> next_index{0};
    std::atomic<std::size_t> failed_trace{config.paths};  // paths = none
    constexpr std::size_t kChunk = 256;

    const auto worker = [&] {
        for (;;) {
            const std::size_t begin = next_index.fetch_add(kChunk);
            if (begin >= config.paths || failed_trace.load() != config.paths) return;
            const std::size_t end = std::min(begin + kChunk, config.paths);
            for (std::size_t trace = begin; trace < end; ++trace) {
                PathRng rng(config.seed, trace);
                try {
                    values[trace] =
                        ctmc ? detail::sample_path_ctmc_resolved(model, resolved, rng,
                                                                 config.max_steps)
                             : detail::sample_path_dtmc_resolved(model, resolved, rng,
                                                                 config.max_steps);
                } catch (const NonTerminationError&) {
                    // Record the smallest offending trace for a deterministic report.
                    std::size_t expected = failed_trace.load();
                    while (trace < expected &&
                           !failed_trace.compare_exchange_weak(expected, trace)) {
                    }
                    return;
                }
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    const std::size_t failed = failed_trace.load();
    if (failed != config.paths)
        throw NonTerminationError("trace " + std::to_string(failed) +
                                      " did not terminate within max_steps",
                                  failed);
    return SampleSet::from_values(std::move(values));
}

}  // namespace dkwsmc
