#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dkwsmc/aggregator.hpp"
#include "dkwsmc/dkw.hpp"
#include "dkwsmc/model.hpp"

namespace dkwsmc {

// Parses the on-disk model document:
//   {"kind": "dtmc"|"ctmc",
//    "states": [{"id": str, "reward": num,
//                "transitions": [{"target": str, "prob": num}      (dtmc)
//                              | {"target": str, "rate": num}]}],  (ctmc)
//    "initial": str, "goal": [str]?}
// Throws ParseError (with byte position or field path) on malformed input
// and ValidationError (naming the state/field) on structural violations.
Model parse_model(std::string_view text);

// Inverse of parse_model; the output reparses to an equal Model.
std::string serialize_model(const Model& model);

// A parsed property query:
//   query := agg (";" agg)* ["until" ident] ["bounded" number]
//   agg   := "mean" | "moment(" int ")" | "quantile(" real ")"
//          | "cvar(" real ")" | "erisk(" real ")"
// No until clause means total reward; no bounded clause means the general
// case. The until identifier is resolved against a model later: "goal"
// names the model's declared goal set, anything else a single state id.
struct Query {
    std::vector<Aggregator> aggregators;
    std::optional<std::string> until_label;
    std::optional<double> bound_upper;

    BoundKind bound() const {
        return bound_upper ? BoundKind::bounded(*bound_upper) : BoundKind::general();
    }
};

Query parse_query(std::string_view text);

// Resolves the query's until label against a model (see Query).
PathVariable resolve_path_variable(const Query& query, const Model& model);

}  // namespace dkwsmc
