#include "dkwsmc/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "json.hpp"

#include "dkwsmc/errors.hpp"

namespace dkwsmc {

namespace {

using nlohmann::json;

const json& require_field(const json& object, const char* key, const std::string& where) {
    const auto it = object.find(key);
    if (it == object.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

std::string require_string(const json& value, const std::string& where) {
    if (!value.is_string()) throw ParseError(where + ": expected a string");
    return value.get<std::string>();
}

double require_number(const json& value, const std::string& where) {
    if (!value.is_number()) throw ParseError(where + ": expected a number");
    return value.get<double>();
}

}  // namespace

Model parse_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("model: top level must be an object");

    const std::string kind_name = require_string(require_field(doc, "kind", "model"), "model.kind");
    ModelKind kind;
    if (kind_name == "dtmc")
        kind = ModelKind::Dtmc;
    else if (kind_name == "ctmc")
        kind = ModelKind::Ctmc;
    else
        throw ParseError("model.kind: expected \"dtmc\" or \"ctmc\", got \"" + kind_name + "\"");
    const char* weight_key = kind == ModelKind::Dtmc ? "prob" : "rate";

    const json& states_node = require_field(doc, "states", "model");
    if (!states_node.is_array() || states_node.empty())
        throw ParseError("model.states: expected a nonempty array");

    std::vector<StateSpec> states;
    states.reserve(states_node.size());
    for (std::size_t i = 0; i < states_node.size(); ++i) {
        const std::string where = "model.states[" + std::to_string(i) + "]";
        const json& node = states_node[i];
        if (!node.is_object()) throw ParseError(where + ": expected an object");
        StateSpec state;
        state.id = require_string(require_field(node, "id", where), where + ".id");
        state.reward = require_number(require_field(node, "reward", where), where + ".reward");
        const json& transitions = require_field(node, "transitions", where);
        if (!transitions.is_array()) throw ParseError(where + ".transitions: expected an array");
        for (std::size_t t = 0; t < transitions.size(); ++t) {
            const std::string twhere = where + ".transitions[" + std::to_string(t) + "]";
            const json& tnode = transitions[t];
            if (!tnode.is_object()) throw ParseError(twhere + ": expected an object");
            Transition transition;
            transition.target =
                require_string(require_field(tnode, "target", twhere), twhere + ".target");
            if (!tnode.contains(weight_key))
                throw ParseError(twhere + ": expected \"" + weight_key + "\" for a " + kind_name);
            transition.weight = require_number(tnode[weight_key], twhere + "." + weight_key);
            state.transitions.push_back(std::move(transition));
        }
        states.push_back(std::move(state));
    }

    const std::string initial =
        require_string(require_field(doc, "initial", "model"), "model.initial");
    std::vector<std::string> goal;
    if (const auto it = doc.find("goal"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("model.goal: expected an array of state ids");
        for (std::size_t g = 0; g < it->size(); ++g)
            goal.push_back(require_string((*it)[g], "model.goal[" + std::to_string(g) + "]"));
    }

    return Model::build(kind, std::move(states), initial, std::move(goal));
}

std::string serialize_model(const Model& model) {
    const char* weight_key = model.kind() == ModelKind::Dtmc ? "prob" : "rate";
    json doc;
    doc["kind"] = model.kind() == ModelKind::Dtmc ? "dtmc" : "ctmc";
    doc["states"] = json::array();
    for (const StateSpec& state : model.states()) {
        json node;
        node["id"] = state.id;
        node["reward"] = state.reward;
        node["transitions"] = json::array();
        for (const Transition& t : state.transitions)
            node["transitions"].push_back({{"target", t.target}, {weight_key, t.weight}});
        doc["states"].push_back(std::move(node));
    }
    doc["initial"] = model.initial_id();
    if (!model.goal_ids().empty()) doc["goal"] = model.goal_ids();
    return doc.dump(2) + "\n";
}

namespace {

// Hand-rolled scanner for the query grammar. Total: every failure is a
// ParseError carrying the character position.
class QueryScanner {
  public:
    explicit QueryScanner(std::string_view text) : text_(text) {}

    void skip_spaces() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_spaces();
        return pos_ >= text_.size();
    }

    bool consume(char c) {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }

    std::string identifier() {
        skip_spaces();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected an identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    double number() {
        skip_spaces();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        if (!std::isfinite(value)) fail("number out of range");
        return value;
    }

    int integer() {
        const double value = number();
        if (value != std::floor(value) || std::abs(value) > 1e9) fail("expected an integer");
        return static_cast<int>(value);
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("query: " + message + " at position " + std::to_string(pos_));
    }

    std::size_t position() const { return pos_; }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Aggregator parse_aggregator(QueryScanner& scan) {
    const std::size_t at = scan.position();
    const std::string name = scan.identifier();
    const auto check = [&](bool ok, const char* message) {
        if (!ok)
            throw ParseError("query: " + std::string(message) + " at position " +
                             std::to_string(at));
    };
    if (name == "mean") return Aggregator::mean();
    if (name == "moment") {
        scan.expect('(');
        const int order = scan.integer();
        scan.expect(')');
        check(order >= 2, "moment order must be an integer >= 2");
        return Aggregator::moment(order);
    }
    if (name == "quantile") {
        scan.expect('(');
        const double level = scan.number();
        scan.expect(')');
        check(level > 0.0 && level < 1.0, "quantile level must lie in (0, 1)");
        return Aggregator::quantile(level);
    }
    if (name == "cvar") {
        scan.expect('(');
        const double level = scan.number();
        scan.expect(')');
        check(level > 0.0 && level <= 1.0, "cvar level must lie in (0, 1]");
        return Aggregator::cvar(level);
    }
    if (name == "erisk") {
        scan.expect('(');
        const double gamma = scan.number();
        scan.expect(')');
        check(gamma > 0.0, "erisk parameter must be positive");
        return Aggregator::entropic_risk(gamma);
    }
    throw ParseError("query: unknown aggregator \"" + name + "\" at position " +
                     std::to_string(at));
}

}  // namespace

Query parse_query(std::string_view text) {
    QueryScanner scan(text);
    Query query;
    query.aggregators.push_back(parse_aggregator(scan));
    while (scan.consume(';')) query.aggregators.push_back(parse_aggregator(scan));

    while (!scan.at_end()) {
        const std::size_t at = scan.position();
        const std::string word = scan.identifier();
        if (word == "until") {
            if (query.until_label) throw ParseError("query: duplicate until clause");
            query.until_label = scan.identifier();
        } else if (word == "bounded") {
            if (query.bound_upper) throw ParseError("query: duplicate bounded clause");
            const double upper = scan.number();
            if (!(upper > 0.0))
                throw ParseError("query: bound must be positive at position " +
                                 std::to_string(at));
            query.bound_upper = upper;
        } else {
            throw ParseError("query: unexpected \"" + word + "\" at position " +
                             std::to_string(at));
        }
    }
    return query;
}

PathVariable resolve_path_variable(const Query& query, const Model& model) {
    if (!query.until_label) return PathVariable::total_reward();
    const std::string& label = *query.until_label;
    if (label == "goal" && !model.goal_ids().empty())
        return PathVariable::reachability_reward(model.goal_ids());
    if (model.index_of(label))
        return PathVariable::reachability_reward({label});
    throw ValidationError("until target '" + label +
                          "' names neither the model goal set nor a state");
}

}  // namespace dkwsmc
