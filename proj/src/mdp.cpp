#include "lrsynth/mdp.hpp"

#include "lrsynth/errors.hpp"
#include "lrsynth/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace lrsynth {

int Mdp::state_index(std::string_view name) const {
    auto it = std::find(states.begin(), states.end(), name);
    return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int Mdp::action_index(std::string_view name) const {
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i].name == name) return static_cast<int>(i);
    return -1;
}

bool Mdp::has_label(int state, std::string_view ap) const {
    const auto& l = labels[state];
    return std::binary_search(l.begin(), l.end(), ap);
}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
    std::ostringstream out;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) out << "; ";
        out << violations[i].message;
    }
    return out.str();
}

}  // namespace

Mdp build_mdp(std::vector<std::string> states, int initial,
              std::vector<std::vector<std::string>> labels, std::vector<ActionSpec> actions) {
    Mdp mdp;
    mdp.states = std::move(states);
    mdp.initial = initial;
    labels.resize(mdp.states.size());
    std::set<std::string> universe;
    for (auto& l : labels) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        universe.insert(l.begin(), l.end());
    }
    mdp.labels = std::move(labels);
    mdp.ap_universe.assign(universe.begin(), universe.end());

    mdp.enabled.assign(mdp.states.size(), {});
    for (auto& spec : actions) {
        Action action;
        action.name = std::move(spec.name);
        action.owner = spec.owner;
        std::map<int, Rational> merged;
        for (auto& t : spec.successors) merged[t.target] += t.probability;
        for (auto& [target, p] : merged) action.successors.push_back({target, p});
        action.reward = std::move(spec.reward);
        if (action.owner >= 0 && action.owner < static_cast<int>(mdp.states.size()))
            mdp.enabled[action.owner].push_back(static_cast<int>(mdp.actions.size()));
        mdp.actions.push_back(std::move(action));
    }

    if (auto violations = validate_mdp(mdp); !violations.empty())
        throw ValidationError("invalid MDP: " + join_violations(violations));
    return mdp;
}

std::vector<Violation> validate_mdp(const Mdp& mdp) {
    std::vector<Violation> out;
    const int n = static_cast<int>(mdp.states.size());
    auto report = [&](ViolationKind kind, std::string message) { out.push_back({kind, std::move(message)}); };
    auto state_name = [&](int s) { return (s >= 0 && s < n) ? mdp.states[s] : "#" + std::to_string(s); };

    if (n == 0) report(ViolationKind::BadInitial, "MDP has no states");
    if (mdp.initial < 0 || mdp.initial >= n)
        report(ViolationKind::BadInitial, "initial state index " + std::to_string(mdp.initial) + " out of range");

    {
        std::set<std::string> seen;
        for (const auto& s : mdp.states)
            if (!seen.insert(s).second) report(ViolationKind::DuplicateName, "duplicate state name '" + s + "'");
        seen.clear();
        for (const auto& a : mdp.actions)
            if (!seen.insert(a.name).second) report(ViolationKind::DuplicateName, "duplicate action name '" + a.name + "'");
    }

    if (static_cast<int>(mdp.enabled.size()) != n || static_cast<int>(mdp.labels.size()) != n)
        report(ViolationKind::LabelShape, "enabled/label tables do not match the state count");

    // Enabled sets must partition the action set, consistently with owners.
    std::vector<std::vector<int>> listed_under(mdp.actions.size());
    for (int s = 0; s < static_cast<int>(mdp.enabled.size()); ++s) {
        if (mdp.enabled[s].empty()) report(ViolationKind::EmptyEnabledSet, "state '" + state_name(s) + "' has no actions");
        for (int a : mdp.enabled[s]) {
            if (a < 0 || a >= static_cast<int>(mdp.actions.size())) {
                report(ViolationKind::ActionNotUniquelyOwned, "state '" + state_name(s) + "' lists unknown action #" + std::to_string(a));
                continue;
            }
            listed_under[a].push_back(s);
        }
    }
    for (size_t a = 0; a < mdp.actions.size(); ++a) {
        const auto& action = mdp.actions[a];
        if (listed_under[a].size() != 1) {
            report(ViolationKind::ActionNotUniquelyOwned,
                   "action not uniquely owned: '" + action.name + "' is enabled in " +
                       std::to_string(listed_under[a].size()) + " states");
        } else if (listed_under[a].front() != action.owner) {
            report(ViolationKind::OwnerMismatch, "action '" + action.name + "' owner does not match its enabled set");
        }

        Rational total = 0;
        for (const auto& t : action.successors) {
            if (t.target < 0 || t.target >= n) {
                report(ViolationKind::BadSuccessor, "action '" + action.name + "' has successor out of range");
                continue;
            }
            if (sgn(t.probability) <= 0 || t.probability > 1)
                report(ViolationKind::ProbabilityOutOfRange,
                       "action '" + action.name + "' has probability " + to_string(t.probability) + " to '" +
                           state_name(t.target) + "'");
            total += t.probability;
        }
        if (total != 1)
            report(ViolationKind::DistributionSum,
                   "action '" + action.name + "': distribution sums to " + to_string(total));

        if (action.reward.size() != mdp.actions.front().reward.size())
            report(ViolationKind::RewardDimensionMismatch,
                   "reward dimension mismatch: action '" + action.name + "' has " +
                       std::to_string(action.reward.size()) + " entries, action '" + mdp.actions.front().name +
                       "' has " + std::to_string(mdp.actions.front().reward.size()));
    }
    return out;
}

Json mdp_to_json(const Mdp& mdp) {
    Json doc;
    doc["states"] = mdp.states;
    doc["initial"] = mdp.states.at(mdp.initial);
    Json labels = Json::object();
    for (size_t s = 0; s < mdp.states.size(); ++s) labels[mdp.states[s]] = mdp.labels[s];
    doc["labels"] = labels;
    Json actions = Json::array();
    for (const auto& a : mdp.actions) {
        Json ja;
        ja["name"] = a.name;
        ja["from"] = mdp.states.at(a.owner);
        Json to = Json::object();
        for (const auto& t : a.successors) to[mdp.states.at(t.target)] = to_string(t.probability);
        ja["to"] = to;
        Json reward = Json::array();
        for (const auto& r : a.reward) reward.push_back(to_string(r));
        ja["reward"] = reward;
        actions.push_back(ja);
    }
    doc["actions"] = actions;
    return doc;
}

Mdp mdp_from_json(const Json& doc) {
    auto require = [&](const Json& obj, const char* key, const std::string& context) -> const Json& {
        if (!obj.is_object() || !obj.contains(key))
            throw ValidationError(context + ": missing key '" + key + "'");
        return obj.at(key);
    };

    const Json& jstates = require(doc, "states", "MDP document");
    if (!jstates.is_array()) throw ValidationError("'states' must be an array of names");
    std::vector<std::string> states;
    std::map<std::string, int> index;
    for (const auto& js : jstates) {
        if (!js.is_string()) throw ValidationError("state names must be strings");
        auto name = js.get<std::string>();
        if (!index.emplace(name, static_cast<int>(states.size())).second)
            throw ValidationError("duplicate state name '" + name + "'");
        states.push_back(name);
    }
    auto lookup = [&](const Json& j, const std::string& context) {
        if (!j.is_string()) throw ValidationError(context + ": state reference must be a string");
        auto it = index.find(j.get<std::string>());
        if (it == index.end())
            throw ValidationError(context + ": unknown state '" + j.get<std::string>() + "'");
        return it->second;
    };

    const int initial = lookup(require(doc, "initial", "MDP document"), "initial");

    std::vector<std::vector<std::string>> labels(states.size());
    if (doc.contains("labels")) {
        const Json& jl = doc.at("labels");
        if (!jl.is_object()) throw ValidationError("'labels' must be an object");
        for (auto it = jl.begin(); it != jl.end(); ++it) {
            int s = lookup(Json(it.key()), "labels");
            if (!it.value().is_array()) throw ValidationError("labels of '" + it.key() + "' must be an array");
            for (const auto& ap : it.value()) {
                if (!ap.is_string()) throw ValidationError("atomic proposition names must be strings");
                labels[s].push_back(ap.get<std::string>());
            }
        }
    }

    const Json& jactions = require(doc, "actions", "MDP document");
    if (!jactions.is_array()) throw ValidationError("'actions' must be an array");
    std::vector<ActionSpec> actions;
    std::set<std::string> action_names;
    size_t dimension = 0;
    for (const auto& ja : jactions) {
        ActionSpec spec;
        const Json& jname = require(ja, "name", "action");
        if (!jname.is_string()) throw ValidationError("action names must be strings");
        spec.name = jname.get<std::string>();
        const std::string context = "action '" + spec.name + "'";
        if (!action_names.insert(spec.name).second) throw ValidationError("duplicate action name '" + spec.name + "'");
        spec.owner = lookup(require(ja, "from", context), context);
        const Json& jto = require(ja, "to", context);
        if (!jto.is_object() || jto.empty()) throw ValidationError(context + ": 'to' must be a nonempty object");
        Rational total = 0;
        for (auto it = jto.begin(); it != jto.end(); ++it) {
            Transition t{lookup(Json(it.key()), context), rational_from_json(it.value(), context)};
            total += t.probability;
            spec.successors.push_back(std::move(t));
        }
        if (total != 1) throw ValidationError(context + ": distribution sums to " + to_string(total));
        if (ja.contains("reward")) {
            const Json& jr = ja.at("reward");
            if (!jr.is_array()) throw ValidationError(context + ": 'reward' must be an array");
            for (const auto& r : jr) spec.reward.push_back(rational_from_json(r, context));
        }
        dimension = std::max(dimension, spec.reward.size());
        actions.push_back(std::move(spec));
    }
    // Omitted reward vectors default to all-zero of the common dimension.
    for (size_t i = 0; i < actions.size(); ++i)
        if (!jactions[i].contains("reward")) actions[i].reward.assign(dimension, Rational(0));

    for (size_t s = 0; s < states.size(); ++s) {
        bool any = std::any_of(actions.begin(), actions.end(), [&](const ActionSpec& a) { return a.owner == static_cast<int>(s); });
        if (!any) throw ValidationError("state '" + states[s] + "' has no actions");
    }
    return build_mdp(std::move(states), initial, std::move(labels), std::move(actions));
}

Rational rational_from_json(const Json& value, const std::string& context) {
    try {
        if (value.is_string()) return parse_rational(value.get<std::string>());
        if (value.is_number_integer()) return Rational(mpz_class(value.dump(), 10));
        if (value.is_number_float()) return parse_rational(value.dump());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(context + ": " + e.what());
    }
    throw ValidationError(context + ": expected a rational, got " + value.dump());
}

std::string dump_json(const Json& doc) {
    return doc.dump(2) + "\n";
}

Json parse_json_text(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // Translate the byte offset into a line/column pair.
        size_t line = 1, column = 1;
        const size_t limit = std::min<size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw ParseError(what, line, column);
    }
}

Mdp parse_mdp(std::string_view text) {
    return mdp_from_json(parse_json_text(text));
}

std::string serialize_mdp(const Mdp& mdp) {
    return dump_json(mdp_to_json(mdp));
}

}  // namespace lrsynth
