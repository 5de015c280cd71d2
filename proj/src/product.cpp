#include "lrsynth/product.hpp"

#include "lrsynth/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lrsynth {

int ProductMdp::find_state(int state, int automaton_state) const {
    for (size_t i = 0; i < state_origin.size(); ++i)
        if (state_origin[i].state == state && state_origin[i].automaton == automaton_state) return static_cast<int>(i);
    return -1;
}

std::string product_state_name(const std::string& state, const std::string& automaton_state) {
    return "(" + state + "," + automaton_state + ")";
}

std::string product_action_name(const std::string& action, const std::string& from, const std::string& to) {
    return action + "@" + from + "->" + to;
}

ProductMdp build_product(const Mdp& mdp, const Ldba& automaton) {
    if (auto violations = validate_ldba(automaton); !violations.empty())
        throw ValidationError("automaton is not limit-deterministic: " + violations.front().message);
    for (const auto& p : automaton.ap) {
        if (!std::binary_search(mdp.ap_universe.begin(), mdp.ap_universe.end(), p))
            throw std::invalid_argument("AP mismatch: automaton proposition '" + p + "' does not label any MDP state");
    }

    ProductMdp product;
    product.automaton_states = automaton.num_states();
    product.original_actions = mdp.num_actions();

    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> order;
    auto intern = [&](int s, int q) {
        auto [it, inserted] = index.emplace(std::make_pair(s, q), static_cast<int>(order.size()));
        if (inserted) order.emplace_back(s, q);
        return it->second;
    };

    // Breadth-first exploration from (ŝ, q0); the first pass only discovers states.
    struct PendingAction {
        int owner;
        int action;
        int from;
        int to;
    };
    std::vector<PendingAction> pending;
    intern(mdp.initial, automaton.initial);
    for (size_t i = 0; i < order.size(); ++i) {
        auto [s, q] = order[i];
        const LetterMask letter = automaton.letter_of(mdp.labels[s]);
        for (int a : mdp.enabled[s]) {
            for (int r : automaton.delta[q][letter]) {
                pending.push_back({static_cast<int>(i), a, q, r});
                for (const auto& t : mdp.actions[a].successors) intern(t.target, r);
            }
        }
    }

    std::vector<std::string> names;
    std::vector<std::vector<std::string>> labels;
    for (auto [s, q] : order) {
        names.push_back(product_state_name(mdp.states[s], automaton.state_names[q]));
        labels.push_back(mdp.labels[s]);
        product.state_origin.push_back({s, q});
        product.accepting.push_back(automaton.accepting[q]);
    }

    std::vector<ActionSpec> actions;
    for (const auto& p : pending) {
        const Action& orig = mdp.actions[p.action];
        ActionSpec spec;
        spec.name = product_action_name(orig.name, automaton.state_names[p.from], automaton.state_names[p.to]);
        spec.owner = p.owner;
        for (const auto& t : orig.successors) spec.successors.push_back({index.at({t.target, p.to}), t.probability});
        spec.reward = orig.reward;
        actions.push_back(std::move(spec));
        product.action_origin.push_back({p.action, p.from, p.to});
    }
    product.mdp = build_mdp(std::move(names), 0, std::move(labels), std::move(actions));
    // build_mdp recomputes the AP universe from reachable labels only; keep the full one.
    product.mdp.ap_universe = mdp.ap_universe;
    return product;
}

Json product_to_json(const ProductMdp& product) {
    Json doc = mdp_to_json(product.mdp);
    Json accepting = Json::array();
    for (size_t s = 0; s < product.mdp.num_states(); ++s)
        if (product.accepting[s]) accepting.push_back(product.mdp.states[s]);
    doc["accepting"] = accepting;
    return doc;
}

}  // namespace lrsynth
