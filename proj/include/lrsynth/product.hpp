#pragma once

#include "lrsynth/automata.hpp"
#include "lrsynth/json_io.hpp"
#include "lrsynth/mdp.hpp"

#include <vector>

namespace lrsynth {

/// The reachable fragment of MDP × LDBA. Product states are pairs (s, q);
/// product actions are triples (a, q, r), named "a@q->r", and are enabled
/// at (s, q) for every r in Δ(q, ν(s)).
struct ProductMdp {
    Mdp mdp;
    std::vector<bool> accepting;  // product state -> q ∈ F

    struct StateOrigin {
        int state;      // original MDP state
        int automaton;  // automaton state
    };
    struct ActionOrigin {
        int action;  // original MDP action
        int from;    // automaton state q
        int to;      // automaton state r
    };
    std::vector<StateOrigin> state_origin;
    std::vector<ActionOrigin> action_origin;

    size_t automaton_states = 0;
    size_t original_actions = 0;

    /// Index of the product state (s, q), or -1 if unreachable.
    int find_state(int state, int automaton_state) const;
};

/// Builds the reachable product. Throws std::invalid_argument if the
/// automaton uses a proposition the MDP never mentions, or ValidationError
/// if the automaton is not limit-deterministic.
ProductMdp build_product(const Mdp& mdp, const Ldba& automaton);

std::string product_state_name(const std::string& state, const std::string& automaton_state);
std::string product_action_name(const std::string& action, const std::string& from, const std::string& to);

/// MDP document of the product plus an "accepting" list of state names.
Json product_to_json(const ProductMdp& product);

}  // namespace lrsynth
