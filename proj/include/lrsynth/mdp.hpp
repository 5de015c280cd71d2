#pragma once

#include "lrsynth/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lrsynth {

struct Transition {
    int target = 0;
    Rational probability;
};

/// An action is enabled in exactly one state (its owner).
struct Action {
    std::string name;
    int owner = 0;
    std::vector<Transition> successors;  // sorted by target, no duplicates
    std::vector<Rational> reward;
};

/// Finite labeled MDP with exact transition probabilities and per-action
/// reward vectors. States and actions are addressed by index.
struct Mdp {
    std::vector<std::string> states;
    int initial = 0;
    std::vector<Action> actions;
    std::vector<std::vector<int>> enabled;            // state -> action indices
    std::vector<std::vector<std::string>> labels;     // state -> sorted AP names
    std::vector<std::string> ap_universe;             // sorted

    size_t num_states() const { return states.size(); }
    size_t num_actions() const { return actions.size(); }
    size_t reward_dimension() const { return actions.empty() ? 0 : actions.front().reward.size(); }

    /// -1 when absent.
    int state_index(std::string_view name) const;
    int action_index(std::string_view name) const;

    bool has_label(int state, std::string_view ap) const;
};

/// Raw description of an action used to assemble an Mdp.
struct ActionSpec {
    std::string name;
    int owner = 0;
    std::vector<Transition> successors;
    std::vector<Rational> reward;
};

/// Assembles an Mdp: derives enabled sets from owners, sorts labels, merges
/// duplicate successors, collects the AP universe. Throws ValidationError
/// if the result violates any invariant.
Mdp build_mdp(std::vector<std::string> states, int initial,
              std::vector<std::vector<std::string>> labels, std::vector<ActionSpec> actions);

enum class ViolationKind {
    BadInitial,
    EmptyEnabledSet,
    ActionNotUniquelyOwned,
    OwnerMismatch,
    BadSuccessor,
    ProbabilityOutOfRange,
    DistributionSum,
    RewardDimensionMismatch,
    DuplicateName,
    LabelShape,
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

/// Every violated invariant, with the offending identifiers. Empty means valid.
std::vector<Violation> validate_mdp(const Mdp& mdp);

/// Parses the JSON MDP document. Throws ParseError (syntax, with line and
/// column) or ValidationError (unknown state, duplicate action, bad
/// distribution, state without actions).
Mdp parse_mdp(std::string_view text);

/// Inverse of parse_mdp; probabilities and rewards are emitted as exact
/// rational strings.
std::string serialize_mdp(const Mdp& mdp);

}  // namespace lrsynth
