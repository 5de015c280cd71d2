#pragma once

#include "lrsynth/automata.hpp"
#include "lrsynth/json_io.hpp"
#include "lrsynth/lp.hpp"
#include "lrsynth/mdp.hpp"
#include "lrsynth/mec.hpp"
#include "lrsynth/product.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace lrsynth {

/// Sparse distribution: (index, probability) pairs sorted by index, all
/// probabilities positive.
using Distribution = std::vector<std::pair<int, Rational>>;

Rational mass(const Distribution& d);

/// Stochastic-update finite-memory policy (σ_u, σ_n, α) on a given MDP.
struct FiniteMemoryPolicy {
    std::vector<std::string> memory;
    std::vector<Rational> alpha;  // initial memory distribution, dense

    /// next_move[state][memory]: distribution over actions enabled at the
    /// state; empty where the policy never needs to move.
    std::vector<std::vector<Distribution>> next_move;

    /// (action, next state, memory) -> distribution over memory.
    std::map<std::tuple<int, int, int>, Distribution> update;

    const Distribution* find_update(int action, int next_state, int mem) const;
};

/// Memory elements of extracted product policies.
inline constexpr int kTransient = 0;
inline constexpr int kRecurrent = 1;

/// Finite-memory δ-satisfying policy on the product.
struct SynthesizedPolicy {
    FiniteMemoryPolicy policy;
    Rational delta;
    /// δ / (|Q|·|A_G|·max{1, R_max}): per-action frequency tolerance.
    Rational epsilon_bound;
    /// Smallest mixing rate used in a recurrent MEC policy (0 when none mixes).
    Rational epsilon;
};

/// The LP solution cannot be realized as requested (e.g. δ = 0 on an
/// instance whose exact satisfaction needs unbounded memory).
class ExtractionRefused : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Turns a feasible LP solution into a 2-memory stochastic-update policy:
/// the transient mode follows the y-flow and switches to the recurrent mode
/// at state s with probability y_s / (y_s + Σ y_a); the recurrent mode plays
/// x-proportionally inside its MEC, mixed with uniform play so the whole MEC
/// is visited infinitely often. Mixing rates are weighted per recurrent class
/// of the x-support so the mixed frequencies converge to x, and are halved
/// until the exact frequencies are within the tolerance implied by δ.
///
/// With δ = 0 no mixing is done; this is only possible when every used MEC
/// has a single x-recurrent class (containing an accepting state where the
/// LTL threshold needs it), otherwise ExtractionRefused is thrown.
SynthesizedPolicy extract_policy(const LpSolution& solution, const LpProblem& lp, const ProductMdp& product,
                                 const std::vector<Mec>& mecs, const LongRunSpec& spec, const Rational& delta);

/// The product policy as a policy on the original MDP, with memory
/// (automaton state, mode); the update tracks the automaton move chosen by
/// the product action.
FiniteMemoryPolicy project_policy(const SynthesizedPolicy& policy, const Mdp& mdp, const ProductMdp& product,
                                  const Ldba& automaton);

/// Throws ValidationError if a distribution does not sum to 1 exactly,
/// mentions a disabled action, or indices are out of range.
void validate_policy(const Mdp& mdp, const FiniteMemoryPolicy& policy);

Json policy_to_json(const Mdp& mdp, const FiniteMemoryPolicy& policy);
/// Inverse of policy_to_json; names are resolved against the MDP and the
/// result is validated.
FiniteMemoryPolicy policy_from_json(const Mdp& mdp, const Json& doc);

/// The policy file: product policy, its projection, and the mixing parameters.
Json synthesized_policy_to_json(const SynthesizedPolicy& policy, const Mdp& mdp, const ProductMdp& product,
                                 const Ldba& automaton);

}  // namespace lrsynth
