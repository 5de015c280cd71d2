#pragma once

#include "lrsynth/json_io.hpp"
#include "lrsynth/lp.hpp"
#include "lrsynth/mdp.hpp"
#include "lrsynth/policy.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lrsynth {

/// Markov chain induced by a finite-memory policy. A location (s, m, a) is
/// "in state s with memory m, about to play a".
struct InducedChain {
    struct Location {
        int state;
        int memory;
        int action;
    };
    std::vector<Location> locations;
    std::vector<Distribution> transitions;  // location -> successor locations
    std::vector<Rational> initial;          // dense over locations
    std::vector<bool> accepting;            // location -> its state is accepting
    bool has_acceptance = false;
};

/// Builds the reachable part of the induced chain. `accepting_states`, when
/// nonempty, marks MDP states whose recurrence witnesses the LTL objective
/// (product states in F). Throws ValidationError when the policy is undefined
/// somewhere the chain can reach.
InducedChain induced_chain(const Mdp& mdp, const FiniteMemoryPolicy& policy,
                           const std::vector<bool>& accepting_states = {});

/// Exact long-run quantities of an induced chain.
struct ChainAnalysis {
    std::vector<std::vector<int>> bsccs;        // location indices, sorted
    std::vector<Rational> bscc_probability;     // probability of ending in each BSCC
    std::vector<Rational> location_frequency;   // Cesàro-limit frequency per location
    std::vector<Rational> action_frequency;     // per MDP action
    std::vector<Rational> state_frequency;      // per MDP state
    std::map<std::string, Rational> ap_frequency;
    std::vector<Rational> reward;               // long-run average per dimension
    std::optional<Rational> ltl_probability;    // mass of BSCCs with an accepting location
};

ChainAnalysis analyze_chain(const Mdp& mdp, const InducedChain& chain);

/// One checked requirement. margin >= 0 iff it passes.
struct CheckResult {
    std::string kind;  // "ltl", "steady_state", "reward", "frequency"
    std::string name;
    Rational value;
    std::optional<Rational> lower;
    std::optional<Rational> upper;
    Rational margin;
    bool pass = false;
};

struct VerificationReport {
    Rational delta;
    std::vector<CheckResult> checks;
    bool pass = true;
    std::vector<std::pair<std::string, Rational>> action_frequency;  // nonzero entries by name
    std::map<std::string, Rational> ap_frequency;
    std::vector<Rational> reward;
    std::optional<Rational> ltl_probability;
};

/// Checks the analysis against the spec, relaxing steady-state and reward
/// bounds by δ; the LTL threshold is checked without relaxation. The
/// frequency bound is reported but not enforced, since δ-mixing weakens it.
VerificationReport check_spec(const Mdp& mdp, const ChainAnalysis& analysis, const LongRunSpec& spec,
                              const Rational& delta, const std::vector<bool>& accepting_states = {});

Json report_to_json(const VerificationReport& report);

/// Empirical frequencies from one simulated run.
struct SimulationResult {
    uint64_t seed = 0;
    size_t steps = 0;
    size_t batches = 0;
    std::vector<double> action_frequency;
    std::vector<double> action_stderr;  // batch-means standard error
    std::map<std::string, double> ap_frequency;
    std::map<std::string, double> ap_stderr;
    std::vector<double> reward;
};

/// Simulates `steps` steps of the policy on the MDP with a 64-bit Mersenne
/// Twister seeded by `seed`. Standard errors use `batches` equal batches.
SimulationResult simulate(const Mdp& mdp, const FiniteMemoryPolicy& policy, size_t steps, uint64_t seed,
                          size_t batches = 50);

Json simulation_to_json(const Mdp& mdp, const SimulationResult& result);

}  // namespace lrsynth
