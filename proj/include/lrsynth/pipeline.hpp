#pragma once

#include "lrsynth/automata.hpp"
#include "lrsynth/json_io.hpp"
#include "lrsynth/lp.hpp"
#include "lrsynth/mdp.hpp"
#include "lrsynth/mec.hpp"
#include "lrsynth/policy.hpp"
#include "lrsynth/product.hpp"
#include "lrsynth/verify.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace lrsynth {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitViolated = 3;

/// "p:l:u" with rational bounds.
SssConstraint parse_sss(const std::string& text);
/// "feasibility", "max-ltl-prob", "max-reward" or "max-reward:w1,w2,...".
Objective parse_objective(const std::string& text);

/// Where the automaton comes from: an LTL formula matching a builtin family,
/// a HOA document, or neither (the unit automaton, with θ ignored).
struct AutomatonSource {
    std::optional<std::string> ltl;
    std::optional<std::string> hoa_text;
};

struct LoadedAutomaton {
    Ldba automaton;
    std::string description;  // "builtin GF p", "hoa", "none"
    bool has_objective = false;
};

LoadedAutomaton load_automaton(const AutomatonSource& source);

/// Product, MEC decomposition and LP for an instance.
struct Instance {
    Mdp mdp;
    LoadedAutomaton automaton;
    LongRunSpec spec;
    ProductMdp product;
    std::vector<Mec> mecs;
    std::vector<Mec> amecs;
    LpProblem lp;
};

/// Builds the instance; θ is reset to 0 when there is no LTL objective.
Instance prepare_instance(Mdp mdp, LoadedAutomaton automaton, LongRunSpec spec);

struct SynthesisOutcome {
    int exit_code = kExitError;
    Json report;
    std::optional<Json> policy;  // policy file document when extraction ran
    LpSolution solution;
    std::optional<SynthesizedPolicy> synthesized;
    std::optional<VerificationReport> verification;
};

/// LP, extraction and exact verification. Exit codes: 0 verified,
/// 1 extraction refused, 2 infeasible, 3 verification failed.
SynthesisOutcome synthesize(const Instance& instance, const Rational& delta);

struct CheckOutcome {
    int exit_code = kExitError;
    Json report;
    VerificationReport verification;
};

/// Re-verifies a stored policy document (its "product" section) on the
/// instance. Exit codes: 0 pass, 3 fail. Malformed documents throw
/// ValidationError.
CheckOutcome check_policy(const Instance& instance, const Json& policy_doc, const Rational& delta);

/// Simulates the stored policy on the product.
SimulationResult simulate_policy(const Instance& instance, const Json& policy_doc, size_t steps, uint64_t seed);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lrsynth
