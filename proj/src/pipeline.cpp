#include "lrsynth/pipeline.hpp"

#include "lrsynth/errors.hpp"
#include "lrsynth/ltl.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lrsynth {

SssConstraint parse_sss(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos || text.find(':', second + 1) != std::string::npos || first == 0)
        throw std::invalid_argument("steady-state constraint '" + text + "' is not of the form p:lower:upper");
    return {text.substr(0, first), parse_rational(text.substr(first + 1, second - first - 1)),
            parse_rational(text.substr(second + 1))};
}

Objective parse_objective(const std::string& text) {
    Objective objective;
    if (text == "feasibility") return objective;
    if (text == "max-ltl-prob") {
        objective.kind = ObjectiveKind::MaxLtlProbability;
        return objective;
    }
    const std::string reward = "max-reward";
    if (text.rfind(reward, 0) == 0) {
        objective.kind = ObjectiveKind::MaxReward;
        if (text.size() == reward.size()) return objective;
        if (text[reward.size()] != ':') throw std::invalid_argument("unknown objective '" + text + "'");
        std::stringstream weights(text.substr(reward.size() + 1));
        for (std::string w; std::getline(weights, w, ',');) objective.weights.push_back(parse_rational(w));
        if (objective.weights.empty()) throw std::invalid_argument("max-reward needs at least one weight");
        return objective;
    }
    throw std::invalid_argument("unknown objective '" + text + "' (expected feasibility, max-reward[:weights] or max-ltl-prob)");
}

LoadedAutomaton load_automaton(const AutomatonSource& source) {
    if (source.ltl && source.hoa_text) throw std::invalid_argument("give either an LTL formula or a HOA automaton, not both");
    if (source.ltl) {
        const auto formula = ltl::parse(*source.ltl);
        const bool trivial = formula->op() == ltl::Op::True;
        return {ldba_for_formula(formula), "ltl " + ltl::to_string(formula), !trivial};
    }
    if (source.hoa_text) return {parse_hoa(*source.hoa_text), "hoa", true};
    return {unit_ldba(), "none", false};
}

Instance prepare_instance(Mdp mdp, LoadedAutomaton automaton, LongRunSpec spec) {
    Instance inst;
    if (!automaton.has_objective) spec.theta = 0;
    inst.product = build_product(mdp, automaton.automaton);
    inst.mecs = compute_mecs(inst.product);
    inst.amecs = accepting_mecs(inst.product, inst.mecs);
    inst.lp = build_lp(inst.product, inst.mecs, inst.amecs, spec);
    inst.mdp = std::move(mdp);
    inst.automaton = std::move(automaton);
    inst.spec = std::move(spec);
    return inst;
}

namespace {

Json instance_json(const Instance& inst) {
    Json out = Json::object();
    out["automaton"] = {{"source", inst.automaton.description}, {"states", inst.automaton.automaton.state_names.size()}};
    size_t accepting = 0;
    for (bool a : inst.product.accepting) accepting += a;
    out["product"] = {{"states", inst.product.mdp.num_states()},
                      {"actions", inst.product.mdp.num_actions()},
                      {"accepting_states", accepting},
                      {"mecs", inst.mecs.size()},
                      {"accepting_mecs", inst.amecs.size()}};
    return out;
}

Json solution_json(const Instance& inst, const LpSolution& solution) {
    Json out = Json::object();
    out["status"] = status_name(solution.status);
    out["variables"] = inst.lp.variables.size();
    out["constraints"] = inst.lp.constraints.size();
    out["pivots"] = solution.pivots;
    if (!solution.feasible()) return out;
    if (inst.lp.maximize) out["objective"] = to_string(solution.objective);
    Json values = Json::object();
    for (size_t v = 0; v < solution.values.size(); ++v)
        if (sgn(solution.values[v]) != 0) values[inst.lp.variables[v].name] = to_string(solution.values[v]);
    out["solution"] = values;
    return out;
}

std::vector<bool> acceptance_mask(const Instance& inst) {
    return inst.automaton.has_objective ? inst.product.accepting : std::vector<bool>{};
}

}  // namespace

SynthesisOutcome synthesize(const Instance& inst, const Rational& delta) {
    if (sgn(delta) < 0) throw std::invalid_argument("delta must be nonnegative");
    SynthesisOutcome outcome;
    outcome.solution = solve_lp(inst.lp);
    Json report = instance_json(inst);
    report["lp"] = solution_json(inst, outcome.solution);
    report["satisfiable"] = outcome.solution.feasible();

    if (!outcome.solution.feasible()) {
        report["status"] = "infeasible";
        outcome.exit_code = kExitInfeasible;
        outcome.report = report;
        return outcome;
    }

    try {
        outcome.synthesized = extract_policy(outcome.solution, inst.lp, inst.product, inst.mecs, inst.spec, delta);
    } catch (const ExtractionRefused& e) {
        report["status"] = "refused";
        report["message"] = e.what();
        outcome.exit_code = kExitError;
        outcome.report = report;
        return outcome;
    }
    const SynthesizedPolicy& policy = *outcome.synthesized;
    report["policy"] = {{"delta", to_string(policy.delta)},
                        {"epsilon", to_string(policy.epsilon)},
                        {"epsilon_bound", to_string(policy.epsilon_bound)},
                        {"memory", policy.policy.memory}};
    outcome.policy = synthesized_policy_to_json(policy, inst.mdp, inst.product, inst.automaton.automaton);

    const auto mask = acceptance_mask(inst);
    const InducedChain chain = induced_chain(inst.product.mdp, policy.policy, mask);
    const ChainAnalysis analysis = analyze_chain(inst.product.mdp, chain);
    outcome.verification = check_spec(inst.product.mdp, analysis, inst.spec, delta, inst.product.accepting);
    report["verification"] = report_to_json(*outcome.verification);
    report["status"] = outcome.verification->pass ? "verified" : "violated";
    outcome.exit_code = outcome.verification->pass ? kExitOk : kExitViolated;
    outcome.report = report;
    return outcome;
}

CheckOutcome check_policy(const Instance& inst, const Json& policy_doc, const Rational& delta) {
    if (sgn(delta) < 0) throw std::invalid_argument("delta must be nonnegative");
    if (!policy_doc.is_object() || !policy_doc.contains("product"))
        throw ValidationError("policy document has no 'product' section");
    const FiniteMemoryPolicy policy = policy_from_json(inst.product.mdp, policy_doc.at("product"));
    const InducedChain chain = induced_chain(inst.product.mdp, policy, acceptance_mask(inst));
    const ChainAnalysis analysis = analyze_chain(inst.product.mdp, chain);

    CheckOutcome outcome;
    outcome.verification = check_spec(inst.product.mdp, analysis, inst.spec, delta, inst.product.accepting);
    Json report = instance_json(inst);
    report["verification"] = report_to_json(outcome.verification);
    report["status"] = outcome.verification.pass ? "pass" : "fail";
    outcome.report = report;
    outcome.exit_code = outcome.verification.pass ? kExitOk : kExitViolated;
    return outcome;
}

SimulationResult simulate_policy(const Instance& inst, const Json& policy_doc, size_t steps, uint64_t seed) {
    if (!policy_doc.is_object() || !policy_doc.contains("product"))
        throw ValidationError("policy document has no 'product' section");
    const FiniteMemoryPolicy policy = policy_from_json(inst.product.mdp, policy_doc.at("product"));
    return simulate(inst.product.mdp, policy, steps, seed);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace lrsynth
