// Command-line front end: synthesize, check, product, mecs, simulate.

#include "lrsynth/errors.hpp"
#include "lrsynth/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace lrsynth;

namespace {

struct Options {
    std::string mdp;
    std::string ltl;
    std::string hoa;
    std::string theta = "0";
    std::vector<std::string> sss;
    std::vector<std::string> reward_thresholds;
    std::string objective = "feasibility";
    std::string delta = "1/100";
    std::string freq_bound;
    bool per_mec = false;
    uint64_t seed = 1;
    size_t steps = 0;
    size_t sim_steps = 100000;
    std::string out;
    std::string dump_lp;
    std::string policy;
};

void add_model_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--mdp", o.mdp, "MDP JSON file")->required();
    auto* ltl = cmd->add_option("--ltl", o.ltl, "LTL formula from a builtin family (GF p, FG p, F p, G p, p U q, GF a -> GF b)");
    auto* hoa = cmd->add_option("--hoa", o.hoa, "LDBA in HOA format");
    ltl->excludes(hoa);
}

void add_spec_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--theta", o.theta, "minimum probability of the LTL objective");
    cmd->add_option("--sss", o.sss, "steady-state constraint p:lower:upper (repeatable)");
    cmd->add_option("--reward-threshold", o.reward_thresholds, "long-run average reward threshold, one per dimension");
    cmd->add_option("--objective", o.objective, "feasibility | max-reward[:w1,w2,...] | max-ltl-prob");
    cmd->add_option("--delta", o.delta, "tolerance on steady-state and reward bounds");
    auto* freq = cmd->add_option("--freq-bound", o.freq_bound, "visit accepting states at least once every f steps on average");
    cmd->add_flag("--per-mec", o.per_mec, "apply the frequency bound to each accepting MEC")->needs(freq);
}

Instance load_instance(const Options& o) {
    Mdp mdp = parse_mdp(read_file(o.mdp));
    AutomatonSource source;
    if (!o.ltl.empty()) source.ltl = o.ltl;
    if (!o.hoa.empty()) source.hoa_text = read_file(o.hoa);
    LoadedAutomaton automaton = load_automaton(source);
    if (!automaton.has_objective && parse_rational(o.theta) != 0)
        std::cerr << "warning: no LTL objective given; --theta is ignored\n";

    LongRunSpec spec;
    spec.theta = parse_rational(o.theta);
    for (const auto& s : o.sss) spec.sss.push_back(parse_sss(s));
    for (const auto& r : o.reward_thresholds) spec.reward_thresholds.push_back(parse_rational(r));
    spec.objective = parse_objective(o.objective);
    if (!o.freq_bound.empty()) spec.frequency_bound = parse_rational(o.freq_bound);
    spec.per_mec_frequency = o.per_mec;
    return prepare_instance(std::move(mdp), std::move(automaton), std::move(spec));
}

void emit(const Options& o, const Json& doc) {
    if (o.out.empty()) std::cout << dump_json(doc);
    else write_file(o.out, dump_json(doc));
}

int run_synthesize(const Options& o) {
    const Instance inst = load_instance(o);
    if (!o.dump_lp.empty()) write_file(o.dump_lp, format_lp(inst.lp));
    SynthesisOutcome outcome = synthesize(inst, parse_rational(o.delta));
    if (outcome.policy && !o.out.empty()) write_file(o.out, dump_json(*outcome.policy));
    if (outcome.policy && o.steps > 0) {
        const auto sim = simulate_policy(inst, *outcome.policy, o.steps, o.seed);
        outcome.report["simulation"] = simulation_to_json(inst.product.mdp, sim);
    }
    std::cout << dump_json(outcome.report);
    return outcome.exit_code;
}

int run_check(const Options& o) {
    const Instance inst = load_instance(o);
    const Json policy = parse_json_text(read_file(o.policy));
    const CheckOutcome outcome = check_policy(inst, policy, parse_rational(o.delta));
    std::cout << dump_json(outcome.report);
    return outcome.exit_code;
}

int run_product(const Options& o) {
    const Instance inst = load_instance(o);
    emit(o, product_to_json(inst.product));
    return kExitOk;
}

int run_mecs(const Options& o) {
    if (o.ltl.empty() && o.hoa.empty()) {
        const Mdp mdp = parse_mdp(read_file(o.mdp));
        emit(o, mecs_to_json(mdp, compute_mecs(mdp)));
        return kExitOk;
    }
    const Instance inst = load_instance(o);
    emit(o, mecs_to_json(inst.product.mdp, inst.mecs));
    return kExitOk;
}

int run_simulate(const Options& o) {
    const Instance inst = load_instance(o);
    const Json policy = parse_json_text(read_file(o.policy));
    const auto result = simulate_policy(inst, policy, o.sim_steps, o.seed);
    emit(o, simulation_to_json(inst.product.mdp, result));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Policy synthesis for MDPs under LTL, steady-state and long-run reward constraints"};
    app.require_subcommand(1);
    Options o;

    auto* synth = app.add_subcommand("synthesize", "solve the LP, extract and verify a policy");
    add_model_flags(synth, o);
    add_spec_flags(synth, o);
    synth->add_option("--out", o.out, "write the policy JSON here");
    synth->add_option("--dump-lp", o.dump_lp, "write the LP in tagged text form here");
    synth->add_option("--seed", o.seed, "simulation seed");
    synth->add_option("--steps", o.steps, "also simulate this many steps of the policy");

    auto* check = app.add_subcommand("check", "re-verify a stored policy");
    add_model_flags(check, o);
    add_spec_flags(check, o);
    check->add_option("--policy", o.policy, "policy JSON written by synthesize")->required();

    auto* product = app.add_subcommand("product", "print the product MDP");
    add_model_flags(product, o);
    product->add_option("--out", o.out, "output file");

    auto* mecs = app.add_subcommand("mecs", "print the MEC decomposition (of the product if an automaton is given)");
    add_model_flags(mecs, o);
    mecs->add_option("--out", o.out, "output file");

    auto* sim = app.add_subcommand("simulate", "simulate a stored policy");
    add_model_flags(sim, o);
    sim->add_option("--policy", o.policy, "policy JSON written by synthesize")->required();
    sim->add_option("--steps", o.sim_steps, "number of steps");
    sim->add_option("--seed", o.seed, "random seed");
    sim->add_option("--out", o.out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) return run_synthesize(o);
        if (*check) return run_check(o);
        if (*product) return run_product(o);
        if (*mecs) return run_mecs(o);
        if (*sim) return run_simulate(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
