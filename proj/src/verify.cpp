#include "lrsynth/verify.hpp"

#include "lrsynth/errors.hpp"
#include "lrsynth/graph.hpp"
#include "lrsynth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

namespace lrsynth {

namespace {

void add_entry(Distribution& d, int index, const Rational& p) {
    auto it = std::lower_bound(d.begin(), d.end(), index, [](const auto& e, int i) { return e.first < i; });
    if (it != d.end() && it->first == index) it->second += p;
    else d.insert(it, {index, p});
}

std::string describe(const Mdp& mdp, const FiniteMemoryPolicy& policy, int state, int mem) {
    return "(" + mdp.states[state] + ", " + policy.memory[mem] + ")";
}

}  // namespace

InducedChain induced_chain(const Mdp& mdp, const FiniteMemoryPolicy& policy, const std::vector<bool>& accepting_states) {
    if (policy.next_move.size() != mdp.num_states() || policy.alpha.size() != policy.memory.size())
        throw ValidationError("policy does not match the MDP");
    if (!accepting_states.empty() && accepting_states.size() != mdp.num_states())
        throw std::invalid_argument("accepting mask does not match the MDP");

    InducedChain chain;
    chain.has_acceptance = !accepting_states.empty();
    std::map<std::tuple<int, int, int>, int> index;
    std::vector<int> queue;
    auto locate = [&](int s, int m, int a) {
        auto [it, fresh] = index.try_emplace({s, m, a}, static_cast<int>(chain.locations.size()));
        if (fresh) {
            chain.locations.push_back({s, m, a});
            chain.transitions.emplace_back();
            chain.accepting.push_back(chain.has_acceptance && accepting_states[s]);
            queue.push_back(it->second);
        }
        return it->second;
    };
    auto moves = [&](int s, int m) -> const Distribution& {
        const Distribution& d = policy.next_move[s][m];
        if (d.empty()) throw ValidationError("policy has no next move at " + describe(mdp, policy, s, m));
        return d;
    };

    Distribution initial;
    for (size_t m = 0; m < policy.memory.size(); ++m) {
        if (sgn(policy.alpha[m]) == 0) continue;
        for (const auto& [a, p] : moves(mdp.initial, static_cast<int>(m)))
            add_entry(initial, locate(mdp.initial, static_cast<int>(m), a), policy.alpha[m] * p);
    }

    for (size_t head = 0; head < queue.size(); ++head) {
        const int loc = queue[head];
        const auto [s, m, a] = chain.locations[loc];
        Distribution out;
        for (const auto& t : mdp.actions[a].successors) {
            const Distribution* upd = policy.find_update(a, t.target, m);
            if (!upd)
                throw ValidationError("policy has no memory update for action '" + mdp.actions[a].name + "' into " +
                                      describe(mdp, policy, t.target, m));
            for (const auto& [m2, pu] : *upd)
                for (const auto& [a2, pa] : moves(t.target, m2)) add_entry(out, locate(t.target, m2, a2), t.probability * pu * pa);
        }
        chain.transitions[loc] = std::move(out);
    }

    chain.initial.assign(chain.locations.size(), Rational(0));
    for (const auto& [l, p] : initial) chain.initial[l] = p;
    return chain;
}

namespace {

// Solves v·(I - P_KK) = rhs for a set K of locations from which the chain
// leaves with positive probability (or, with `normalize`, the stationary
// equations of a closed class).
std::vector<Rational> solve_block(const InducedChain& chain, const std::vector<int>& block, const std::vector<int>& pos,
                                  const std::vector<Rational>& rhs, bool normalize) {
    const size_t k = block.size();
    Matrix a(k, k);
    std::vector<Rational> b(rhs);
    for (size_t i = 0; i < k; ++i) {
        a(i, i) += 1;
        for (const auto& [j, p] : chain.transitions[block[i]])
            if (pos[j] >= 0) a(pos[j], i) -= p;
    }
    if (normalize) {
        for (size_t i = 0; i < k; ++i) a(k - 1, i) = 1;
        b.assign(k, Rational(0));
        b[k - 1] = 1;
    }
    auto v = solve_linear(std::move(a), std::move(b));
    if (!v) throw std::logic_error("singular system in chain analysis");
    return *v;
}

}  // namespace

ChainAnalysis analyze_chain(const Mdp& mdp, const InducedChain& chain) {
    const size_t n = chain.locations.size();
    Digraph graph(n);
    for (size_t l = 0; l < n; ++l)
        for (const auto& [j, p] : chain.transitions[l]) graph[l].push_back(j);
    const SccResult scc = strongly_connected_components(graph);

    std::vector<std::vector<int>> members(scc.count);
    for (size_t l = 0; l < n; ++l) members[scc.component[l]].push_back(static_cast<int>(l));
    std::vector<bool> bottom(scc.count, true);
    for (size_t l = 0; l < n; ++l)
        for (int j : graph[l])
            if (scc.component[j] != scc.component[l]) bottom[scc.component[l]] = false;

    // Expected visits to transient locations, one SCC at a time in
    // topological order (SCC ids are reverse topological).
    std::vector<Rational> inflow(chain.initial);
    std::vector<int> pos(n, -1);
    ChainAnalysis out;
    out.location_frequency.assign(n, Rational(0));
    for (int c = scc.count - 1; c >= 0; --c) {
        const auto& block = members[c];
        if (bottom[c]) {
            out.bsccs.push_back(block);
            Rational reach = 0;
            for (int l : block) reach += inflow[l];
            out.bscc_probability.push_back(reach);
            continue;
        }
        for (size_t i = 0; i < block.size(); ++i) pos[block[i]] = static_cast<int>(i);
        std::vector<Rational> rhs;
        for (int l : block) rhs.push_back(inflow[l]);
        const auto visits = solve_block(chain, block, pos, rhs, false);
        for (size_t i = 0; i < block.size(); ++i) {
            for (const auto& [j, p] : chain.transitions[block[i]])
                if (pos[j] < 0) inflow[j] += visits[i] * p;
        }
        for (int l : block) pos[l] = -1;
    }

    for (size_t b = 0; b < out.bsccs.size(); ++b) {
        const auto& block = out.bsccs[b];
        if (sgn(out.bscc_probability[b]) == 0) continue;
        for (size_t i = 0; i < block.size(); ++i) pos[block[i]] = static_cast<int>(i);
        const auto pi = solve_block(chain, block, pos, std::vector<Rational>(block.size()), true);
        for (size_t i = 0; i < block.size(); ++i) out.location_frequency[block[i]] = out.bscc_probability[b] * pi[i];
        for (int l : block) pos[l] = -1;
    }

    out.action_frequency.assign(mdp.num_actions(), Rational(0));
    out.state_frequency.assign(mdp.num_states(), Rational(0));
    for (size_t l = 0; l < n; ++l) {
        out.action_frequency[chain.locations[l].action] += out.location_frequency[l];
        out.state_frequency[chain.locations[l].state] += out.location_frequency[l];
    }
    for (const auto& ap : mdp.ap_universe) out.ap_frequency[ap] = 0;
    for (size_t s = 0; s < mdp.num_states(); ++s)
        for (const auto& ap : mdp.labels[s]) out.ap_frequency[ap] += out.state_frequency[s];
    out.reward.assign(mdp.reward_dimension(), Rational(0));
    for (size_t a = 0; a < mdp.num_actions(); ++a)
        for (size_t d = 0; d < out.reward.size(); ++d) out.reward[d] += out.action_frequency[a] * mdp.actions[a].reward[d];

    if (chain.has_acceptance) {
        Rational accepted = 0;
        for (size_t b = 0; b < out.bsccs.size(); ++b) {
            const auto& block = out.bsccs[b];
            if (std::any_of(block.begin(), block.end(), [&](int l) { return chain.accepting[l]; }))
                accepted += out.bscc_probability[b];
        }
        out.ltl_probability = accepted;
    }
    return out;
}

VerificationReport check_spec(const Mdp& mdp, const ChainAnalysis& analysis, const LongRunSpec& spec,
                              const Rational& delta, const std::vector<bool>& accepting_states) {
    VerificationReport report;
    report.delta = delta;
    report.ap_frequency = analysis.ap_frequency;
    report.reward = analysis.reward;
    report.ltl_probability = analysis.ltl_probability;
    for (size_t a = 0; a < mdp.num_actions(); ++a)
        if (sgn(analysis.action_frequency[a]) != 0) report.action_frequency.push_back({mdp.actions[a].name, analysis.action_frequency[a]});

    auto record = [&](CheckResult check, bool enforced = true) {
        if (enforced) report.pass = report.pass && check.pass;
        report.checks.push_back(std::move(check));
    };

    if (analysis.ltl_probability) {
        CheckResult c{"ltl", "probability", *analysis.ltl_probability, spec.theta, std::nullopt, 0, false};
        c.margin = c.value - spec.theta;
        c.pass = sgn(c.margin) >= 0;
        record(c);
    }
    for (const auto& sss : spec.sss) {
        auto it = analysis.ap_frequency.find(sss.ap);
        const Rational value = it == analysis.ap_frequency.end() ? Rational(0) : it->second;
        CheckResult c{"steady_state", sss.ap, value, sss.lower, sss.upper, 0, false};
        c.margin = std::min(Rational(value - (sss.lower - delta)), Rational((sss.upper + delta) - value));
        c.pass = sgn(c.margin) >= 0;
        record(c);
    }
    for (size_t d = 0; d < spec.reward_thresholds.size(); ++d) {
        const Rational value = d < analysis.reward.size() ? analysis.reward[d] : Rational(0);
        CheckResult c{"reward", "dim" + std::to_string(d), value, spec.reward_thresholds[d], std::nullopt, 0, false};
        c.margin = value - (spec.reward_thresholds[d] - delta);
        c.pass = sgn(c.margin) >= 0;
        record(c);
    }
    if (spec.frequency_bound && !accepting_states.empty()) {
        Rational value = 0;
        for (size_t s = 0; s < mdp.num_states(); ++s)
            if (accepting_states[s]) value += analysis.state_frequency[s];
        const Rational bound = 1 / *spec.frequency_bound;
        CheckResult c{"frequency", "accepting", value, bound, std::nullopt, value - bound, false};
        c.pass = sgn(c.margin) >= 0;
        record(c, false);
    }
    return report;
}

Json report_to_json(const VerificationReport& report) {
    Json out = Json::object();
    out["pass"] = report.pass;
    out["delta"] = to_string(report.delta);
    if (report.ltl_probability) out["ltl_probability"] = to_string(*report.ltl_probability);
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json j = Json::object();
        j["kind"] = c.kind;
        j["name"] = c.name;
        j["value"] = to_string(c.value);
        j["lower"] = c.lower ? Json(to_string(*c.lower)) : Json(nullptr);
        j["upper"] = c.upper ? Json(to_string(*c.upper)) : Json(nullptr);
        j["margin"] = to_string(c.margin);
        j["pass"] = c.pass;
        j["enforced"] = c.kind != "frequency";
        checks.push_back(j);
    }
    out["checks"] = checks;
    Json aps = Json::object();
    for (const auto& [ap, v] : report.ap_frequency) aps[ap] = to_string(v);
    out["ap_frequency"] = aps;
    Json reward = Json::array();
    for (const auto& r : report.reward) reward.push_back(to_string(r));
    out["reward"] = reward;
    Json actions = Json::object();
    for (const auto& [name, v] : report.action_frequency) actions[name] = to_string(v);
    out["action_frequency"] = actions;
    return out;
}

namespace {

// Uniform double in [0,1) from the top 53 bits; unlike the standard
// distributions this is identical across standard library implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Sampler {
    std::vector<int> items;
    std::vector<double> cumulative;

    explicit Sampler(const Distribution& d) {
        double acc = 0;
        for (const auto& [i, p] : d) {
            acc += to_double(p);
            items.push_back(i);
            cumulative.push_back(acc);
        }
    }
    int draw(std::mt19937_64& rng) const {
        const double u = uniform01(rng) * cumulative.back();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return items[std::min<size_t>(static_cast<size_t>(it - cumulative.begin()), items.size() - 1)];
    }
};

}  // namespace

SimulationResult simulate(const Mdp& mdp, const FiniteMemoryPolicy& policy, size_t steps, uint64_t seed, size_t batches) {
    if (steps == 0) throw std::invalid_argument("simulation needs at least one step");
    if (batches < 2 || batches > steps) throw std::invalid_argument("need 2 <= batches <= steps");
    validate_policy(mdp, policy);

    std::mt19937_64 rng(seed);
    std::map<std::pair<int, int>, Sampler> move_cache;
    std::map<std::tuple<int, int, int>, Sampler> update_cache;
    std::vector<Sampler> successor;
    for (const auto& action : mdp.actions) {
        Distribution d;
        for (const auto& t : action.successors) d.push_back({t.target, t.probability});
        successor.emplace_back(d);
    }
    auto move = [&](int s, int m) -> const Sampler& {
        auto it = move_cache.find({s, m});
        if (it != move_cache.end()) return it->second;
        const Distribution& d = policy.next_move[s][m];
        if (d.empty()) throw ValidationError("policy has no next move at " + describe(mdp, policy, s, m));
        return move_cache.emplace(std::make_pair(s, m), Sampler(d)).first->second;
    };
    auto update = [&](int a, int s, int m) -> const Sampler& {
        auto it = update_cache.find({a, s, m});
        if (it != update_cache.end()) return it->second;
        const Distribution* d = policy.find_update(a, s, m);
        if (!d) throw ValidationError("policy has no memory update for action '" + mdp.actions[a].name + "'");
        return update_cache.emplace(std::make_tuple(a, s, m), Sampler(*d)).first->second;
    };

    Distribution alpha;
    for (size_t m = 0; m < policy.alpha.size(); ++m)
        if (sgn(policy.alpha[m]) > 0) alpha.push_back({static_cast<int>(m), policy.alpha[m]});
    int state = mdp.initial;
    int mem = Sampler(alpha).draw(rng);
    int action = move(state, mem).draw(rng);

    const size_t na = mdp.num_actions();
    const size_t per_batch = steps / batches;
    const size_t used = per_batch * batches;
    std::vector<std::vector<double>> batch_actions(batches, std::vector<double>(na));
    std::vector<double> total(na);
    for (size_t t = 0; t < steps; ++t) {
        total[action] += 1;
        if (t < used) batch_actions[t / per_batch][action] += 1;
        const int next = successor[action].draw(rng);
        mem = update(action, next, mem).draw(rng);
        state = next;
        action = move(state, mem).draw(rng);
    }

    SimulationResult out;
    out.seed = seed;
    out.steps = steps;
    out.batches = batches;
    out.action_frequency.resize(na);
    out.action_stderr.resize(na);
    auto stderr_of = [&](const std::vector<double>& per_batch_counts) {
        double mean = 0;
        for (double c : per_batch_counts) mean += c / per_batch;
        mean /= batches;
        double var = 0;
        for (double c : per_batch_counts) var += (c / per_batch - mean) * (c / per_batch - mean);
        var /= batches - 1;
        return std::sqrt(var / batches);
    };
    for (size_t a = 0; a < na; ++a) {
        out.action_frequency[a] = total[a] / steps;
        std::vector<double> counts(batches);
        for (size_t b = 0; b < batches; ++b) counts[b] = batch_actions[b][a];
        out.action_stderr[a] = stderr_of(counts);
    }
    for (const auto& ap : mdp.ap_universe) {
        double freq = 0;
        std::vector<double> counts(batches);
        for (size_t a = 0; a < na; ++a) {
            if (!mdp.has_label(mdp.actions[a].owner, ap)) continue;
            freq += out.action_frequency[a];
            for (size_t b = 0; b < batches; ++b) counts[b] += batch_actions[b][a];
        }
        out.ap_frequency[ap] = freq;
        out.ap_stderr[ap] = stderr_of(counts);
    }
    out.reward.assign(mdp.reward_dimension(), 0.0);
    for (size_t a = 0; a < na; ++a)
        for (size_t d = 0; d < out.reward.size(); ++d) out.reward[d] += out.action_frequency[a] * to_double(mdp.actions[a].reward[d]);
    return out;
}

Json simulation_to_json(const Mdp& mdp, const SimulationResult& result) {
    Json out = Json::object();
    out["seed"] = result.seed;
    out["steps"] = result.steps;
    out["batches"] = result.batches;
    Json actions = Json::object();
    for (size_t a = 0; a < mdp.num_actions(); ++a) {
        if (result.action_frequency[a] == 0) continue;
        actions[mdp.actions[a].name] = {{"frequency", result.action_frequency[a]}, {"stderr", result.action_stderr[a]}};
    }
    out["action_frequency"] = actions;
    Json aps = Json::object();
    for (const auto& [ap, f] : result.ap_frequency) aps[ap] = {{"frequency", f}, {"stderr", result.ap_stderr.at(ap)}};
    out["ap_frequency"] = aps;
    out["reward"] = result.reward;
    return out;
}

}  // namespace lrsynth
