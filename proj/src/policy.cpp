#include "lrsynth/policy.hpp"

#include "lrsynth/errors.hpp"
#include "lrsynth/graph.hpp"
#include "lrsynth/linalg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace lrsynth {

Rational mass(const Distribution& d) {
    Rational total = 0;
    for (const auto& [i, p] : d) total += p;
    return total;
}

const Distribution* FiniteMemoryPolicy::find_update(int action, int next_state, int mem) const {
    auto it = update.find({action, next_state, mem});
    return it == update.end() ? nullptr : &it->second;
}

namespace {

// Adds p to entry i of a sparse distribution, keeping it sorted.
void accumulate(Distribution& d, int index, const Rational& p) {
    if (sgn(p) == 0) return;
    auto it = std::lower_bound(d.begin(), d.end(), index, [](const auto& e, int i) { return e.first < i; });
    if (it != d.end() && it->first == index) it->second += p;
    else d.insert(it, {index, p});
}

Distribution dirac(int index) { return {{index, Rational(1)}}; }

Distribution mix(const Distribution& base, const Distribution& noise, const Rational& rate) {
    Distribution out;
    for (const auto& [i, p] : base) accumulate(out, i, (1 - rate) * p);
    for (const auto& [i, p] : noise) accumulate(out, i, rate * p);
    return out;
}

// Stationary distribution of the memoryless chain on `states` (closed under
// `moves`, irreducible). `local` maps a global state to its position.
std::vector<Rational> stationary(const Mdp& mdp, const std::vector<int>& states, const std::vector<int>& local,
                                 const std::vector<Distribution>& moves) {
    const size_t k = states.size();
    // Rows j < k-1: Σ_i π_i (P_ij - [i=j]) = 0; last row: Σ_i π_i = 1.
    Matrix a(k, k);
    std::vector<Rational> b(k);
    for (size_t i = 0; i < k; ++i) {
        for (const auto& [act, p] : moves[i])
            for (const auto& t : mdp.actions[act].successors) {
                const int j = local[t.target];
                if (static_cast<size_t>(j) + 1 < k) a(j, i) += p * t.probability;
            }
        if (i + 1 < k) a(i, i) -= 1;
        a(k - 1, i) = 1;
    }
    b[k - 1] = 1;
    auto pi = solve_linear(std::move(a), std::move(b));
    if (!pi) throw std::logic_error("recurrent MEC policy is not irreducible");
    return *pi;
}

struct MecPlan {
    std::vector<int> states;                 // MEC states
    std::vector<int> local;                  // global state -> position, -1 outside
    std::vector<Distribution> uniform;       // per position, over MEC actions
    std::vector<Distribution> proportional;  // per position, x-proportional (empty off support)
    std::vector<int> cls;                    // per position: recurrent class of the x-support, -1 if zero mass
    std::vector<Rational> rate;              // per class: relative mixing rate in (0,1]
    size_t classes = 0;
};

MecPlan plan_mec(const Mdp& mdp, const Mec& mec, const std::vector<Rational>& x) {
    MecPlan plan;
    plan.states = mec.states;
    plan.local.assign(mdp.num_states(), -1);
    for (size_t i = 0; i < mec.states.size(); ++i) plan.local[mec.states[i]] = static_cast<int>(i);
    const size_t k = mec.states.size();

    std::vector<bool> in_mec(mdp.num_actions(), false);
    for (int a : mec.actions) in_mec[a] = true;

    plan.uniform.resize(k);
    plan.proportional.resize(k);
    std::vector<Rational> state_mass(k);
    for (size_t i = 0; i < k; ++i) {
        std::vector<int> acts;
        for (int a : mdp.enabled[mec.states[i]])
            if (in_mec[a]) acts.push_back(a);
        for (int a : acts) {
            plan.uniform[i].push_back({a, ratio(1, static_cast<long>(acts.size()))});
            state_mass[i] += x[a];
        }
        if (sgn(state_mass[i]) > 0)
            for (int a : acts)
                if (sgn(x[a]) > 0) plan.proportional[i].push_back({a, x[a] / state_mass[i]});
    }

    // Recurrent classes of the x-proportional chain. x is a stationary flow,
    // so every support state is recurrent and each SCC is closed.
    Digraph support(k);
    for (size_t i = 0; i < k; ++i)
        for (const auto& [a, p] : plan.proportional[i])
            for (const auto& t : mdp.actions[a].successors) support[i].push_back(plan.local[t.target]);
    const SccResult scc = strongly_connected_components(support);
    plan.cls.assign(k, -1);
    std::vector<int> renumber(scc.count, -1);
    for (size_t i = 0; i < k; ++i) {
        if (plan.proportional[i].empty()) continue;
        int& c = renumber[scc.component[i]];
        if (c < 0) c = static_cast<int>(plan.classes++);
        plan.cls[i] = c;
    }
    for (size_t i = 0; i < k; ++i)
        for (const auto& [a, p] : plan.proportional[i])
            for (const auto& t : mdp.actions[a].successors)
                if (plan.cls[plan.local[t.target]] != plan.cls[i]) throw std::logic_error("x-support is not closed");

    plan.rate.assign(plan.classes, Rational(1));
    if (plan.classes < 2) return plan;

    // Mixing at class-specific rates ε·ρ_i perturbs the x-proportional chain;
    // in the limit ε -> 0 the class masses follow the stationary vector w of
    // the aggregated exit generator g. Choosing ρ_i ∝ w_i / μ_i, with μ the
    // class masses under x, makes that limit equal μ.
    const size_t nc = plan.classes;
    std::vector<Rational> class_mass(nc);
    for (size_t i = 0; i < k; ++i)
        if (plan.cls[i] >= 0) class_mass[plan.cls[i]] += state_mass[i];

    // Absorption probabilities of the zero-mass states into each class under uniform play.
    std::vector<int> zero;
    std::vector<int> zero_pos(k, -1);
    for (size_t i = 0; i < k; ++i)
        if (plan.cls[i] < 0) {
            zero_pos[i] = static_cast<int>(zero.size());
            zero.push_back(static_cast<int>(i));
        }
    std::vector<std::vector<Rational>> absorb(k, std::vector<Rational>(nc));
    for (size_t i = 0; i < k; ++i)
        if (plan.cls[i] >= 0) absorb[i][plan.cls[i]] = 1;
    if (!zero.empty()) {
        const size_t z = zero.size();
        for (size_t c = 0; c < nc; ++c) {
            Matrix a(z, z);
            std::vector<Rational> b(z);
            for (size_t r = 0; r < z; ++r) {
                a(r, r) += 1;
                for (const auto& [act, p] : plan.uniform[zero[r]])
                    for (const auto& t : mdp.actions[act].successors) {
                        const int j = plan.local[t.target];
                        if (plan.cls[j] >= 0) {
                            if (plan.cls[j] == static_cast<int>(c)) b[r] += p * t.probability;
                        } else {
                            a(r, zero_pos[j]) -= p * t.probability;
                        }
                    }
            }
            auto h = solve_linear(std::move(a), std::move(b));
            if (!h) throw std::logic_error("zero-mass states of a MEC do not reach the x-support");
            for (size_t r = 0; r < z; ++r) absorb[zero[r]][c] = (*h)[r];
        }
    }

    Matrix g(nc, nc);
    for (size_t i = 0; i < k; ++i) {
        const int ci = plan.cls[i];
        if (ci < 0) continue;
        const Rational weight = state_mass[i] / class_mass[ci];
        for (const auto& [act, p] : plan.uniform[i])
            for (const auto& t : mdp.actions[act].successors)
                for (size_t cj = 0; cj < nc; ++cj)
                    if (static_cast<int>(cj) != ci) g(ci, cj) += weight * p * t.probability * absorb[plan.local[t.target]][cj];
    }
    // w·(g - diag(row sums)) = 0, Σ w = 1.
    Matrix a(nc, nc);
    std::vector<Rational> b(nc);
    for (size_t i = 0; i < nc; ++i) {
        Rational out = 0;
        for (size_t j = 0; j < nc; ++j)
            if (j != i) out += g(i, j);
        for (size_t j = 0; j + 1 < nc; ++j) a(j, i) = (j == i) ? Rational(-out) : g(i, j);
        a(nc - 1, i) = 1;
    }
    b[nc - 1] = 1;
    auto w = solve_linear(std::move(a), std::move(b));
    if (!w) throw std::logic_error("class exit generator of a MEC is not irreducible");
    Rational top = 0;
    for (size_t c = 0; c < nc; ++c) {
        if (sgn((*w)[c]) <= 0) throw std::logic_error("class exit generator of a MEC is not irreducible");
        plan.rate[c] = (*w)[c] / class_mass[c];
        top = std::max(top, plan.rate[c]);
    }
    for (auto& r : plan.rate) r /= top;
    return plan;
}

std::vector<Distribution> mixed_moves(const MecPlan& plan, const Rational& epsilon) {
    std::vector<Distribution> moves(plan.states.size());
    for (size_t i = 0; i < plan.states.size(); ++i) {
        if (plan.cls[i] < 0) moves[i] = plan.uniform[i];
        else moves[i] = mix(plan.proportional[i], plan.uniform[i], epsilon * plan.rate[plan.cls[i]]);
    }
    return moves;
}

// Σ_{a∈C} |freq(a) - x_a / m_C| for the given memoryless MEC policy.
Rational frequency_deviation(const Mdp& mdp, const Mec& mec, const MecPlan& plan, const std::vector<Distribution>& moves,
                             const std::vector<Rational>& x, const Rational& mec_mass) {
    const auto pi = stationary(mdp, plan.states, plan.local, moves);
    std::vector<Rational> freq(mdp.num_actions());
    for (size_t i = 0; i < plan.states.size(); ++i)
        for (const auto& [a, p] : moves[i]) freq[a] += pi[i] * p;
    Rational total = 0;
    for (int a : mec.actions) total += abs(freq[a] - x[a] / mec_mass);
    return total;
}

int first_by_name(const Mdp& mdp, const std::vector<int>& actions) {
    return *std::min_element(actions.begin(), actions.end(),
                             [&](int l, int r) { return mdp.actions[l].name < mdp.actions[r].name; });
}

constexpr int kMaxHalvings = 200;

}  // namespace

SynthesizedPolicy extract_policy(const LpSolution& solution, const LpProblem& lp, const ProductMdp& product,
                                 const std::vector<Mec>& mecs, const LongRunSpec& spec, const Rational& delta) {
    const Mdp& mdp = product.mdp;
    if (!solution.feasible()) throw std::invalid_argument("cannot extract a policy from an infeasible LP");
    if (sgn(delta) < 0) throw std::invalid_argument("delta must be nonnegative");
    if (solution.values.size() != lp.variables.size() || lp.num_actions != mdp.num_actions() ||
        lp.num_states != mdp.num_states())
        throw std::invalid_argument("LP solution does not match the product");

    const size_t n = mdp.num_states();
    std::vector<Rational> y_act(mdp.num_actions()), y_state(n), x(mdp.num_actions());
    for (size_t a = 0; a < mdp.num_actions(); ++a) {
        y_act[a] = solution.values[lp.y_action(static_cast<int>(a))];
        x[a] = solution.values[lp.x_action(static_cast<int>(a))];
    }
    for (size_t s = 0; s < n; ++s) y_state[s] = solution.values[lp.y_state(static_cast<int>(s))];

    Rational max_reward = 1;
    for (const auto& action : mdp.actions)
        for (const auto& r : action.reward) max_reward = std::max(max_reward, Rational(abs(r)));

    SynthesizedPolicy out;
    out.delta = delta;
    const Rational budget = delta / max_reward;  // L1 tolerance on per-MEC frequencies
    out.epsilon_bound = budget / Rational(static_cast<unsigned long>(product.automaton_states * product.original_actions));

    FiniteMemoryPolicy& policy = out.policy;
    policy.memory = {"TRANSIENT", "RECURRENT"};
    policy.next_move.assign(n, std::vector<Distribution>(2));

    // Transient mode and switching probabilities.
    std::vector<Rational> switch_prob(n);
    for (size_t s = 0; s < n; ++s) {
        Rational out_flow = 0;
        for (int a : mdp.enabled[s]) out_flow += y_act[a];
        const Rational visits = out_flow + y_state[s];
        if (sgn(visits) > 0) switch_prob[s] = y_state[s] / visits;
        Distribution& move = policy.next_move[s][kTransient];
        if (sgn(out_flow) > 0) {
            for (int a : mdp.enabled[s])
                if (sgn(y_act[a]) > 0) accumulate(move, a, y_act[a] / out_flow);
        } else {
            move = dirac(first_by_name(mdp, mdp.enabled[s]));
        }
    }
    policy.alpha = {1 - switch_prob[mdp.initial], switch_prob[mdp.initial]};

    for (size_t a = 0; a < mdp.num_actions(); ++a) {
        for (const auto& t : mdp.actions[a].successors) {
            const Rational& p = switch_prob[t.target];
            Distribution from_transient;
            accumulate(from_transient, kTransient, 1 - p);
            accumulate(from_transient, kRecurrent, p);
            policy.update[{static_cast<int>(a), t.target, kTransient}] = from_transient;
            policy.update[{static_cast<int>(a), t.target, kRecurrent}] = dirac(kRecurrent);
        }
    }

    // Recurrent mode inside every MEC that carries frequency.
    bool mixed = false;
    for (const auto& mec : mecs) {
        Rational mec_mass = 0;
        for (int a : mec.actions) mec_mass += x[a];
        if (sgn(mec_mass) == 0) continue;

        const MecPlan plan = plan_mec(mdp, mec, x);
        if (sgn(delta) == 0) {
            const std::string where = "MEC containing " + mdp.states[mec.states.front()];
            if (plan.classes != 1)
                throw ExtractionRefused("delta = 0 needs a single recurrent class in the " + where +
                                        "; exact frequencies there require unbounded memory");
            if (mec.accepting && sgn(spec.theta) > 0) {
                bool sees_accepting = false;
                for (size_t i = 0; i < plan.states.size(); ++i)
                    sees_accepting = sees_accepting || (plan.cls[i] == 0 && product.accepting[plan.states[i]]);
                if (!sees_accepting)
                    throw ExtractionRefused("delta = 0: the frequencies of the " + where +
                                            " avoid every accepting state; visiting them needs unbounded memory");
            }
            for (size_t i = 0; i < plan.states.size(); ++i)
                policy.next_move[plan.states[i]][kRecurrent] = plan.cls[i] >= 0 ? plan.proportional[i] : plan.uniform[i];
            continue;
        }

        Rational epsilon = out.epsilon_bound;
        std::vector<Distribution> moves;
        for (int round = 0;; ++round) {
            if (round == kMaxHalvings) throw std::logic_error("mixing rate refinement did not converge");
            moves = mixed_moves(plan, epsilon);
            if (frequency_deviation(mdp, mec, plan, moves, x, mec_mass) <= budget) break;
            epsilon /= 2;
        }
        for (size_t i = 0; i < plan.states.size(); ++i) policy.next_move[plan.states[i]][kRecurrent] = moves[i];
        out.epsilon = mixed ? std::min(out.epsilon, epsilon) : epsilon;
        mixed = true;
    }
    return out;
}

FiniteMemoryPolicy project_policy(const SynthesizedPolicy& synthesized, const Mdp& mdp, const ProductMdp& product,
                                  const Ldba& automaton) {
    const Mdp& pmdp = product.mdp;
    const FiniteMemoryPolicy& inner = synthesized.policy;
    const size_t modes = inner.memory.size();
    const size_t q_count = automaton.state_names.size();

    FiniteMemoryPolicy out;
    for (size_t q = 0; q < q_count; ++q)
        for (size_t m = 0; m < modes; ++m) out.memory.push_back("(" + automaton.state_names[q] + "," + inner.memory[m] + ")");
    auto mem_index = [&](int q, int m) { return q * static_cast<int>(modes) + m; };

    out.alpha.assign(out.memory.size(), Rational(0));
    const int q0 = product.state_origin[pmdp.initial].automaton;
    for (size_t m = 0; m < modes; ++m) out.alpha[mem_index(q0, static_cast<int>(m))] = inner.alpha[m];

    out.next_move.assign(mdp.num_states(), std::vector<Distribution>(out.memory.size()));
    for (size_t ps = 0; ps < pmdp.num_states(); ++ps) {
        const auto [s, q] = product.state_origin[ps];
        for (size_t m = 0; m < modes; ++m) {
            Distribution& target = out.next_move[s][mem_index(q, static_cast<int>(m))];
            for (const auto& [pa, p] : inner.next_move[ps][m]) accumulate(target, product.action_origin[pa].action, p);
        }
    }

    // Update on (a, s', (q, m)): pick the automaton move r with the conditional
    // probability the product policy gives it among the copies of a, then
    // apply the product update at (s', r).
    for (size_t ps = 0; ps < pmdp.num_states(); ++ps) {
        const int q = product.state_origin[ps].automaton;
        for (size_t m = 0; m < modes; ++m) {
            const auto& move = inner.next_move[ps][m];
            std::map<int, Rational> projected;
            for (const auto& [pa, p] : move) projected[product.action_origin[pa].action] += p;
            for (const auto& [pa, p] : move) {
                const auto& origin = product.action_origin[pa];
                const Rational choice = p / projected[origin.action];
                for (const auto& t : pmdp.actions[pa].successors) {
                    const int next = product.state_origin[t.target].state;
                    const Distribution* upd = inner.find_update(pa, t.target, static_cast<int>(m));
                    if (!upd) throw std::logic_error("product policy has no update for " + pmdp.actions[pa].name);
                    Distribution& target = out.update[{origin.action, next, mem_index(q, static_cast<int>(m))}];
                    for (const auto& [m2, p2] : *upd) accumulate(target, mem_index(origin.to, m2), choice * p2);
                }
            }
        }
    }
    return out;
}

void validate_policy(const Mdp& mdp, const FiniteMemoryPolicy& policy) {
    const int mems = static_cast<int>(policy.memory.size());
    if (mems == 0) throw ValidationError("policy has no memory elements");
    if (policy.alpha.size() != policy.memory.size()) throw ValidationError("initial memory distribution has the wrong size");
    Rational total = 0;
    for (const auto& p : policy.alpha) {
        if (sgn(p) < 0) throw ValidationError("initial memory distribution has a negative entry");
        total += p;
    }
    if (total != 1) throw ValidationError("initial memory distribution sums to " + to_string(total));

    auto check = [&](const Distribution& d, const std::string& where, int bound) {
        Rational sum_p = 0;
        for (const auto& [i, p] : d) {
            if (i < 0 || i >= bound) throw ValidationError(where + ": index out of range");
            if (sgn(p) <= 0) throw ValidationError(where + ": nonpositive probability");
            sum_p += p;
        }
        if (sum_p != 1) throw ValidationError(where + ": distribution sums to " + to_string(sum_p));
    };

    if (policy.next_move.size() != mdp.num_states()) throw ValidationError("next-move table has the wrong number of states");
    for (size_t s = 0; s < mdp.num_states(); ++s) {
        if (policy.next_move[s].size() != policy.memory.size())
            throw ValidationError("next-move table for state '" + mdp.states[s] + "' has the wrong number of memory elements");
        for (int m = 0; m < mems; ++m) {
            const auto& d = policy.next_move[s][m];
            if (d.empty()) continue;
            const std::string where = "next move at (" + mdp.states[s] + ", " + policy.memory[m] + ")";
            check(d, where, static_cast<int>(mdp.num_actions()));
            for (const auto& [a, p] : d)
                if (mdp.actions[a].owner != static_cast<int>(s))
                    throw ValidationError(where + ": action '" + mdp.actions[a].name + "' is not enabled");
        }
    }
    for (const auto& [key, d] : policy.update) {
        const auto [a, next, m] = key;
        if (a < 0 || a >= static_cast<int>(mdp.num_actions()) || next < 0 || next >= static_cast<int>(mdp.num_states()) ||
            m < 0 || m >= mems)
            throw ValidationError("memory update key out of range");
        check(d, "memory update at (" + mdp.actions[a].name + ", " + mdp.states[next] + ", " + policy.memory[m] + ")", mems);
    }
}

namespace {

Json distribution_json(const Distribution& d, const std::vector<std::string>& names) {
    Json out = Json::object();
    for (const auto& [i, p] : d) out[names[i]] = to_string(p);
    return out;
}

std::vector<std::string> action_names(const Mdp& mdp) {
    std::vector<std::string> out;
    for (const auto& a : mdp.actions) out.push_back(a.name);
    return out;
}

Distribution distribution_from_json(const Json& doc, const std::string& where,
                                    const std::function<int(const std::string&)>& resolve) {
    if (!doc.is_object()) throw ValidationError(where + ": distribution must be an object");
    Distribution d;
    for (const auto& [name, value] : doc.items()) {
        const int index = resolve(name);
        if (index < 0) throw ValidationError(where + ": unknown name '" + name + "'");
        const Rational p = rational_from_json(value, where);
        if (sgn(p) < 0) throw ValidationError(where + ": negative probability");
        accumulate(d, index, p);
    }
    return d;
}

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw ValidationError(std::string("policy document is missing '") + key + "'");
    return doc.at(key);
}

}  // namespace

Json policy_to_json(const Mdp& mdp, const FiniteMemoryPolicy& policy) {
    const auto actions = action_names(mdp);
    Json out = Json::object();
    out["memory"] = policy.memory;
    Json alpha = Json::object();
    for (size_t m = 0; m < policy.memory.size(); ++m)
        if (sgn(policy.alpha[m]) != 0) alpha[policy.memory[m]] = to_string(policy.alpha[m]);
    out["initial_memory"] = alpha;

    Json moves = Json::array();
    for (size_t s = 0; s < policy.next_move.size(); ++s)
        for (size_t m = 0; m < policy.memory.size(); ++m) {
            if (policy.next_move[s][m].empty()) continue;
            Json entry = Json::object();
            entry["state"] = mdp.states[s];
            entry["memory"] = policy.memory[m];
            entry["actions"] = distribution_json(policy.next_move[s][m], actions);
            moves.push_back(entry);
        }
    out["next_move"] = moves;

    Json updates = Json::array();
    for (const auto& [key, d] : policy.update) {
        const auto [a, next, m] = key;
        Json entry = Json::object();
        entry["action"] = mdp.actions[a].name;
        entry["state"] = mdp.states[next];
        entry["memory"] = policy.memory[m];
        entry["next_memory"] = distribution_json(d, policy.memory);
        updates.push_back(entry);
    }
    out["update"] = updates;
    return out;
}

FiniteMemoryPolicy policy_from_json(const Mdp& mdp, const Json& doc) {
    FiniteMemoryPolicy policy;
    const Json& memory = field(doc, "memory");
    if (!memory.is_array() || memory.empty()) throw ValidationError("'memory' must be a nonempty array of names");
    for (const auto& m : memory) {
        if (!m.is_string()) throw ValidationError("memory names must be strings");
        policy.memory.push_back(m.get<std::string>());
    }
    auto memory_index = [&](const std::string& name) -> int {
        auto it = std::find(policy.memory.begin(), policy.memory.end(), name);
        return it == policy.memory.end() ? -1 : static_cast<int>(it - policy.memory.begin());
    };
    auto action_index = [&](const std::string& name) { return mdp.action_index(name); };
    auto require_string = [](const Json& entry, const char* key, const std::string& where) {
        if (!entry.is_object() || !entry.contains(key) || !entry.at(key).is_string())
            throw ValidationError(where + ": missing string field '" + key + "'");
        return entry.at(key).get<std::string>();
    };

    const Distribution alpha = distribution_from_json(field(doc, "initial_memory"), "initial_memory", memory_index);
    policy.alpha.assign(policy.memory.size(), Rational(0));
    for (const auto& [m, p] : alpha) policy.alpha[m] = p;

    policy.next_move.assign(mdp.num_states(), std::vector<Distribution>(policy.memory.size()));
    const Json& moves = field(doc, "next_move");
    if (!moves.is_array()) throw ValidationError("'next_move' must be an array");
    for (const auto& entry : moves) {
        const std::string state = require_string(entry, "state", "next_move entry");
        const std::string mem = require_string(entry, "memory", "next_move entry");
        const int s = mdp.state_index(state);
        const int m = memory_index(mem);
        if (s < 0) throw ValidationError("next_move entry: unknown state '" + state + "'");
        if (m < 0) throw ValidationError("next_move entry: unknown memory element '" + mem + "'");
        const std::string where = "next move at (" + state + ", " + mem + ")";
        if (!policy.next_move[s][m].empty()) throw ValidationError(where + " is given twice");
        policy.next_move[s][m] = distribution_from_json(field(entry, "actions"), where, action_index);
        if (policy.next_move[s][m].empty()) throw ValidationError(where + ": empty distribution");
    }

    const Json& updates = field(doc, "update");
    if (!updates.is_array()) throw ValidationError("'update' must be an array");
    for (const auto& entry : updates) {
        const std::string action = require_string(entry, "action", "update entry");
        const std::string state = require_string(entry, "state", "update entry");
        const std::string mem = require_string(entry, "memory", "update entry");
        const int a = mdp.action_index(action), s = mdp.state_index(state), m = memory_index(mem);
        if (a < 0) throw ValidationError("update entry: unknown action '" + action + "'");
        if (s < 0) throw ValidationError("update entry: unknown state '" + state + "'");
        if (m < 0) throw ValidationError("update entry: unknown memory element '" + mem + "'");
        const std::string where = "memory update at (" + action + ", " + state + ", " + mem + ")";
        if (policy.update.count({a, s, m})) throw ValidationError(where + " is given twice");
        policy.update[{a, s, m}] = distribution_from_json(field(entry, "next_memory"), where, memory_index);
    }
    validate_policy(mdp, policy);
    return policy;
}

Json synthesized_policy_to_json(const SynthesizedPolicy& policy, const Mdp& mdp, const ProductMdp& product,
                                 const Ldba& automaton) {
    Json out = Json::object();
    out["delta"] = to_string(policy.delta);
    out["epsilon"] = to_string(policy.epsilon);
    out["epsilon_bound"] = to_string(policy.epsilon_bound);
    out["product"] = policy_to_json(product.mdp, policy.policy);
    out["projected"] = policy_to_json(mdp, project_policy(policy, mdp, product, automaton));
    return out;
}

}  // namespace lrsynth
