// Random instance generators and independent reference implementations used
// by the unit and acceptance tests. The references deliberately avoid the
// library's algorithms: closure by Warshall instead of Tarjan, brute-force
// end-component enumeration, naive Gaussian elimination, direct recursive
// LTL evaluation.
#pragma once

#include "lrsynth/automata.hpp"
#include "lrsynth/ltl.hpp"
#include "lrsynth/mdp.hpp"
#include "lrsynth/pipeline.hpp"
#include "lrsynth/product.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace lrsynth::oracle {

struct RandomMdpOptions {
    int min_states = 1;
    int max_states = 5;
    int max_actions_per_state = 3;
    int max_total_actions = 100;
    int max_successors = 3;
    int max_denominator = 4;
    std::vector<std::string> aps = {"p", "q"};
    int reward_dimension = 0;
    int reward_low = -2;
    int reward_high = 3;
};

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random distribution over `targets` with a common denominator <= max_den.
inline std::vector<Transition> random_distribution(std::mt19937_64& rng, std::vector<int> targets, int max_den) {
    const int den = uniform_int(rng, static_cast<int>(std::min<size_t>(targets.size(), 1)), max_den);
    const int k = std::min<int>(static_cast<int>(targets.size()), den);
    targets.resize(k);
    // Random composition of den into k positive parts.
    std::vector<int> cuts;
    std::vector<int> pool;
    for (int i = 1; i < den; ++i) pool.push_back(i);
    std::shuffle(pool.begin(), pool.end(), rng);
    cuts.assign(pool.begin(), pool.begin() + (k - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(den);
    std::vector<Transition> out;
    for (int i = 0; i < k; ++i) out.push_back({targets[i], ratio(cuts[i + 1] - cuts[i], den)});
    return out;
}

inline Mdp random_mdp(std::mt19937_64& rng, const RandomMdpOptions& opt = {}) {
    const int n = uniform_int(rng, opt.min_states, opt.max_states);
    std::vector<std::string> states;
    for (int s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
    std::vector<std::vector<std::string>> labels(n);
    for (int s = 0; s < n; ++s)
        for (const auto& ap : opt.aps)
            if (uniform_int(rng, 0, 1)) labels[s].push_back(ap);

    std::vector<int> per_state(n, 1);
    int budget = std::max(0, opt.max_total_actions - n);
    for (int s = 0; s < n; ++s) {
        const int extra = std::min(budget, uniform_int(rng, 0, opt.max_actions_per_state - 1));
        per_state[s] += extra;
        budget -= extra;
    }

    std::vector<ActionSpec> actions;
    for (int s = 0; s < n; ++s) {
        for (int i = 0; i < per_state[s]; ++i) {
            ActionSpec a;
            a.name = "a" + std::to_string(s) + "_" + std::to_string(i);
            a.owner = s;
            std::vector<int> targets(n);
            for (int t = 0; t < n; ++t) targets[t] = t;
            std::shuffle(targets.begin(), targets.end(), rng);
            targets.resize(uniform_int(rng, 1, std::min(n, opt.max_successors)));
            a.successors = random_distribution(rng, targets, opt.max_denominator);
            for (int d = 0; d < opt.reward_dimension; ++d) a.reward.push_back(Rational(uniform_int(rng, opt.reward_low, opt.reward_high)));
            actions.push_back(std::move(a));
        }
    }
    return build_mdp(states, 0, labels, actions);
}

// ---------------------------------------------------------------------------
// Exact linear algebra and Markov chains, written independently of the library.

using Dense = std::vector<std::vector<Rational>>;

/// Naive Gauss elimination with partial search for a nonzero pivot.
inline std::optional<std::vector<Rational>> oracle_solve(Dense a, std::vector<Rational> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
        x[i] = acc / a[i][i];
    }
    return x;
}

/// Cesàro-limit state frequencies of a finite chain from an initial distribution.
inline std::vector<Rational> oracle_frequencies(const Dense& p, const std::vector<Rational>& init) {
    const size_t n = p.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (size_t j = 0; j < n; ++j)
            if (p[i][j] != 0) reach[i][j] = true;
    }
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;

    std::vector<bool> recurrent(n, true);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (reach[i][j] && !reach[j][i]) recurrent[i] = false;

    // Group recurrent states into classes.
    std::vector<int> cls(n, -1);
    int classes = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!recurrent[i] || cls[i] >= 0) continue;
        for (size_t j = 0; j < n; ++j)
            if (recurrent[j] && reach[i][j]) cls[j] = classes;
        ++classes;
    }

    // Absorption probability of each class: transient part by linear solve.
    std::vector<size_t> transient;
    std::vector<int> tpos(n, -1);
    for (size_t i = 0; i < n; ++i)
        if (!recurrent[i]) {
            tpos[i] = static_cast<int>(transient.size());
            transient.push_back(i);
        }
    std::vector<Rational> class_prob(classes);
    for (int c = 0; c < classes; ++c) {
        Rational direct = 0;
        for (size_t i = 0; i < n; ++i)
            if (cls[i] == c) direct += init[i];
        if (!transient.empty()) {
            const size_t t = transient.size();
            Dense a(t, std::vector<Rational>(t));
            std::vector<Rational> b(t);
            for (size_t r = 0; r < t; ++r) {
                a[r][r] = 1;
                for (size_t j = 0; j < n; ++j) {
                    if (tpos[j] >= 0) a[r][tpos[j]] -= p[transient[r]][j];
                    else if (cls[j] == c) b[r] += p[transient[r]][j];
                }
            }
            const auto h = oracle_solve(a, b);
            for (size_t r = 0; r < t; ++r) direct += init[transient[r]] * (*h)[r];
        }
        class_prob[c] = direct;
    }

    std::vector<Rational> freq(n);
    for (int c = 0; c < classes; ++c) {
        std::vector<size_t> members;
        for (size_t i = 0; i < n; ++i)
            if (cls[i] == c) members.push_back(i);
        const size_t k = members.size();
        Dense a(k, std::vector<Rational>(k));
        std::vector<Rational> b(k);
        // Equations π_j = Σ_i π_i P_ij for j = 1..k-1, plus normalization.
        for (size_t row = 0; row + 1 < k; ++row) {
            const size_t j = members[row + 1];
            for (size_t col = 0; col < k; ++col) a[row][col] = p[members[col]][j] - (col == row + 1 ? 1 : 0);
        }
        for (size_t col = 0; col < k; ++col) a[k - 1][col] = 1;
        b[k - 1] = 1;
        const auto pi = oracle_solve(a, b);
        for (size_t col = 0; col < k; ++col) freq[members[col]] = class_prob[c] * (*pi)[col];
    }
    return freq;
}

/// Per-action frequencies of a memoryless policy (policy[s] = distribution over actions).
inline std::vector<Rational> oracle_action_frequencies(const Mdp& mdp, const std::vector<std::vector<std::pair<int, Rational>>>& policy) {
    const size_t n = mdp.num_states();
    Dense p(n, std::vector<Rational>(n));
    for (size_t s = 0; s < n; ++s)
        for (const auto& [a, q] : policy[s])
            for (const auto& t : mdp.actions[a].successors) p[s][t.target] += q * t.probability;
    std::vector<Rational> init(n);
    init[mdp.initial] = 1;
    const auto freq = oracle_frequencies(p, init);
    std::vector<Rational> out(mdp.num_actions());
    for (size_t s = 0; s < n; ++s)
        for (const auto& [a, q] : policy[s]) out[a] += freq[s] * q;
    return out;
}

/// All deterministic memoryless policies as action choices per state.
inline std::vector<std::vector<int>> all_deterministic_policies(const Mdp& mdp) {
    std::vector<std::vector<int>> out{{}};
    for (size_t s = 0; s < mdp.num_states(); ++s) {
        std::vector<std::vector<int>> next;
        for (const auto& prefix : out)
            for (int a : mdp.enabled[s]) {
                auto p = prefix;
                p.push_back(a);
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// End components by exhaustive enumeration of action subsets.

struct BruteMec {
    std::set<int> states;
    std::set<int> actions;
    bool operator<(const BruteMec& o) const { return std::tie(states, actions) < std::tie(o.states, o.actions); }
    bool operator==(const BruteMec& o) const { return states == o.states && actions == o.actions; }
};

inline bool is_end_component(const Mdp& mdp, const std::set<int>& actions) {
    std::set<int> states;
    for (int a : actions) states.insert(mdp.actions[a].owner);
    for (int a : actions)
        for (const auto& t : mdp.actions[a].successors)
            if (!states.count(t.target)) return false;
    std::vector<int> idx(states.begin(), states.end());
    const size_t k = idx.size();
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    auto pos = [&](int s) { return static_cast<size_t>(std::lower_bound(idx.begin(), idx.end(), s) - idx.begin()); };
    for (size_t i = 0; i < k; ++i) reach[i][i] = true;
    for (int a : actions)
        for (const auto& t : mdp.actions[a].successors) reach[pos(mdp.actions[a].owner)][pos(t.target)] = true;
    for (size_t m = 0; m < k; ++m)
        for (size_t i = 0; i < k; ++i)
            if (reach[i][m])
                for (size_t j = 0; j < k; ++j)
                    if (reach[m][j]) reach[i][j] = true;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            if (!reach[i][j]) return false;
    return true;
}

inline std::vector<BruteMec> brute_force_mecs(const Mdp& mdp) {
    const size_t m = mdp.num_actions();
    std::vector<BruteMec> ecs;
    for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
        std::set<int> actions;
        for (size_t a = 0; a < m; ++a)
            if (mask & (1UL << a)) actions.insert(static_cast<int>(a));
        if (!is_end_component(mdp, actions)) continue;
        BruteMec ec;
        ec.actions = actions;
        for (int a : actions) ec.states.insert(mdp.actions[a].owner);
        ecs.push_back(ec);
    }
    std::vector<BruteMec> maximal;
    for (const auto& ec : ecs) {
        bool dominated = false;
        for (const auto& other : ecs) {
            if (other == ec) continue;
            if (std::includes(other.actions.begin(), other.actions.end(), ec.actions.begin(), ec.actions.end()) &&
                std::includes(other.states.begin(), other.states.end(), ec.states.begin(), ec.states.end()))
                dominated = true;
        }
        if (!dominated) maximal.push_back(ec);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

// ---------------------------------------------------------------------------
// LTL on lassos by direct recursion over positions.

inline bool oracle_eval(const ltl::FormulaPtr& f, const ltl::LassoWord& w, size_t i) {
    const size_t n = w.prefix.size() + w.cycle.size();
    auto letter = [&](size_t k) -> const ltl::Letter& { return k < w.prefix.size() ? w.prefix[k] : w.cycle[k - w.prefix.size()]; };
    auto next = [&](size_t k) { return k + 1 < n ? k + 1 : w.prefix.size(); };
    using ltl::Op;
    switch (f->op()) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Atom: return letter(i).count(f->name()) > 0;
        case Op::Not: return !oracle_eval(f->lhs(), w, i);
        case Op::And: return oracle_eval(f->lhs(), w, i) && oracle_eval(f->rhs(), w, i);
        case Op::Or: return oracle_eval(f->lhs(), w, i) || oracle_eval(f->rhs(), w, i);
        case Op::Implies: return !oracle_eval(f->lhs(), w, i) || oracle_eval(f->rhs(), w, i);
        case Op::Next: return oracle_eval(f->lhs(), w, next(i));
        case Op::Until:
        case Op::Eventually: {
            // Along the path from i, every position is seen within n steps.
            size_t k = i;
            for (size_t step = 0; step <= n; ++step, k = next(k)) {
                if (oracle_eval(f->op() == Op::Until ? f->rhs() : f->lhs(), w, k)) return true;
                if (f->op() == Op::Until && !oracle_eval(f->lhs(), w, k)) return false;
            }
            return false;
        }
        case Op::Release:
        case Op::Globally: {
            size_t k = i;
            for (size_t step = 0; step <= n; ++step, k = next(k)) {
                if (!oracle_eval(f->op() == Op::Release ? f->rhs() : f->lhs(), w, k)) return false;
                if (f->op() == Op::Release && oracle_eval(f->lhs(), w, k)) return true;
            }
            return true;
        }
    }
    return false;
}

inline ltl::LassoWord random_lasso(std::mt19937_64& rng, const std::vector<std::string>& aps, int max_prefix = 4, int max_cycle = 4) {
    auto letter = [&] {
        ltl::Letter l;
        for (const auto& ap : aps)
            if (uniform_int(rng, 0, 1)) l.insert(ap);
        return l;
    };
    ltl::LassoWord w;
    const int p = uniform_int(rng, 0, max_prefix), c = uniform_int(rng, 1, max_cycle);
    for (int i = 0; i < p; ++i) w.prefix.push_back(letter());
    for (int i = 0; i < c; ++i) w.cycle.push_back(letter());
    return w;
}

/// The formula a builtin family stands for, over the given atoms.
inline std::string family_formula(BuiltinFamily family, const std::vector<std::string>& aps) {
    switch (family) {
        case BuiltinFamily::InfinitelyOften: return "G F " + aps[0];
        case BuiltinFamily::EventuallyAlways: return "F G " + aps[0];
        case BuiltinFamily::Eventually: return "F " + aps[0];
        case BuiltinFamily::Always: return "G " + aps[0];
        case BuiltinFamily::Until: return aps[0] + " U " + aps[1];
        case BuiltinFamily::Response: return "G F " + aps[0] + " -> G F " + aps[1];
    }
    return "";
}

inline const std::vector<BuiltinFamily>& all_families() {
    static const std::vector<BuiltinFamily> families = {BuiltinFamily::InfinitelyOften, BuiltinFamily::EventuallyAlways,
                                                        BuiltinFamily::Eventually,      BuiltinFamily::Always,
                                                        BuiltinFamily::Until,           BuiltinFamily::Response};
    return families;
}


// ---------------------------------------------------------------------------
// Runs of an MDP that close into a loop, and their acceptance in a product.

/// states[i] --actions[i]--> states[i+1]; the last action returns to states[loop_start].
struct MdpLasso {
    std::vector<int> states;
    std::vector<int> actions;
    size_t loop_start = 0;
};

inline MdpLasso random_mdp_lasso(std::mt19937_64& rng, const Mdp& mdp) {
    MdpLasso run;
    std::vector<int> first_visit(mdp.num_states(), -1);
    int s = mdp.initial;
    while (first_visit[s] < 0) {
        first_visit[s] = static_cast<int>(run.states.size());
        run.states.push_back(s);
        const auto& enabled = mdp.enabled[s];
        const int a = enabled[uniform_int(rng, 0, static_cast<int>(enabled.size()) - 1)];
        run.actions.push_back(a);
        const auto& succ = mdp.actions[a].successors;
        s = succ[uniform_int(rng, 0, static_cast<int>(succ.size()) - 1)].target;
    }
    run.loop_start = static_cast<size_t>(first_visit[s]);
    return run;
}

inline ltl::LassoWord lasso_word(const Mdp& mdp, const MdpLasso& run) {
    ltl::LassoWord w;
    for (size_t i = 0; i < run.states.size(); ++i) {
        const auto& l = mdp.labels[run.states[i]];
        (i < run.loop_start ? w.prefix : w.cycle).push_back(ltl::Letter(l.begin(), l.end()));
    }
    return w;
}

/// Whether some product run following the MDP lasso visits accepting product
/// states infinitely often. Explores (lasso position, automaton state) pairs
/// through the product's own actions and looks for a reachable accepting
/// pair that lies on a cycle.
inline bool product_accepts_lasso(const ProductMdp& product, const MdpLasso& run) {
    const size_t n = run.states.size();
    const size_t qn = product.automaton_states;
    auto id = [&](size_t i, int q) { return i * qn + static_cast<size_t>(q); };
    std::vector<std::vector<size_t>> succ(n * qn);
    std::vector<bool> node_accepting(n * qn, false);
    for (size_t i = 0; i < n; ++i) {
        const size_t next = i + 1 < n ? i + 1 : run.loop_start;
        for (size_t q = 0; q < qn; ++q) {
            const int ps = product.find_state(run.states[i], static_cast<int>(q));
            if (ps < 0) continue;
            node_accepting[id(i, static_cast<int>(q))] = product.accepting[ps];
            for (int pa : product.mdp.enabled[ps]) {
                const auto& origin = product.action_origin[pa];
                if (origin.action != run.actions[i]) continue;
                for (const auto& t : product.mdp.actions[pa].successors)
                    if (product.state_origin[t.target].state == run.states[next])
                        succ[id(i, static_cast<int>(q))].push_back(id(next, product.state_origin[t.target].automaton));
            }
        }
    }
    auto reach = [&](std::vector<size_t> from) {
        std::vector<bool> seen(n * qn, false);
        std::deque<size_t> queue(from.begin(), from.end());
        for (size_t v : from) seen[v] = true;
        while (!queue.empty()) {
            const size_t v = queue.front();
            queue.pop_front();
            for (size_t w : succ[v])
                if (!seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
        }
        return seen;
    };
    const auto& init = product.state_origin[product.mdp.initial];
    const auto reachable = reach({id(0, init.automaton)});
    for (size_t v = 0; v < n * qn; ++v) {
        if (!reachable[v] || !node_accepting[v]) continue;
        if (reach(succ[v])[v]) return true;
    }
    return false;
}


// ---------------------------------------------------------------------------
// Random feasible specifications.

struct GeneratedInstance {
    Mdp mdp;
    std::string ltl;
    LongRunSpec spec;
};

/// A random MDP with a GF p or FG p objective and a specification that is
/// feasible by construction: steady-state intervals and the reward threshold
/// are read off the exact frequencies of a random memoryless product policy,
/// and θ is the best LTL probability the LP allows under those constraints.
inline GeneratedInstance random_feasible_instance(std::mt19937_64& rng) {
    RandomMdpOptions opt;
    opt.reward_dimension = 1;
    GeneratedInstance out;
    do {
        out.mdp = random_mdp(rng, opt);
    } while (!std::binary_search(out.mdp.ap_universe.begin(), out.mdp.ap_universe.end(), "p"));
    const bool infinitely_often = uniform_int(rng, 0, 1) == 0;
    out.ltl = infinitely_often ? "G F p" : "F G p";
    const ProductMdp product = build_product(
        out.mdp, builtin_ldba(infinitely_often ? BuiltinFamily::InfinitelyOften : BuiltinFamily::EventuallyAlways, {"p"}));

    const Mdp& pm = product.mdp;
    std::vector<std::vector<std::pair<int, Rational>>> policy(pm.num_states());
    for (size_t s = 0; s < pm.num_states(); ++s) {
        std::vector<int> actions(pm.enabled[s]);
        std::shuffle(actions.begin(), actions.end(), rng);
        for (const auto& t : random_distribution(rng, actions, 3)) policy[s].push_back({t.target, t.probability});
    }
    const auto x = oracle_action_frequencies(pm, policy);

    const std::vector<Rational> slacks = {Rational(0), ratio(1, 20), ratio(1, 5)};
    auto slack = [&] { return slacks[uniform_int(rng, 0, 2)]; };
    for (const auto& ap : pm.ap_universe) {
        if (uniform_int(rng, 0, 3) == 0) continue;
        Rational value = 0;
        for (size_t s = 0; s < pm.num_states(); ++s)
            if (pm.has_label(static_cast<int>(s), ap))
                for (int a : pm.enabled[s]) value += x[a];
        out.spec.sss.push_back({ap, std::max(Rational(0), Rational(value - slack())), std::min(Rational(1), Rational(value + slack()))});
    }
    if (uniform_int(rng, 0, 1) == 0) {
        Rational reward = 0;
        for (size_t a = 0; a < pm.num_actions(); ++a) reward += x[a] * pm.actions[a].reward[0];
        out.spec.reward_thresholds = {reward - slack()};
    }

    LongRunSpec probe = out.spec;
    probe.objective.kind = ObjectiveKind::MaxLtlProbability;
    AutomatonSource source;
    source.ltl = out.ltl;
    const Instance inst = prepare_instance(out.mdp, load_automaton(source), probe);
    const LpSolution best = solve_lp(inst.lp);
    if (!best.feasible()) throw std::logic_error("generated specification is infeasible");
    out.spec.theta = uniform_int(rng, 0, 2) == 0 ? Rational(best.objective / 2) : best.objective;
    return out;
}

}  // namespace lrsynth::oracle
