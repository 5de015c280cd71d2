#include "lrsynth/lp.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lrsynth {

std::string tag_name(ConstraintTag tag) {
    switch (tag) {
        case ConstraintTag::Eq1: return "Eq1";
        case ConstraintTag::Eq2: return "Eq2";
        case ConstraintTag::Eq3: return "Eq3";
        case ConstraintTag::Eq4: return "Eq4";
        case ConstraintTag::C5: return "C5";
        case ConstraintTag::C6: return "C6";
        case ConstraintTag::C7: return "C7";
        case ConstraintTag::Freq: return "Freq";
    }
    return "?";
}

std::string status_name(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Feasible: return "feasible";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

size_t LpProblem::count(ConstraintTag tag) const {
    return static_cast<size_t>(std::count_if(constraints.begin(), constraints.end(),
                                             [&](const LpConstraint& c) { return c.tag == tag; }));
}

void validate_spec(const LongRunSpec& spec, size_t reward_dimension) {
    auto in_unit = [](const Rational& v) { return sgn(v) >= 0 && v <= 1; };
    if (!in_unit(spec.theta)) throw std::invalid_argument("theta must lie in [0,1]");
    for (const auto& c : spec.sss) {
        if (!in_unit(c.lower) || !in_unit(c.upper))
            throw std::invalid_argument("steady-state bounds for '" + c.ap + "' must lie in [0,1]");
        if (c.lower > c.upper) throw std::invalid_argument("steady-state constraint for '" + c.ap + "' has lower > upper");
    }
    if (!spec.reward_thresholds.empty() && spec.reward_thresholds.size() != reward_dimension)
        throw std::invalid_argument("expected " + std::to_string(reward_dimension) + " reward threshold(s), got " +
                                    std::to_string(spec.reward_thresholds.size()));
    if (spec.objective.kind == ObjectiveKind::MaxReward) {
        if (reward_dimension == 0) throw std::invalid_argument("max-reward objective on an MDP without rewards");
        if (!spec.objective.weights.empty() && spec.objective.weights.size() != reward_dimension)
            throw std::invalid_argument("objective weights must match the reward dimension " + std::to_string(reward_dimension));
    }
    if (spec.frequency_bound && sgn(*spec.frequency_bound) <= 0)
        throw std::invalid_argument("frequency bound must be positive");
}

namespace {

// Accumulates coefficients per variable; zero entries are dropped.
class RowBuilder {
  public:
    void add(int var, const Rational& coef) { coefs_[var] += coef; }

    std::vector<LpTerm> terms() const {
        std::vector<LpTerm> out;
        for (const auto& [var, coef] : coefs_)
            if (sgn(coef) != 0) out.push_back({var, coef});
        return out;
    }

  private:
    std::map<int, Rational> coefs_;
};

}  // namespace

LpProblem build_lp(const ProductMdp& product, const std::vector<Mec>& mecs, const std::vector<Mec>& amecs,
                   const LongRunSpec& spec) {
    const Mdp& mdp = product.mdp;
    validate_spec(spec, mdp.reward_dimension());
    for (const auto& c : spec.sss) {
        if (!std::binary_search(mdp.ap_universe.begin(), mdp.ap_universe.end(), c.ap))
            throw std::invalid_argument("steady-state constraint references unknown proposition '" + c.ap + "'");
    }

    LpProblem lp;
    lp.num_actions = mdp.num_actions();
    lp.num_states = mdp.num_states();
    for (size_t a = 0; a < mdp.num_actions(); ++a)
        lp.variables.push_back({"y[" + mdp.actions[a].name + "]", VarKind::TransientAction, static_cast<int>(a)});
    for (size_t s = 0; s < mdp.num_states(); ++s)
        lp.variables.push_back({"ys[" + mdp.states[s] + "]", VarKind::Switch, static_cast<int>(s)});
    for (size_t a = 0; a < mdp.num_actions(); ++a)
        lp.variables.push_back({"x[" + mdp.actions[a].name + "]", VarKind::Recurrent, static_cast<int>(a)});

    auto add = [&](ConstraintTag tag, std::string label, const RowBuilder& row, std::optional<Rational> lower,
                   std::optional<Rational> upper) {
        lp.constraints.push_back({tag, tag_name(tag) + "[" + label + "]", row.terms(), std::move(lower), std::move(upper)});
    };

    // Eq1, transient flow:  1_ŝ(s) + Σ_a y_a·δ(a)(s) = Σ_{a∈Act(s)} y_a + y_s
    // Eq4, recurrent flow:  Σ_a x_a·δ(a)(s) = Σ_{a∈Act(s)} x_a
    std::vector<RowBuilder> transient(mdp.num_states()), recurrent(mdp.num_states());
    for (size_t a = 0; a < mdp.num_actions(); ++a) {
        const auto& action = mdp.actions[a];
        for (const auto& t : action.successors) {
            transient[t.target].add(lp.y_action(static_cast<int>(a)), t.probability);
            recurrent[t.target].add(lp.x_action(static_cast<int>(a)), t.probability);
        }
        transient[action.owner].add(lp.y_action(static_cast<int>(a)), -1);
        recurrent[action.owner].add(lp.x_action(static_cast<int>(a)), -1);
    }
    for (size_t s = 0; s < mdp.num_states(); ++s) {
        transient[s].add(lp.y_state(static_cast<int>(s)), -1);
        const Rational rhs = static_cast<int>(s) == mdp.initial ? Rational(-1) : Rational(0);
        add(ConstraintTag::Eq1, mdp.states[s], transient[s], rhs, rhs);
    }

    // Eq2, switching happens almost surely.
    RowBuilder switching;
    for (const auto& mec : mecs)
        for (int s : mec.states) switching.add(lp.y_state(s), 1);
    add(ConstraintTag::Eq2, "switch", switching, Rational(1), Rational(1));

    // Eq3, switch mass of a MEC equals its recurrent frequency.
    for (size_t m = 0; m < mecs.size(); ++m) {
        RowBuilder row;
        for (int s : mecs[m].states) row.add(lp.y_state(s), 1);
        for (int a : mecs[m].actions) row.add(lp.x_action(a), -1);
        add(ConstraintTag::Eq3, "mec" + std::to_string(m), row, Rational(0), Rational(0));
    }

    for (size_t s = 0; s < mdp.num_states(); ++s) add(ConstraintTag::Eq4, mdp.states[s], recurrent[s], Rational(0), Rational(0));

    // C5, LTL: frequency outside accepting MECs is at most 1 - θ.
    std::vector<bool> in_amec(mdp.num_actions(), false);
    for (const auto& mec : amecs)
        for (int a : mec.actions) in_amec[a] = true;
    if (spec.theta == 1) {
        for (size_t a = 0; a < mdp.num_actions(); ++a) {
            if (in_amec[a]) continue;
            RowBuilder row;
            row.add(lp.x_action(static_cast<int>(a)), 1);
            add(ConstraintTag::C5, mdp.actions[a].name, row, Rational(0), Rational(0));
        }
    } else if (sgn(spec.theta) > 0) {
        RowBuilder row;
        for (size_t a = 0; a < mdp.num_actions(); ++a)
            if (!in_amec[a]) row.add(lp.x_action(static_cast<int>(a)), 1);
        add(ConstraintTag::C5, "ltl", row, std::nullopt, Rational(1 - spec.theta));
    }

    // C6, steady-state intervals.
    for (const auto& c : spec.sss) {
        RowBuilder row;
        for (size_t s = 0; s < mdp.num_states(); ++s)
            if (mdp.has_label(static_cast<int>(s), c.ap))
                for (int a : mdp.enabled[s]) row.add(lp.x_action(a), 1);
        add(ConstraintTag::C6, c.ap, row, c.lower, c.upper);
    }

    // C7, long-run average reward per dimension.
    for (size_t d = 0; d < spec.reward_thresholds.size(); ++d) {
        RowBuilder row;
        for (size_t a = 0; a < mdp.num_actions(); ++a) row.add(lp.x_action(static_cast<int>(a)), mdp.actions[a].reward[d]);
        add(ConstraintTag::C7, "dim" + std::to_string(d), row, spec.reward_thresholds[d], std::nullopt);
    }

    // Frequency of accepting actions (actions enabled at accepting states).
    if (spec.frequency_bound) {
        const Rational inv = 1 / *spec.frequency_bound;
        if (spec.per_mec_frequency) {
            for (size_t m = 0; m < amecs.size(); ++m) {
                RowBuilder row;
                for (int a : amecs[m].actions) {
                    row.add(lp.x_action(a), -inv);
                    if (product.accepting[mdp.actions[a].owner]) row.add(lp.x_action(a), 1);
                }
                add(ConstraintTag::Freq, "amec" + std::to_string(m), row, Rational(0), std::nullopt);
            }
        } else {
            RowBuilder row;
            for (const auto& mec : amecs)
                for (int a : mec.actions)
                    if (product.accepting[mdp.actions[a].owner]) row.add(lp.x_action(a), 1);
            add(ConstraintTag::Freq, "accepting", row, inv, std::nullopt);
        }
    }

    // Objective.
    switch (spec.objective.kind) {
        case ObjectiveKind::Feasibility: break;
        case ObjectiveKind::MaxReward: {
            std::vector<Rational> weights = spec.objective.weights;
            if (weights.empty()) {
                weights.assign(mdp.reward_dimension(), Rational(0));
                weights[0] = 1;
            }
            RowBuilder row;
            for (size_t a = 0; a < mdp.num_actions(); ++a) {
                Rational value = 0;
                for (size_t d = 0; d < weights.size(); ++d) value += weights[d] * mdp.actions[a].reward[d];
                row.add(lp.x_action(static_cast<int>(a)), value);
            }
            lp.objective = row.terms();
            lp.maximize = true;
            break;
        }
        case ObjectiveKind::MaxLtlProbability: {
            RowBuilder row;
            for (size_t a = 0; a < mdp.num_actions(); ++a)
                if (in_amec[a]) row.add(lp.x_action(static_cast<int>(a)), 1);
            lp.objective = row.terms();
            lp.maximize = true;
            break;
        }
    }
    return lp;
}

std::vector<std::string> violated_constraints(const LpProblem& lp, const std::vector<Rational>& values) {
    std::vector<std::string> out;
    if (values.size() != lp.variables.size()) {
        out.push_back("assignment has wrong size");
        return out;
    }
    for (size_t v = 0; v < values.size(); ++v)
        if (sgn(values[v]) < 0) out.push_back(lp.variables[v].name + " >= 0");
    for (const auto& c : lp.constraints) {
        Rational lhs = 0;
        for (const auto& t : c.terms) lhs += t.coef * values[t.var];
        if ((c.lower && lhs < *c.lower) || (c.upper && lhs > *c.upper)) out.push_back(c.label);
    }
    return out;
}

namespace {

std::string format_terms(const LpProblem& lp, const std::vector<LpTerm>& terms) {
    if (terms.empty()) return "0";
    std::ostringstream out;
    for (size_t i = 0; i < terms.size(); ++i) {
        const Rational& c = terms[i].coef;
        if (i) out << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) out << "-";
        out << to_string(Rational(abs(c))) << " " << lp.variables[terms[i].var].name;
    }
    return out.str();
}

}  // namespace

std::string format_lp(const LpProblem& lp) {
    std::ostringstream out;
    out << "\\ " << lp.variables.size() << " variables, " << lp.constraints.size() << " constraints\n";
    if (lp.maximize) out << "maximize\n  obj: " << format_terms(lp, lp.objective) << "\n";
    else out << "feasibility\n";
    out << "subject to\n";
    for (const auto& c : lp.constraints) {
        out << "  " << c.label << ": ";
        const std::string body = format_terms(lp, c.terms);
        if (c.lower && c.upper && *c.lower == *c.upper) out << body << " = " << to_string(*c.lower);
        else if (c.lower && c.upper) out << to_string(*c.lower) << " <= " << body << " <= " << to_string(*c.upper);
        else if (c.lower) out << body << " >= " << to_string(*c.lower);
        else if (c.upper) out << body << " <= " << to_string(*c.upper);
        else out << body << " free";
        out << "\n";
    }
    out << "bounds\n  all variables >= 0\nend\n";
    return out.str();
}

}  // namespace lrsynth
