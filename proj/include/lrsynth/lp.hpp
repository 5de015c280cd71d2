#pragma once

#include "lrsynth/mec.hpp"
#include "lrsynth/product.hpp"
#include "lrsynth/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lrsynth {

/// Steady-state interval constraint: the long-run fraction of time in states
/// labeled `ap` must lie in [lower, upper].
struct SssConstraint {
    std::string ap;
    Rational lower;
    Rational upper;
};

enum class ObjectiveKind { Feasibility, MaxReward, MaxLtlProbability };

struct Objective {
    ObjectiveKind kind = ObjectiveKind::Feasibility;
    /// For MaxReward: one weight per reward dimension. Empty selects dimension 0.
    std::vector<Rational> weights;
};

/// Long-run specification minus the automaton, which is supplied separately
/// as the product: LTL threshold, steady-state intervals, reward thresholds,
/// objective and optional frequency bound for accepting states.
struct LongRunSpec {
    Rational theta = 0;
    std::vector<SssConstraint> sss;
    std::vector<Rational> reward_thresholds;  // empty, or one per reward dimension
    Objective objective;
    std::optional<Rational> frequency_bound;  // f: accepting actions at least once per f steps
    bool per_mec_frequency = false;
};

/// Throws std::invalid_argument when the spec is malformed for the given
/// reward dimension (bounds outside [0,1], lower > upper, size mismatches).
void validate_spec(const LongRunSpec& spec, size_t reward_dimension);

enum class VarKind { TransientAction, Switch, Recurrent };
enum class ConstraintTag { Eq1, Eq2, Eq3, Eq4, C5, C6, C7, Freq };

std::string tag_name(ConstraintTag tag);

struct LpTerm {
    int var = 0;
    Rational coef;
};

/// lower <= Σ coef·var <= upper; either side may be absent.
struct LpConstraint {
    ConstraintTag tag;
    std::string label;
    std::vector<LpTerm> terms;
    std::optional<Rational> lower;
    std::optional<Rational> upper;
};

struct LpVariable {
    std::string name;
    VarKind kind;
    int index;  // product action or product state
};

/// Linear program over nonnegative variables, optionally maximizing `objective`.
struct LpProblem {
    std::vector<LpVariable> variables;
    std::vector<LpConstraint> constraints;
    std::vector<LpTerm> objective;
    bool maximize = false;

    // Variable layout for programs made by build_lp.
    size_t num_actions = 0;
    size_t num_states = 0;
    int y_action(int a) const { return a; }
    int y_state(int s) const { return static_cast<int>(num_actions) + s; }
    int x_action(int a) const { return static_cast<int>(num_actions + num_states) + a; }

    size_t count(ConstraintTag tag) const;
};

/// Policy-flow constraints (transient flow, switching, recurrent flow) plus
/// the specification constraints on the product. Throws std::invalid_argument
/// when the spec mentions a proposition that labels no product state.
LpProblem build_lp(const ProductMdp& product, const std::vector<Mec>& mecs, const std::vector<Mec>& amecs,
                   const LongRunSpec& spec);

enum class LpStatus { Optimal, Feasible, Infeasible, Unbounded };

std::string status_name(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> values;
    Rational objective = 0;
    size_t pivots = 0;

    bool feasible() const { return status == LpStatus::Optimal || status == LpStatus::Feasible; }
};

/// Exact two-phase primal simplex with Bland's rule. Without an objective
/// only phase 1 runs and a feasible point is reported as Feasible.
LpSolution solve_lp(const LpProblem& lp);

/// Labels of the constraints the assignment violates, under exact arithmetic.
std::vector<std::string> violated_constraints(const LpProblem& lp, const std::vector<Rational>& values);

/// Text dump of the program with tagged constraints and rational coefficients.
std::string format_lp(const LpProblem& lp);

}  // namespace lrsynth
