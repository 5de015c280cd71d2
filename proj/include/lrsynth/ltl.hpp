#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lrsynth::ltl {

enum class Op { True, False, Atom, Not, And, Or, Implies, Next, Until, Release, Eventually, Globally };

/// Immutable LTL syntax tree. Derived operators (F, G, |, R, ->) are kept as
/// their own nodes so formulas print back the way they were written.
class Formula {
  public:
    using Ptr = std::shared_ptr<const Formula>;

    static Ptr make_true();
    static Ptr make_false();
    static Ptr atom(std::string name);
    static Ptr unary(Op op, Ptr operand);
    static Ptr binary(Op op, Ptr lhs, Ptr rhs);

    Op op() const { return op_; }
    const std::string& name() const { return name_; }
    const Ptr& lhs() const { return lhs_; }
    const Ptr& rhs() const { return rhs_; }

  private:
    Formula(Op op, std::string name, Ptr lhs, Ptr rhs)
        : op_(op), name_(std::move(name)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

    Op op_;
    std::string name_;
    Ptr lhs_;  // sole operand of unary operators
    Ptr rhs_;
};

using FormulaPtr = Formula::Ptr;

/// Parses the concrete syntax: identifiers, `true`, `false`, `! X F G`
/// (prefix), `U R` (right-associative), `&`, `|`, `->` (right-associative),
/// parentheses. Binding from tightest: unary, U/R, &, |, ->.
/// Throws ParseError carrying the 1-based column.
FormulaPtr parse(std::string_view text);

/// Fully parenthesized-where-needed text that parse() maps back to an equal tree.
std::string to_string(const FormulaPtr& f);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> atoms(const FormulaPtr& f);

/// A letter is the set of atomic propositions that hold.
using Letter = std::set<std::string>;

/// The ultimately periodic word prefix · cycle^ω.
struct LassoWord {
    std::vector<Letter> prefix;
    std::vector<Letter> cycle;  // nonempty
};

/// Exact satisfaction on a lasso: evaluates every subformula on the
/// |prefix|+|cycle| positions of the lasso graph, U/F as least and R/G as
/// greatest fixed points.
bool eval_lasso(const FormulaPtr& f, const LassoWord& word);

}  // namespace lrsynth::ltl
