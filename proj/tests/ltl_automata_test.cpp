#include "lrsynth/automata.hpp"
#include "lrsynth/errors.hpp"
#include "lrsynth/ltl.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace lrsynth;
using ltl::LassoWord;
using ltl::Letter;
using ltl::Op;

namespace {

ltl::FormulaPtr random_formula(std::mt19937_64& rng, int depth) {
    static const std::vector<std::string> atoms = {"a", "b"};
    if (depth == 0 || oracle::uniform_int(rng, 0, 3) == 0) {
        const int pick = oracle::uniform_int(rng, 0, 5);
        if (pick == 0) return ltl::Formula::make_true();
        if (pick == 1) return ltl::Formula::make_false();
        return ltl::Formula::atom(atoms[pick % 2]);
    }
    static const std::vector<Op> unary = {Op::Not, Op::Next, Op::Eventually, Op::Globally};
    static const std::vector<Op> binary = {Op::And, Op::Or, Op::Implies, Op::Until, Op::Release};
    if (oracle::uniform_int(rng, 0, 1) == 0)
        return ltl::Formula::unary(unary[oracle::uniform_int(rng, 0, 3)], random_formula(rng, depth - 1));
    return ltl::Formula::binary(binary[oracle::uniform_int(rng, 0, 4)], random_formula(rng, depth - 1),
                                random_formula(rng, depth - 1));
}

LassoWord word(std::vector<Letter> prefix, std::vector<Letter> cycle) {
    return LassoWord{std::move(prefix), std::move(cycle)};
}

const char* kFgHoa = R"(HOA: v1
States: 3
Start: 0
AP: 1 "p"
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0
[t] 0
[0] 1
State: 1 {0}
[0] 1
[!0] 2
State: 2
[t] 2
--END--
)";

}  // namespace

// ---------------------------------------------------------------------------
// LTL syntax

TEST(LtlParse, InfinitelyOftenShape) {
    auto f = ltl::parse("G F p_t");
    ASSERT_EQ(f->op(), Op::Globally);
    ASSERT_EQ(f->lhs()->op(), Op::Eventually);
    ASSERT_EQ(f->lhs()->lhs()->op(), Op::Atom);
    EXPECT_EQ(f->lhs()->lhs()->name(), "p_t");
}

TEST(LtlParse, SingleAtom) {
    auto f = ltl::parse("p");
    EXPECT_EQ(f->op(), Op::Atom);
    EXPECT_EQ(f->name(), "p");
}

TEST(LtlParse, UntilIsRightAssociative) {
    EXPECT_TRUE(ltl::equal(ltl::parse("a U (b U c)"), ltl::parse("a U b U c")));
    EXPECT_FALSE(ltl::equal(ltl::parse("(a U b) U c"), ltl::parse("a U b U c")));
}

TEST(LtlParse, Precedence) {
    // unary > U > & > | > ->
    EXPECT_TRUE(ltl::equal(ltl::parse("!a U b & c | d -> e"), ltl::parse("((((!a) U b) & c) | d) -> e")));
    EXPECT_TRUE(ltl::equal(ltl::parse("a -> b -> c"), ltl::parse("a -> (b -> c)")));
    EXPECT_TRUE(ltl::equal(ltl::parse("X a R b"), ltl::parse("(X a) R b")));
}

TEST(LtlParse, ErrorsCarryColumn) {
    try {
        ltl::parse("a & & b");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 5u);
    }
    EXPECT_THROW(ltl::parse("a % b"), ParseError);
    EXPECT_THROW(ltl::parse("(a U b"), ParseError);
    EXPECT_THROW(ltl::parse(""), ParseError);
}

TEST(LtlParse, PrintParseRoundTrip) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        auto f = random_formula(rng, 4);
        auto text = ltl::to_string(f);
        EXPECT_TRUE(ltl::equal(ltl::parse(text), f)) << text;
    }
}

TEST(LtlParse, Atoms) {
    EXPECT_EQ(ltl::atoms(ltl::parse("G F a -> G F b & true")), (std::set<std::string>{"a", "b"}));
}

// ---------------------------------------------------------------------------
// Lasso semantics

TEST(LtlEval, InfinitelyOftenExamples) {
    auto f = ltl::parse("G F p_t");
    EXPECT_TRUE(ltl::eval_lasso(f, word({}, {{"p_s"}, {"p_t"}})));
    EXPECT_FALSE(ltl::eval_lasso(f, word({{"p_t"}}, {{"p_s"}})));
}

TEST(LtlEval, ResponseExamples) {
    auto f = ltl::parse("(G F a) -> (G F b)");
    EXPECT_FALSE(ltl::eval_lasso(f, word({}, {{"a"}, {}})));
    EXPECT_TRUE(ltl::eval_lasso(f, word({}, {{"a"}, {"b"}})));
}

TEST(LtlEval, NextAndRelease) {
    EXPECT_TRUE(ltl::eval_lasso(ltl::parse("X X a"), word({{}, {}}, {{"a"}})));
    EXPECT_FALSE(ltl::eval_lasso(ltl::parse("X a"), word({{"a"}}, {{}})));
    // b holds until and including the first a; afterwards b may fail.
    EXPECT_TRUE(ltl::eval_lasso(ltl::parse("a R b"), word({{"b"}, {"a", "b"}}, {{}})));
    EXPECT_FALSE(ltl::eval_lasso(ltl::parse("a R b"), word({{"b"}, {"a"}}, {{}})));
    EXPECT_TRUE(ltl::eval_lasso(ltl::parse("a R b"), word({}, {{"b"}})));
}

TEST(LtlEval, AgreesWithRecursiveEvaluation) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        auto f = random_formula(rng, 4);
        auto w = oracle::random_lasso(rng, {"a", "b"});
        EXPECT_EQ(ltl::eval_lasso(f, w), oracle::oracle_eval(f, w, 0)) << ltl::to_string(f);
    }
}

TEST(LtlEval, NegationFlipsTheVerdict) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 1000; ++i) {
        auto f = random_formula(rng, 4);
        auto w = oracle::random_lasso(rng, {"a", "b"});
        EXPECT_NE(ltl::eval_lasso(ltl::Formula::unary(Op::Not, f), w), ltl::eval_lasso(f, w));
    }
}

TEST(LtlEval, InvariantUnderCycleRotation) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        auto f = random_formula(rng, 4);
        auto w = oracle::random_lasso(rng, {"a", "b"});
        const size_t k = oracle::uniform_int(rng, 1, static_cast<int>(w.cycle.size()));
        LassoWord rotated = w;
        for (size_t j = 0; j < k; ++j) rotated.prefix.push_back(w.cycle[j]);
        std::rotate(rotated.cycle.begin(), rotated.cycle.begin() + k % w.cycle.size(), rotated.cycle.end());
        EXPECT_EQ(ltl::eval_lasso(f, rotated), ltl::eval_lasso(f, w)) << ltl::to_string(f);
    }
}

TEST(LtlEval, InvariantUnderCycleDoubling) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        auto f = random_formula(rng, 4);
        auto w = oracle::random_lasso(rng, {"a", "b"});
        LassoWord doubled = w;
        doubled.cycle.insert(doubled.cycle.end(), w.cycle.begin(), w.cycle.end());
        EXPECT_EQ(ltl::eval_lasso(f, doubled), ltl::eval_lasso(f, w)) << ltl::to_string(f);
    }
}

// ---------------------------------------------------------------------------
// Automata

TEST(Builtin, AllFamiliesAreLimitDeterministic) {
    for (auto family : oracle::all_families()) {
        const size_t arity = (family == BuiltinFamily::Until || family == BuiltinFamily::Response) ? 2 : 1;
        std::vector<std::string> aps = {"a", "b"};
        aps.resize(arity);
        EXPECT_TRUE(validate_ldba(builtin_ldba(family, aps)).empty()) << family_name(family);
    }
    EXPECT_TRUE(validate_ldba(unit_ldba()).empty());
}

TEST(Builtin, InfinitelyOftenIsTwoStateDeterministic) {
    const Ldba a = builtin_ldba(BuiltinFamily::InfinitelyOften, {"p"});
    EXPECT_EQ(a.num_states(), 2u);
    EXPECT_TRUE(std::all_of(a.deterministic.begin(), a.deterministic.end(), [](bool d) { return d; }));
    EXPECT_EQ(std::count(a.accepting.begin(), a.accepting.end(), true), 1);
}

TEST(Builtin, AcceptanceExamples) {
    EXPECT_TRUE(accepts_lasso(builtin_ldba(BuiltinFamily::InfinitelyOften, {"p"}), word({}, {{"p"}, {}})));
    EXPECT_FALSE(accepts_lasso(builtin_ldba(BuiltinFamily::EventuallyAlways, {"p"}), word({}, {{"p"}, {}})));
    EXPECT_TRUE(accepts_lasso(builtin_ldba(BuiltinFamily::Until, {"p", "q"}), word({{"p"}, {"q"}}, {{}})));
    EXPECT_TRUE(accepts_lasso(builtin_ldba(BuiltinFamily::Always, {"p"}), word({{"p"}}, {{"p"}})));
    EXPECT_FALSE(accepts_lasso(builtin_ldba(BuiltinFamily::Always, {"p"}), word({{"p"}, {}}, {{"p"}})));
    EXPECT_TRUE(accepts_lasso(builtin_ldba(BuiltinFamily::Eventually, {"p"}), word({{}, {}}, {{}, {"p"}})));
    EXPECT_FALSE(accepts_lasso(builtin_ldba(BuiltinFamily::Eventually, {"p"}), word({{}}, {{}})));
}

TEST(Builtin, AgreesWithLassoSemantics) {
    std::mt19937_64 rng(13);
    for (auto family : oracle::all_families()) {
        const size_t arity = (family == BuiltinFamily::Until || family == BuiltinFamily::Response) ? 2 : 1;
        std::vector<std::string> aps = {"a", "b"};
        aps.resize(arity);
        const Ldba automaton = builtin_ldba(family, aps);
        const auto formula = ltl::parse(oracle::family_formula(family, aps));
        for (int i = 0; i < 1000; ++i) {
            auto w = oracle::random_lasso(rng, {"a", "b"});
            ASSERT_EQ(accepts_lasso(automaton, w), ltl::eval_lasso(formula, w)) << family_name(family);
        }
    }
}

TEST(Builtin, FormulaRecognition) {
    for (auto family : oracle::all_families()) {
        const size_t arity = (family == BuiltinFamily::Until || family == BuiltinFamily::Response) ? 2 : 1;
        std::vector<std::string> aps = {"x1", "y2"};
        aps.resize(arity);
        auto match = match_builtin(ltl::parse(oracle::family_formula(family, aps)));
        ASSERT_TRUE(match) << family_name(family);
        EXPECT_EQ(match->family, family);
        EXPECT_EQ(match->aps, aps);
    }
    EXPECT_FALSE(match_builtin(ltl::parse("G (a -> F b)")));
    EXPECT_THROW(ldba_for_formula(ltl::parse("X a")), std::invalid_argument);
    EXPECT_EQ(ldba_for_formula(ltl::parse("true")), unit_ldba());
}

TEST(Builtin, RejectsWrongArity) {
    EXPECT_THROW(builtin_ldba(BuiltinFamily::Until, {"p"}), std::invalid_argument);
    EXPECT_THROW(builtin_ldba(BuiltinFamily::Response, {"p", "p"}), std::invalid_argument);
}

TEST(Hoa, BuiltinRoundTrip) {
    for (auto family : oracle::all_families()) {
        const size_t arity = (family == BuiltinFamily::Until || family == BuiltinFamily::Response) ? 2 : 1;
        std::vector<std::string> aps = {"a", "b"};
        aps.resize(arity);
        const Ldba a = builtin_ldba(family, aps);
        const Ldba back = parse_hoa(serialize_hoa(a));
        EXPECT_EQ(back.ap, a.ap);
        EXPECT_EQ(back.initial, a.initial);
        EXPECT_EQ(back.accepting, a.accepting);
        EXPECT_EQ(back.deterministic, a.deterministic) << family_name(family);
        EXPECT_EQ(back.delta, a.delta);
        EXPECT_TRUE(validate_ldba(back).empty());
    }
}

TEST(Hoa, EventuallyAlwaysWithLetterJump) {
    const Ldba a = parse_hoa(kFgHoa);
    ASSERT_TRUE(validate_ldba(a).empty());
    EXPECT_EQ(std::count(a.deterministic.begin(), a.deterministic.end(), false), 1);
    EXPECT_GE(std::count(a.deterministic.begin(), a.deterministic.end(), true), 1);
    for (size_t q = 0; q < a.num_states(); ++q)
        if (a.accepting[q]) EXPECT_TRUE(a.deterministic[q]);
    std::mt19937_64 rng(17);
    const auto formula = ltl::parse("F G p");
    for (int i = 0; i < 300; ++i) {
        auto w = oracle::random_lasso(rng, {"p"});
        EXPECT_EQ(accepts_lasso(a, w), ltl::eval_lasso(formula, w));
    }
}

TEST(Hoa, AcceptingStateInNondeterministicPart) {
    const char* text = R"(HOA: v1
States: 2
Start: 0
AP: 1 "p"
Acceptance: 1 Inf(0)
--BODY--
State: 0 {0}
[t] 0
[t] 1
State: 1
[t] 1
--END--
)";
    try {
        parse_hoa(text);
        FAIL() << "expected a validation error";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("condition 2 violated"), std::string::npos) << e.what();
    }
}

TEST(Hoa, RejectsUnsupportedInput) {
    EXPECT_THROW(parse_hoa("HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 2 Inf(0)&Inf(1)\n--BODY--\nState: 0\n[t] 0\n--END--\n"),
                 ParseError);
    EXPECT_THROW(parse_hoa("HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"p\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[3] 0\n--END--\n"),
                 ParseError);
    EXPECT_THROW(parse_hoa("States: 1\n"), ParseError);
}

TEST(Hoa, GuardsExpandToLetters) {
    const char* text = R"(HOA: v1
States: 2
Start: 0
AP: 2 "a" "b"
Acceptance: 1 Inf(0)
--BODY--
State: 0
[0 & !1] 1
[!0 | 1] 0
State: 1 {0}
[t] 1
--END--
)";
    const Ldba a = parse_hoa(text);
    EXPECT_EQ(a.delta[0][a.letter_of(std::vector<std::string>{"a"})], std::vector<int>{1});
    EXPECT_EQ(a.delta[0][a.letter_of(std::vector<std::string>{"a", "b"})], std::vector<int>{0});
    EXPECT_EQ(a.delta[0][a.letter_of(std::vector<std::string>{})], std::vector<int>{0});
}

TEST(Validate, ReportsConditionBreaches) {
    Ldba two = builtin_ldba(BuiltinFamily::InfinitelyOften, {"p"});
    const LetterMask p = two.letter_of(std::vector<std::string>{"p"});
    two.delta[0][p] = {0, 1};
    auto v = validate_ldba(two);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v.front().condition, LdbaCondition::Deterministic);
    EXPECT_EQ(v.front().state, 0);
    EXPECT_EQ(v.front().letter, p);

    Ldba fg = builtin_ldba(BuiltinFamily::EventuallyAlways, {"p"});
    fg.delta[0][0] = {1};  // the waiting state loses its N-successor on the empty letter
    v = validate_ldba(fg);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v.front().condition, LdbaCondition::OneNSuccessor);
    EXPECT_EQ(v.front().letter, 0u);
}
