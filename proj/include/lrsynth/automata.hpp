#pragma once

#include "lrsynth/ltl.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lrsynth {

/// A letter of the alphabet 2^AP, as a bitmask over the automaton's AP order.
using LetterMask = std::uint32_t;

/// Limit-deterministic Büchi automaton with transitions stored per explicit
/// letter. Q_D is marked by `deterministic`; Q_N is the complement.
struct Ldba {
    std::vector<std::string> ap;
    std::vector<std::string> state_names;
    int initial = 0;
    std::vector<bool> accepting;
    std::vector<bool> deterministic;
    /// delta[q][letter] = sorted successor states.
    std::vector<std::vector<std::vector<int>>> delta;

    size_t num_states() const { return state_names.size(); }
    size_t num_letters() const { return size_t{1} << ap.size(); }

    /// The letter seen when exactly the given propositions hold; names the
    /// automaton does not know are ignored.
    LetterMask letter_of(const std::vector<std::string>& holding) const;
    LetterMask letter_of(const ltl::Letter& holding) const;

    bool operator==(const Ldba&) const = default;
};

/// Most APs an automaton may have; letters are enumerated explicitly.
inline constexpr size_t kMaxAutomatonAps = 16;

enum class LdbaCondition { Structure, Deterministic, AcceptingInD, OneNSuccessor };

struct LdbaViolation {
    LdbaCondition condition;
    int state = -1;
    LetterMask letter = 0;
    std::string message;
};

/// Checks the three limit-determinism conditions over every state and letter.
std::vector<LdbaViolation> validate_ldba(const Ldba& automaton);

/// Reads the HOA subset: single start state, state-based Büchi acceptance,
/// explicit guards over AP indices. The N/D partition is inferred as the
/// largest successor-closed set of states that are deterministic on every
/// letter. Throws ParseError or ValidationError.
Ldba parse_hoa(std::string_view text);

std::string serialize_hoa(const Ldba& automaton);

enum class BuiltinFamily {
    InfinitelyOften,   // G F p
    EventuallyAlways,  // F G p
    Eventually,        // F p
    Always,            // G p
    Until,             // p U q
    Response,          // (G F a) -> (G F b)
};

std::string family_name(BuiltinFamily family);

/// Hand-constructed automaton for a formula family. `aps` supplies the
/// propositions in order (one for unary families, two otherwise).
Ldba builtin_ldba(BuiltinFamily family, const std::vector<std::string>& aps);

/// One accepting state with a self-loop on every letter (the formula `true`).
Ldba unit_ldba();

struct BuiltinMatch {
    BuiltinFamily family;
    std::vector<std::string> aps;
};

/// Recognizes a formula as a builtin family up to atom renaming.
std::optional<BuiltinMatch> match_builtin(const ltl::FormulaPtr& formula);

/// Automaton for a formula: `true` gives unit_ldba(), recognized families
/// their builtin automaton. Throws std::invalid_argument otherwise.
Ldba ldba_for_formula(const ltl::FormulaPtr& formula);

/// Whether some run over prefix·cycle^ω visits accepting states infinitely
/// often. The N-part run is unique, so this enumerates the jump position
/// (until the N-state/position pair repeats) and follows the deterministic
/// run after it.
bool accepts_lasso(const Ldba& automaton, const ltl::LassoWord& word);

}  // namespace lrsynth
