#include "lrsynth/automata.hpp"

#include "lrsynth/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lrsynth {

LetterMask Ldba::letter_of(const std::vector<std::string>& holding) const {
    LetterMask mask = 0;
    for (size_t i = 0; i < ap.size(); ++i)
        if (std::find(holding.begin(), holding.end(), ap[i]) != holding.end()) mask |= LetterMask{1} << i;
    return mask;
}

LetterMask Ldba::letter_of(const ltl::Letter& holding) const {
    LetterMask mask = 0;
    for (size_t i = 0; i < ap.size(); ++i)
        if (holding.count(ap[i])) mask |= LetterMask{1} << i;
    return mask;
}

namespace {

std::string letter_text(const Ldba& a, LetterMask letter) {
    std::string out = "{";
    bool first = true;
    for (size_t i = 0; i < a.ap.size(); ++i) {
        if (letter & (LetterMask{1} << i)) {
            out += (first ? "" : ",") + a.ap[i];
            first = false;
        }
    }
    return out + "}";
}

std::string state_text(const Ldba& a, int q) {
    return q >= 0 && q < static_cast<int>(a.state_names.size()) ? "'" + a.state_names[q] + "'" : "#" + std::to_string(q);
}

}  // namespace

std::vector<LdbaViolation> validate_ldba(const Ldba& a) {
    std::vector<LdbaViolation> out;
    const int n = static_cast<int>(a.num_states());
    if (a.ap.size() > kMaxAutomatonAps) {
        out.push_back({LdbaCondition::Structure, -1, 0, "too many atomic propositions"});
        return out;
    }
    if (n == 0 || a.initial < 0 || a.initial >= n) out.push_back({LdbaCondition::Structure, -1, 0, "initial state out of range"});
    if (static_cast<int>(a.accepting.size()) != n || static_cast<int>(a.deterministic.size()) != n ||
        static_cast<int>(a.delta.size()) != n) {
        out.push_back({LdbaCondition::Structure, -1, 0, "state tables have inconsistent sizes"});
        return out;
    }
    for (int q = 0; q < n; ++q) {
        if (a.delta[q].size() != a.num_letters()) {
            out.push_back({LdbaCondition::Structure, q, 0, "state " + state_text(a, q) + " lacks a transition row per letter"});
            continue;
        }
        if (a.accepting[q] && !a.deterministic[q])
            out.push_back({LdbaCondition::AcceptingInD, q, 0,
                           "condition 2 violated: accepting state " + state_text(a, q) + " is not in the deterministic part"});
        for (LetterMask l = 0; l < a.num_letters(); ++l) {
            const auto& succ = a.delta[q][l];
            bool in_range = std::all_of(succ.begin(), succ.end(), [&](int r) { return r >= 0 && r < n; });
            if (!in_range) {
                out.push_back({LdbaCondition::Structure, q, l, "successor out of range"});
                continue;
            }
            const std::string where = " at state " + state_text(a, q) + " on letter " + letter_text(a, l);
            if (a.deterministic[q]) {
                if (succ.size() != 1)
                    out.push_back({LdbaCondition::Deterministic, q, l,
                                   "condition 1 violated: " + std::to_string(succ.size()) + " successors" + where});
                else if (!a.deterministic[succ.front()])
                    out.push_back({LdbaCondition::Deterministic, q, l, "condition 1 violated: successor leaves the deterministic part" + where});
            } else {
                auto n_succ = std::count_if(succ.begin(), succ.end(), [&](int r) { return !a.deterministic[r]; });
                if (n_succ != 1)
                    out.push_back({LdbaCondition::OneNSuccessor, q, l,
                                   "condition 3 violated: " + std::to_string(n_succ) + " successors in the nondeterministic part" + where});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// HOA subset

namespace {

enum class HTok { HeaderKey, Int, String, Ident, Punct, Body, End, Eof };

struct HToken {
    HTok kind;
    std::string text;
    size_t line;
    size_t column;
};

std::vector<HToken> hoa_tokenize(std::string_view text) {
    std::vector<HToken> out;
    size_t line = 1, col = 1, i = 0;
    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (text[i] == '\n') ++line, col = 1;
            else ++col;
            ++i;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            size_t end = text.find("*/", i + 2);
            if (end == std::string_view::npos) throw ParseError("unterminated comment", line, col);
            advance(end + 2 - i);
        } else if (text.substr(i, 8) == "--BODY--") {
            out.push_back({HTok::Body, "--BODY--", line, col});
            advance(8);
        } else if (text.substr(i, 7) == "--END--") {
            out.push_back({HTok::End, "--END--", line, col});
            advance(7);
        } else if (c == '"') {
            size_t j = i + 1;
            std::string value;
            while (j < text.size() && text[j] != '"') {
                if (text[j] == '\\' && j + 1 < text.size()) ++j;
                value += text[j++];
            }
            if (j >= text.size()) throw ParseError("unterminated string", line, col);
            out.push_back({HTok::String, value, line, col});
            advance(j + 1 - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({HTok::Int, std::string(text.substr(i, j - i)), line, col});
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '-')) ++j;
            std::string word(text.substr(i, j - i));
            if (j < text.size() && text[j] == ':') {
                out.push_back({HTok::HeaderKey, word + ":", line, col});
                advance(j + 1 - i);
            } else {
                out.push_back({HTok::Ident, word, line, col});
                advance(j - i);
            }
        } else if (std::string_view("[]{}()!&|").find(c) != std::string_view::npos) {
            out.push_back({HTok::Punct, std::string(1, c), line, col});
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    out.push_back({HTok::Eof, "", line, col});
    return out;
}

class HoaReader {
  public:
    explicit HoaReader(std::string_view text) : tokens_(hoa_tokenize(text)) {}

    Ldba read() {
        read_header();
        read_body();
        return finish();
    }

  private:
    const HToken& peek() const { return tokens_[pos_]; }
    HToken take() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

    [[noreturn]] void fail(const std::string& message, const HToken& at) const {
        throw ParseError(message, at.line, at.column);
    }
    [[noreturn]] void fail(const std::string& message) const { fail(message, peek()); }

    int take_int(const char* what) {
        if (peek().kind != HTok::Int) fail(std::string("expected ") + what);
        return std::stoi(take().text);
    }

    void expect_punct(const char* p) {
        if (peek().kind != HTok::Punct || peek().text != p) fail(std::string("expected '") + p + "'");
        take();
    }

    bool at_punct(const char* p) const { return peek().kind == HTok::Punct && peek().text == p; }

    void read_header() {
        if (peek().kind != HTok::HeaderKey || peek().text != "HOA:") fail("document must start with 'HOA:'");
        take();
        if (peek().kind != HTok::Ident || peek().text != "v1") fail("unsupported HOA version");
        take();

        bool have_acceptance = false;
        while (peek().kind == HTok::HeaderKey) {
            HToken key = take();
            if (key.text == "States:") {
                num_states_ = take_int("state count");
            } else if (key.text == "Start:") {
                if (initial_ != -1) fail("multiple start states are not supported", key);
                initial_ = take_int("start state");
                if (at_punct("&")) fail("conjunctive start states are not supported");
            } else if (key.text == "AP:") {
                int count = take_int("AP count");
                for (int i = 0; i < count; ++i) {
                    if (peek().kind != HTok::String) fail("expected AP name");
                    aps_.push_back(take().text);
                }
            } else if (key.text == "Acceptance:") {
                have_acceptance = true;
                HToken at = peek();
                int sets = take_int("acceptance set count");
                std::string cond;
                while (peek().kind == HTok::Ident || peek().kind == HTok::Punct || peek().kind == HTok::Int) {
                    if (peek().kind == HTok::Ident && peek().text != "Inf" && peek().text != "Fin" &&
                        peek().text != "t" && peek().text != "f")
                        break;
                    cond += take().text;
                }
                if (sets != 1 || cond != "Inf(0)") fail("unsupported acceptance condition '" + std::to_string(sets) + " " + cond + "'", at);
            } else if (key.text == "acc-name:") {
                HToken at = peek();
                if (peek().kind != HTok::Ident) fail("expected acceptance name");
                std::string name = take().text;
                if (name != "Buchi") fail("unsupported acceptance condition '" + name + "'", at);
                buchi_named_ = true;
            } else {
                // Other header items (name, tool, properties, ...) carry no semantics here.
                while (peek().kind == HTok::String || peek().kind == HTok::Ident || peek().kind == HTok::Int ||
                       peek().kind == HTok::Punct)
                    take();
            }
        }
        if (!have_acceptance && !buchi_named_) fail("missing 'Acceptance:' header");
        if (num_states_ < 0) fail("missing 'States:' header");
        if (initial_ < 0) fail("missing 'Start:' header");
        if (aps_.size() > kMaxAutomatonAps) fail("too many atomic propositions");
        if (peek().kind != HTok::Body) fail("expected --BODY--");
        take();
    }

    // Guard evaluation: returns the set of letters satisfying the expression.
    std::vector<bool> guard_or() {
        auto v = guard_and();
        while (at_punct("|")) {
            take();
            auto w = guard_and();
            for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] || w[i];
        }
        return v;
    }
    std::vector<bool> guard_and() {
        auto v = guard_unary();
        while (at_punct("&")) {
            take();
            auto w = guard_unary();
            for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] && w[i];
        }
        return v;
    }
    std::vector<bool> guard_unary() {
        const size_t letters = size_t{1} << aps_.size();
        if (at_punct("!")) {
            take();
            auto v = guard_unary();
            for (size_t i = 0; i < v.size(); ++i) v[i] = !v[i];
            return v;
        }
        if (at_punct("(")) {
            take();
            auto v = guard_or();
            expect_punct(")");
            return v;
        }
        if (peek().kind == HTok::Ident && (peek().text == "t" || peek().text == "f")) {
            return std::vector<bool>(letters, take().text == "t");
        }
        if (peek().kind == HTok::Int) {
            HToken at = peek();
            int idx = take_int("AP index");
            if (idx < 0 || idx >= static_cast<int>(aps_.size())) fail("AP index " + std::to_string(idx) + " out of range", at);
            std::vector<bool> v(letters);
            for (size_t l = 0; l < letters; ++l) v[l] = (l >> idx) & 1;
            return v;
        }
        fail("malformed guard");
    }

    void read_body() {
        delta_.assign(num_states_, std::vector<std::set<int>>(size_t{1} << aps_.size()));
        accepting_.assign(num_states_, false);
        names_.resize(num_states_);
        std::vector<bool> declared(num_states_, false);
        int current = -1;
        while (peek().kind != HTok::End) {
            if (peek().kind == HTok::Eof) fail("missing --END--");
            if (peek().kind == HTok::HeaderKey && peek().text == "State:") {
                take();
                HToken at = peek();
                current = take_int("state number");
                if (current >= num_states_) fail("state " + std::to_string(current) + " exceeds 'States:'", at);
                if (declared[current]) fail("state " + std::to_string(current) + " declared twice", at);
                declared[current] = true;
                names_[current] = std::to_string(current);
                if (peek().kind == HTok::String) names_[current] = take().text;
                if (at_punct("{")) {
                    take();
                    while (peek().kind == HTok::Int) {
                        HToken set_at = peek();
                        if (take_int("acceptance set") != 0) fail("only acceptance set 0 is supported", set_at);
                        accepting_[current] = true;
                    }
                    expect_punct("}");
                }
                continue;
            }
            if (current < 0) fail("edge outside of a State: block");
            if (!at_punct("[")) fail("edges without explicit guards are not supported");
            take();
            auto letters = guard_or();
            expect_punct("]");
            HToken at = peek();
            int dest = take_int("destination state");
            if (dest >= num_states_) fail("destination " + std::to_string(dest) + " out of range", at);
            if (at_punct("&")) fail("universal branching is not supported");
            if (at_punct("{")) fail("transition-based acceptance is not supported");
            for (size_t l = 0; l < letters.size(); ++l)
                if (letters[l]) delta_[current][l].insert(dest);
        }
        take();
        for (int q = 0; q < num_states_; ++q)
            if (!declared[q]) names_[q] = std::to_string(q);
    }

    Ldba finish() {
        if (initial_ >= num_states_) throw ValidationError("start state out of range");
        Ldba a;
        a.ap = aps_;
        a.state_names = names_;
        a.initial = initial_;
        a.accepting = accepting_;
        a.delta.resize(num_states_);
        for (int q = 0; q < num_states_; ++q) {
            a.delta[q].resize(delta_[q].size());
            for (size_t l = 0; l < delta_[q].size(); ++l) {
                if (delta_[q][l].empty())
                    throw ValidationError("non-total transition relation: state '" + names_[q] + "' has no successor on letter " +
                                          letter_text(a, static_cast<LetterMask>(l)));
                a.delta[q][l].assign(delta_[q][l].begin(), delta_[q][l].end());
            }
        }

        // Greatest set of letter-deterministic states closed under successors.
        std::vector<bool> det(num_states_);
        for (int q = 0; q < num_states_; ++q)
            det[q] = std::all_of(a.delta[q].begin(), a.delta[q].end(), [](const auto& s) { return s.size() == 1; });
        for (bool changed = true; changed;) {
            changed = false;
            for (int q = 0; q < num_states_; ++q) {
                if (!det[q]) continue;
                for (const auto& s : a.delta[q]) {
                    if (!det[s.front()]) {
                        det[q] = false;
                        changed = true;
                        break;
                    }
                }
            }
        }
        a.deterministic = det;

        auto violations = validate_ldba(a);
        if (!violations.empty()) throw ValidationError("not limit-deterministic: " + violations.front().message);
        return a;
    }

    std::vector<HToken> tokens_;
    size_t pos_ = 0;
    int num_states_ = -1;
    int initial_ = -1;
    bool buchi_named_ = false;
    std::vector<std::string> aps_;
    std::vector<std::string> names_;
    std::vector<bool> accepting_;
    std::vector<std::vector<std::set<int>>> delta_;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Ldba parse_hoa(std::string_view text) {
    return HoaReader(text).read();
}

std::string serialize_hoa(const Ldba& a) {
    std::ostringstream out;
    out << "HOA: v1\n";
    out << "States: " << a.num_states() << "\n";
    out << "Start: " << a.initial << "\n";
    out << "AP: " << a.ap.size();
    for (const auto& p : a.ap) out << " " << quote(p);
    out << "\n";
    out << "acc-name: Buchi\n";
    out << "Acceptance: 1 Inf(0)\n";
    out << "--BODY--\n";
    for (size_t q = 0; q < a.num_states(); ++q) {
        out << "State: " << q << " " << quote(a.state_names[q]);
        if (a.accepting[q]) out << " {0}";
        out << "\n";
        for (LetterMask l = 0; l < a.num_letters(); ++l) {
            std::string guard;
            if (a.ap.empty()) {
                guard = "t";
            } else {
                for (size_t i = 0; i < a.ap.size(); ++i) {
                    if (i) guard += "&";
                    if (!(l & (LetterMask{1} << i))) guard += "!";
                    guard += std::to_string(i);
                }
            }
            for (int r : a.delta[q][l]) out << "[" << guard << "] " << r << "\n";
        }
    }
    out << "--END--\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Builtin families

std::string family_name(BuiltinFamily family) {
    switch (family) {
        case BuiltinFamily::InfinitelyOften: return "G F p";
        case BuiltinFamily::EventuallyAlways: return "F G p";
        case BuiltinFamily::Eventually: return "F p";
        case BuiltinFamily::Always: return "G p";
        case BuiltinFamily::Until: return "p U q";
        case BuiltinFamily::Response: return "(G F a) -> (G F b)";
    }
    return "?";
}

namespace {

// Fills delta from a function (state, letter) -> successors.
Ldba make_automaton(std::vector<std::string> aps, std::vector<std::string> names, std::vector<bool> accepting,
                    std::vector<bool> deterministic,
                    const std::function<std::vector<int>(int, LetterMask)>& step) {
    Ldba a;
    a.ap = std::move(aps);
    a.state_names = std::move(names);
    a.initial = 0;
    a.accepting = std::move(accepting);
    a.deterministic = std::move(deterministic);
    a.delta.resize(a.state_names.size());
    for (size_t q = 0; q < a.state_names.size(); ++q) {
        a.delta[q].resize(a.num_letters());
        for (LetterMask l = 0; l < a.num_letters(); ++l) {
            auto succ = step(static_cast<int>(q), l);
            std::sort(succ.begin(), succ.end());
            a.delta[q][l] = succ;
        }
    }
    return a;
}

}  // namespace

Ldba builtin_ldba(BuiltinFamily family, const std::vector<std::string>& aps) {
    const size_t arity = (family == BuiltinFamily::Until || family == BuiltinFamily::Response) ? 2 : 1;
    if (aps.size() != arity)
        throw std::invalid_argument("family " + family_name(family) + " takes " + std::to_string(arity) + " proposition(s)");
    if (arity == 2 && aps[0] == aps[1]) throw std::invalid_argument("family " + family_name(family) + " needs distinct propositions");

    constexpr LetterMask first = 1, second = 2;
    switch (family) {
        case BuiltinFamily::InfinitelyOften:
            return make_automaton(aps, {"idle", "seen"}, {false, true}, {true, true},
                                  [](int, LetterMask l) { return std::vector<int>{(l & first) ? 1 : 0}; });
        case BuiltinFamily::Eventually:
            return make_automaton(aps, {"wait", "done"}, {false, true}, {true, true},
                                  [](int q, LetterMask l) { return std::vector<int>{(q == 1 || (l & first)) ? 1 : 0}; });
        case BuiltinFamily::Always:
            return make_automaton(aps, {"ok", "fail"}, {true, false}, {true, true},
                                  [](int q, LetterMask l) { return std::vector<int>{(q == 0 && (l & first)) ? 0 : 1}; });
        case BuiltinFamily::EventuallyAlways:
            // wait --any--> {wait, hold}; hold requires p on every later letter.
            return make_automaton(aps, {"wait", "hold", "fail"}, {false, true, false}, {false, true, true},
                                  [](int q, LetterMask l) {
                                      if (q == 0) return std::vector<int>{0, 1};
                                      if (q == 1) return std::vector<int>{(l & first) ? 1 : 2};
                                      return std::vector<int>{2};
                                  });
        case BuiltinFamily::Until:
            return make_automaton(aps, {"wait", "done", "fail"}, {false, true, false}, {true, true, true},
                                  [](int q, LetterMask l) {
                                      if (q == 0) return std::vector<int>{(l & second) ? 1 : (l & first) ? 0 : 2};
                                      return std::vector<int>{q};
                                  });
        case BuiltinFamily::Response:
            // FG !a | GF b: the initial waiting state jumps into either disjunct.
            return make_automaton(aps, {"wait", "b_idle", "b_seen", "a_free", "fail"}, {false, false, true, true, false},
                                  {false, true, true, true, true}, [](int q, LetterMask l) {
                                      const int b_state = (l & second) ? 2 : 1;
                                      switch (q) {
                                          case 0: {
                                              std::vector<int> s{0, b_state};
                                              if (!(l & first)) s.push_back(3);
                                              return s;
                                          }
                                          case 1:
                                          case 2: return std::vector<int>{b_state};
                                          case 3: return std::vector<int>{(l & first) ? 4 : 3};
                                          default: return std::vector<int>{4};
                                      }
                                  });
    }
    throw std::invalid_argument("unknown builtin family");
}

Ldba unit_ldba() {
    return make_automaton({}, {"any"}, {true}, {true}, [](int, LetterMask) { return std::vector<int>{0}; });
}

std::optional<BuiltinMatch> match_builtin(const ltl::FormulaPtr& f) {
    using ltl::Op;
    auto is = [](const ltl::FormulaPtr& g, Op op) { return g && g->op() == op; };
    auto gf_atom = [&](const ltl::FormulaPtr& g) -> std::optional<std::string> {
        if (is(g, Op::Globally) && is(g->lhs(), Op::Eventually) && is(g->lhs()->lhs(), Op::Atom)) return g->lhs()->lhs()->name();
        return std::nullopt;
    };

    if (auto p = gf_atom(f)) return BuiltinMatch{BuiltinFamily::InfinitelyOften, {*p}};
    if (is(f, Op::Eventually) && is(f->lhs(), Op::Globally) && is(f->lhs()->lhs(), Op::Atom))
        return BuiltinMatch{BuiltinFamily::EventuallyAlways, {f->lhs()->lhs()->name()}};
    if (is(f, Op::Eventually) && is(f->lhs(), Op::Atom)) return BuiltinMatch{BuiltinFamily::Eventually, {f->lhs()->name()}};
    if (is(f, Op::Globally) && is(f->lhs(), Op::Atom)) return BuiltinMatch{BuiltinFamily::Always, {f->lhs()->name()}};
    if (is(f, Op::Until) && is(f->lhs(), Op::Atom) && is(f->rhs(), Op::Atom) && f->lhs()->name() != f->rhs()->name())
        return BuiltinMatch{BuiltinFamily::Until, {f->lhs()->name(), f->rhs()->name()}};
    if (is(f, Op::Implies)) {
        auto a = gf_atom(f->lhs());
        auto b = gf_atom(f->rhs());
        if (a && b && *a != *b) return BuiltinMatch{BuiltinFamily::Response, {*a, *b}};
    }
    return std::nullopt;
}

Ldba ldba_for_formula(const ltl::FormulaPtr& formula) {
    if (formula->op() == ltl::Op::True) return unit_ldba();
    auto match = match_builtin(formula);
    if (!match)
        throw std::invalid_argument("formula '" + ltl::to_string(formula) +
                                    "' is not a builtin family; supply the automaton as a HOA file");
    return builtin_ldba(match->family, match->aps);
}

// ---------------------------------------------------------------------------
// Lasso acceptance

namespace {

struct LassoPositions {
    std::vector<LetterMask> letters;
    size_t prefix = 0;

    size_t size() const { return letters.size(); }
    size_t next(size_t i) const { return i + 1 < letters.size() ? i + 1 : prefix; }
};

// Follows the deterministic run from (state, position); true if the loop it
// eventually enters contains an accepting state.
bool deterministic_run_accepts(const Ldba& a, const LassoPositions& word, int state, size_t pos) {
    std::map<std::pair<int, size_t>, size_t> seen;
    std::vector<int> trace;
    while (true) {
        auto key = std::make_pair(state, pos);
        if (auto it = seen.find(key); it != seen.end()) {
            for (size_t k = it->second; k < trace.size(); ++k)
                if (a.accepting[trace[k]]) return true;
            return false;
        }
        seen.emplace(key, trace.size());
        trace.push_back(state);
        state = a.delta[state][word.letters[pos]].front();
        pos = word.next(pos);
    }
}

}  // namespace

bool accepts_lasso(const Ldba& a, const ltl::LassoWord& word) {
    if (word.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    LassoPositions positions;
    positions.prefix = word.prefix.size();
    for (const auto& l : word.prefix) positions.letters.push_back(a.letter_of(l));
    for (const auto& l : word.cycle) positions.letters.push_back(a.letter_of(l));

    if (a.deterministic[a.initial]) return deterministic_run_accepts(a, positions, a.initial, 0);

    // The N-part run is unique; try every jump along it until it repeats.
    std::set<std::pair<int, size_t>> visited;
    int state = a.initial;
    size_t pos = 0;
    while (visited.insert({state, pos}).second) {
        int n_next = -1;
        for (int r : a.delta[state][positions.letters[pos]]) {
            if (!a.deterministic[r]) {
                n_next = r;
            } else if (deterministic_run_accepts(a, positions, r, positions.next(pos))) {
                return true;
            }
        }
        state = n_next;
        pos = positions.next(pos);
    }
    return false;
}

}  // namespace lrsynth
