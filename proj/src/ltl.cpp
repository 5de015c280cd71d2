#include "lrsynth/ltl.hpp"

#include "lrsynth/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace lrsynth::ltl {

FormulaPtr Formula::make_true() { return Ptr(new Formula(Op::True, "", nullptr, nullptr)); }
FormulaPtr Formula::make_false() { return Ptr(new Formula(Op::False, "", nullptr, nullptr)); }
FormulaPtr Formula::atom(std::string name) { return Ptr(new Formula(Op::Atom, std::move(name), nullptr, nullptr)); }
FormulaPtr Formula::unary(Op op, Ptr operand) { return Ptr(new Formula(op, "", std::move(operand), nullptr)); }
FormulaPtr Formula::binary(Op op, Ptr lhs, Ptr rhs) { return Ptr(new Formula(op, "", std::move(lhs), std::move(rhs))); }

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Implies, Next, Until, Release, Eventually, Globally, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    size_t column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            tokens.push_back({Tok::LParen, "(", col}), ++i;
        } else if (c == ')') {
            tokens.push_back({Tok::RParen, ")", col}), ++i;
        } else if (c == '!') {
            tokens.push_back({Tok::Not, "!", col}), ++i;
        } else if (c == '&') {
            tokens.push_back({Tok::And, "&", col}), ++i;
        } else if (c == '|') {
            tokens.push_back({Tok::Or, "|", col}), ++i;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            tokens.push_back({Tok::Implies, "->", col}), i += 2;
        } else if (ident_start(c)) {
            size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string word(text.substr(i, j - i));
            Tok kind = Tok::Ident;
            if (word == "X") kind = Tok::Next;
            else if (word == "U") kind = Tok::Until;
            else if (word == "R") kind = Tok::Release;
            else if (word == "F") kind = Tok::Eventually;
            else if (word == "G") kind = Tok::Globally;
            else if (word == "true") kind = Tok::True;
            else if (word == "false") kind = Tok::False;
            tokens.push_back({kind, word, col});
            i = j;
        } else {
            throw ParseError(std::string("unknown operator '") + c + "'", 1, col);
        }
    }
    tokens.push_back({Tok::End, "", text.size() + 1});
    return tokens;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    FormulaPtr parse_all() {
        auto f = parse_implies();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

  private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, 1, peek().column);
    }

    FormulaPtr parse_implies() {
        auto lhs = parse_or();
        if (peek().kind == Tok::Implies) {
            take();
            return Formula::binary(Op::Implies, lhs, parse_implies());
        }
        return lhs;
    }

    FormulaPtr parse_or() {
        auto lhs = parse_and();
        while (peek().kind == Tok::Or) {
            take();
            lhs = Formula::binary(Op::Or, lhs, parse_and());
        }
        return lhs;
    }

    FormulaPtr parse_and() {
        auto lhs = parse_temporal();
        while (peek().kind == Tok::And) {
            take();
            lhs = Formula::binary(Op::And, lhs, parse_temporal());
        }
        return lhs;
    }

    FormulaPtr parse_temporal() {
        auto lhs = parse_unary();
        if (peek().kind == Tok::Until || peek().kind == Tok::Release) {
            Op op = take().kind == Tok::Until ? Op::Until : Op::Release;
            return Formula::binary(op, lhs, parse_temporal());
        }
        return lhs;
    }

    FormulaPtr parse_unary() {
        switch (peek().kind) {
            case Tok::Not: take(); return Formula::unary(Op::Not, parse_unary());
            case Tok::Next: take(); return Formula::unary(Op::Next, parse_unary());
            case Tok::Eventually: take(); return Formula::unary(Op::Eventually, parse_unary());
            case Tok::Globally: take(); return Formula::unary(Op::Globally, parse_unary());
            case Tok::True: take(); return Formula::make_true();
            case Tok::False: take(); return Formula::make_false();
            case Tok::Ident: return Formula::atom(take().text);
            case Tok::LParen: {
                take();
                auto inner = parse_implies();
                if (peek().kind != Tok::RParen) fail("expected ')'");
                take();
                return inner;
            }
            case Tok::End: fail("unexpected end of formula");
            default: fail("unexpected '" + peek().text + "'");
        }
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

// Binding strength used when printing; higher binds tighter.
int precedence(Op op) {
    switch (op) {
        case Op::Implies: return 1;
        case Op::Or: return 2;
        case Op::And: return 3;
        case Op::Until:
        case Op::Release: return 4;
        default: return 5;
    }
}

}  // namespace

FormulaPtr parse(std::string_view text) {
    return Parser(tokenize(text)).parse_all();
}

std::string to_string(const FormulaPtr& f) {
    auto wrap = [](const FormulaPtr& child, bool need) {
        return need ? "(" + to_string(child) + ")" : to_string(child);
    };
    const int p = precedence(f->op());
    switch (f->op()) {
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::Atom: return f->name();
        case Op::Not:
        case Op::Next:
        case Op::Eventually:
        case Op::Globally: {
            const char* sym = f->op() == Op::Not ? "!" : f->op() == Op::Next ? "X " : f->op() == Op::Eventually ? "F " : "G ";
            return sym + wrap(f->lhs(), precedence(f->lhs()->op()) < 5);
        }
        default: break;
    }
    const char* sym = f->op() == Op::And ? " & " : f->op() == Op::Or ? " | " : f->op() == Op::Implies ? " -> " : f->op() == Op::Until ? " U " : " R ";
    // Left-associative & and |; right-associative U, R, ->.
    const bool right_assoc = f->op() == Op::Until || f->op() == Op::Release || f->op() == Op::Implies;
    const int lp = precedence(f->lhs()->op());
    const int rp = precedence(f->rhs()->op());
    const bool wrap_l = right_assoc ? lp <= p : lp < p;
    const bool wrap_r = right_assoc ? rp < p : rp <= p;
    return wrap(f->lhs(), wrap_l) + sym + wrap(f->rhs(), wrap_r);
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->op() != b->op() || a->name() != b->name()) return false;
    return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
}

std::set<std::string> atoms(const FormulaPtr& f) {
    std::set<std::string> out;
    if (!f) return out;
    if (f->op() == Op::Atom) out.insert(f->name());
    for (const auto& child : {f->lhs(), f->rhs()}) {
        auto sub = atoms(child);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

namespace {

// Truth values of a formula at every position of the lasso graph.
class LassoEvaluator {
  public:
    explicit LassoEvaluator(const LassoWord& word) : word_(word), size_(word.prefix.size() + word.cycle.size()) {
        if (word.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    }

    std::vector<bool> eval(const FormulaPtr& f) const {
        std::vector<bool> out(size_);
        switch (f->op()) {
            case Op::True: out.assign(size_, true); break;
            case Op::False: out.assign(size_, false); break;
            case Op::Atom:
                for (size_t i = 0; i < size_; ++i) out[i] = letter(i).count(f->name()) > 0;
                break;
            case Op::Not: {
                auto a = eval(f->lhs());
                for (size_t i = 0; i < size_; ++i) out[i] = !a[i];
                break;
            }
            case Op::And:
            case Op::Or:
            case Op::Implies: {
                auto a = eval(f->lhs());
                auto b = eval(f->rhs());
                for (size_t i = 0; i < size_; ++i)
                    out[i] = f->op() == Op::And ? (a[i] && b[i]) : f->op() == Op::Or ? (a[i] || b[i]) : (!a[i] || b[i]);
                break;
            }
            case Op::Next: {
                auto a = eval(f->lhs());
                for (size_t i = 0; i < size_; ++i) out[i] = a[next(i)];
                break;
            }
            case Op::Until:
            case Op::Eventually: {
                auto hold = f->op() == Op::Until ? eval(f->lhs()) : std::vector<bool>(size_, true);
                auto goal = eval(f->op() == Op::Until ? f->rhs() : f->lhs());
                out = fixpoint(hold, goal, false);
                break;
            }
            case Op::Release:
            case Op::Globally: {
                // a R b  =  b & (a | X(a R b)), greatest fixed point.
                auto stop = f->op() == Op::Release ? eval(f->lhs()) : std::vector<bool>(size_, false);
                auto keep = eval(f->op() == Op::Release ? f->rhs() : f->lhs());
                out.assign(size_, true);
                for (bool changed = true; changed;) {
                    changed = false;
                    for (size_t i = 0; i < size_; ++i) {
                        bool v = keep[i] && (stop[i] || out[next(i)]);
                        if (v != out[i]) out[i] = v, changed = true;
                    }
                }
                break;
            }
        }
        return out;
    }

  private:
    // Least fixed point of  v = goal | (hold & X v).
    std::vector<bool> fixpoint(const std::vector<bool>& hold, const std::vector<bool>& goal, bool init) const {
        std::vector<bool> v(size_, init);
        for (bool changed = true; changed;) {
            changed = false;
            for (size_t i = 0; i < size_; ++i) {
                bool nv = goal[i] || (hold[i] && v[next(i)]);
                if (nv != v[i]) v[i] = nv, changed = true;
            }
        }
        return v;
    }

    const Letter& letter(size_t i) const {
        return i < word_.prefix.size() ? word_.prefix[i] : word_.cycle[i - word_.prefix.size()];
    }
    size_t next(size_t i) const { return i + 1 < size_ ? i + 1 : word_.prefix.size(); }

    const LassoWord& word_;
    size_t size_;
};

}  // namespace

bool eval_lasso(const FormulaPtr& f, const LassoWord& word) {
    return LassoEvaluator(word).eval(f)[0];
}

}  // namespace lrsynth::ltl
