#include "mgrz/formula.hpp"

#include <unordered_set>

#include "mgrz/errors.hpp"

namespace mgrz {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

Formula::Formula() { *this = top(); }

Formula Formula::make(Node n) {
    std::size_t h = mix(0, std::size_t(n.op));
    if (n.op == Op::Letter) {
        h = mix(h, std::hash<std::string>{}(n.name));
    } else if (is_unary(n.op)) {
        h = mix(h, n.lhs.hash());
    } else if (is_binary(n.op)) {
        h = mix(h, n.lhs.hash());
        h = mix(h, n.rhs.hash());
    }
    n.hash = h;
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::letter(std::string name) { return make(Node(Op::Letter, std::move(name))); }
Formula Formula::top() { return make(Node(Op::Top, std::string())); }
Formula Formula::bot() { return make(Node(Op::Bot, std::string())); }
Formula Formula::not_(Formula f) { return make(Node(Op::Not, std::move(f))); }
Formula Formula::and_(Formula a, Formula b) { return make(Node(Op::And, std::move(a), std::move(b))); }
Formula Formula::or_(Formula a, Formula b) { return make(Node(Op::Or, std::move(a), std::move(b))); }
Formula Formula::impl(Formula a, Formula b) { return make(Node(Op::Impl, std::move(a), std::move(b))); }
Formula Formula::dia(Formula f) { return make(Node(Op::Dia, std::move(f))); }
Formula Formula::box(Formula f) { return make(Node(Op::Box, std::move(f))); }
Formula Formula::ex(Formula f) { return make(Node(Op::Ex, std::move(f))); }
Formula Formula::fa(Formula f) { return make(Node(Op::Fa, std::move(f))); }

bool Formula::operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (node_->hash != o.node_->hash || node_->op != o.node_->op) return false;
    switch (node_->op) {
        case Op::Letter: return node_->name == o.node_->name;
        case Op::Top:
        case Op::Bot: return true;
        default:
            if (is_unary(node_->op)) return lhs() == o.lhs();
            return lhs() == o.lhs() && rhs() == o.rhs();
    }
}

int Formula::node_count() const {
    switch (op()) {
        case Op::Letter:
        case Op::Top:
        case Op::Bot: return 1;
        default:
            if (is_unary(op())) return 1 + lhs().node_count();
            return 1 + lhs().node_count() + rhs().node_count();
    }
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over a handwritten lexer.
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Letter, Top, Bot, Not, Dia, Box, Ex, Fa, And, Or, Impl, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

const char* token_name(Tok t) {
    switch (t) {
        case Tok::Letter: return "letter";
        case Tok::Top: return "T";
        case Tok::Bot: return "F";
        case Tok::Not: return "~";
        case Tok::Dia: return "<>";
        case Tok::Box: return "[]";
        case Tok::Ex: return "E";
        case Tok::Fa: return "A";
        case Tok::And: return "&";
        case Tok::Or: return "|";
        case Tok::Impl: return "->";
        case Tok::LParen: return "(";
        case Tok::RParen: return ")";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) { lex(); }

    Formula parse() {
        Formula f = implication();
        expect(Tok::End);
        return f;
    }

private:
    void lex() {
        std::size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++i;
                continue;
            }
            std::size_t at = i;
            if (c == '~') {
                toks_.push_back({Tok::Not, "~", at});
                ++i;
            } else if (c == '&') {
                toks_.push_back({Tok::And, "&", at});
                ++i;
            } else if (c == '|') {
                toks_.push_back({Tok::Or, "|", at});
                ++i;
            } else if (c == '(') {
                toks_.push_back({Tok::LParen, "(", at});
                ++i;
            } else if (c == ')') {
                toks_.push_back({Tok::RParen, ")", at});
                ++i;
            } else if (c == 'T') {
                toks_.push_back({Tok::Top, "T", at});
                ++i;
            } else if (c == 'F') {
                toks_.push_back({Tok::Bot, "F", at});
                ++i;
            } else if (c == 'E') {
                toks_.push_back({Tok::Ex, "E", at});
                ++i;
            } else if (c == 'A') {
                toks_.push_back({Tok::Fa, "A", at});
                ++i;
            } else if (c == '-' && i + 1 < text_.size() && text_[i + 1] == '>') {
                toks_.push_back({Tok::Impl, "->", at});
                i += 2;
            } else if (c == '<' && i + 1 < text_.size() && text_[i + 1] == '>') {
                toks_.push_back({Tok::Dia, "<>", at});
                i += 2;
            } else if (c == '[' && i + 1 < text_.size() && text_[i + 1] == ']') {
                toks_.push_back({Tok::Box, "[]", at});
                i += 2;
            } else if (c >= 'a' && c <= 'z') {
                std::size_t j = i + 1;
                while (j < text_.size() && ((text_[j] >= 'a' && text_[j] <= 'z') ||
                                            (text_[j] >= '0' && text_[j] <= '9') || text_[j] == '_'))
                    ++j;
                toks_.push_back({Tok::Letter, text_.substr(i, j - i), at});
                i = j;
            } else {
                throw ParseError("unexpected character '" + std::string(1, c) + "'", at, {});
            }
        }
        toks_.push_back({Tok::End, "", text_.size()});
    }

    const Token& peek() const { return toks_[pos_]; }
    Token advance() { return toks_[pos_++]; }

    [[noreturn]] void fail_expecting(std::vector<std::string> expected) {
        const Token& t = peek();
        std::string msg = "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        msg += ", found " + std::string(token_name(t.kind)) + " at offset " + std::to_string(t.offset);
        throw ParseError(msg, t.offset, std::move(expected));
    }

    void expect(Tok k) {
        if (peek().kind != k) fail_expecting({token_name(k)});
        advance();
    }

    Formula implication() {  // right-associative
        Formula a = disjunction();
        if (peek().kind == Tok::Impl) {
            advance();
            return Formula::impl(a, implication());
        }
        return a;
    }

    Formula disjunction() {  // left-associative
        Formula a = conjunction();
        while (peek().kind == Tok::Or) {
            advance();
            a = Formula::or_(a, conjunction());
        }
        return a;
    }

    Formula conjunction() {  // left-associative
        Formula a = unary();
        while (peek().kind == Tok::And) {
            advance();
            a = Formula::and_(a, unary());
        }
        return a;
    }

    Formula unary() {
        switch (peek().kind) {
            case Tok::Not: advance(); return Formula::not_(unary());
            case Tok::Dia: advance(); return Formula::dia(unary());
            case Tok::Box: advance(); return Formula::box(unary());
            case Tok::Ex: advance(); return Formula::ex(unary());
            case Tok::Fa: advance(); return Formula::fa(unary());
            case Tok::Letter: return Formula::letter(advance().text);
            case Tok::Top: advance(); return Formula::top();
            case Tok::Bot: advance(); return Formula::bot();
            case Tok::LParen: {
                advance();
                Formula f = implication();
                expect(Tok::RParen);
                return f;
            }
            default:
                fail_expecting({"letter", "T", "F", "~", "<>", "[]", "E", "A", "("});
        }
    }

    const std::string& text_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// Precedence levels for rendering: higher binds tighter.
int precedence(Op op) {
    switch (op) {
        case Op::Impl: return 1;
        case Op::Or: return 2;
        case Op::And: return 3;
        default: return 4;  // unary and atoms
    }
}

void render(const Formula& f, std::string& out) {
    auto child = [&](const Formula& c, int min_prec, bool strict) {
        bool paren = strict ? precedence(c.op()) <= min_prec : precedence(c.op()) < min_prec;
        if (paren) out += '(';
        render(c, out);
        if (paren) out += ')';
    };
    switch (f.op()) {
        case Op::Letter: out += f.name(); return;
        case Op::Top: out += 'T'; return;
        case Op::Bot: out += 'F'; return;
        case Op::Not: out += '~'; child(f.lhs(), 3, true); return;
        case Op::Dia: out += "<>"; child(f.lhs(), 3, true); return;
        case Op::Box: out += "[]"; child(f.lhs(), 3, true); return;
        case Op::Ex: out += 'E'; child(f.lhs(), 3, true); return;
        case Op::Fa: out += 'A'; child(f.lhs(), 3, true); return;
        case Op::And:
            child(f.lhs(), 3, false);  // left-assoc: left child may be another &
            out += " & ";
            child(f.rhs(), 3, true);
            return;
        case Op::Or:
            child(f.lhs(), 2, false);
            out += " | ";
            child(f.rhs(), 2, true);
            return;
        case Op::Impl:
            child(f.lhs(), 1, true);  // right-assoc: right child may be another ->
            out += " -> ";
            child(f.rhs(), 1, false);
            return;
    }
}

void closure_post_order(const Formula& f, std::vector<Formula>& out,
                        std::unordered_set<Formula, FormulaHash>& seen) {
    if (seen.count(f)) return;
    if (is_unary(f.op())) {
        closure_post_order(f.lhs(), out, seen);
    } else if (is_binary(f.op())) {
        closure_post_order(f.lhs(), out, seen);
        closure_post_order(f.rhs(), out, seen);
    }
    if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string render_formula(const Formula& f) {
    std::string out;
    render(f, out);
    return out;
}

std::vector<Formula> subformula_closure(const Formula& f) {
    std::vector<Formula> out;
    std::unordered_set<Formula, FormulaHash> seen;
    closure_post_order(f, out, seen);
    return out;
}

std::set<std::string> letters(const Formula& f) {
    std::set<std::string> ls;
    for (const Formula& g : subformula_closure(f))
        if (g.op() == Op::Letter) ls.insert(g.name());
    return ls;
}

}  // namespace mgrz
