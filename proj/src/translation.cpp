#include "mgrz/translation.hpp"

namespace mgrz {

PredicateFormula PredicateFormula::make(Node n) {
    switch (n.op) {
        case POp::Pred: n.x_free = true; break;
        case POp::Top:
        case POp::Bot: n.x_free = false; break;
        case POp::ExX:
        case POp::FaX: n.x_free = false; break;  // binds x
        case POp::Not:
        case POp::Dia:
        case POp::Box: n.x_free = n.lhs.x_free(); break;
        default: n.x_free = n.lhs.x_free() || n.rhs.x_free(); break;
    }
    return PredicateFormula(std::make_shared<const Node>(std::move(n)));
}

PredicateFormula PredicateFormula::pred(std::string name) { return make(Node(POp::Pred, std::move(name))); }
PredicateFormula PredicateFormula::top() { return make(Node(POp::Top, std::string())); }
PredicateFormula PredicateFormula::bot() { return make(Node(POp::Bot, std::string())); }
PredicateFormula PredicateFormula::not_(PredicateFormula f) { return make(Node(POp::Not, std::move(f))); }
PredicateFormula PredicateFormula::and_(PredicateFormula a, PredicateFormula b) {
    return make(Node(POp::And, std::move(a), std::move(b)));
}
PredicateFormula PredicateFormula::or_(PredicateFormula a, PredicateFormula b) {
    return make(Node(POp::Or, std::move(a), std::move(b)));
}
PredicateFormula PredicateFormula::impl(PredicateFormula a, PredicateFormula b) {
    return make(Node(POp::Impl, std::move(a), std::move(b)));
}
PredicateFormula PredicateFormula::dia(PredicateFormula f) { return make(Node(POp::Dia, std::move(f))); }
PredicateFormula PredicateFormula::box(PredicateFormula f) { return make(Node(POp::Box, std::move(f))); }
PredicateFormula PredicateFormula::ex_x(PredicateFormula f) { return make(Node(POp::ExX, std::move(f))); }
PredicateFormula PredicateFormula::fa_x(PredicateFormula f) { return make(Node(POp::FaX, std::move(f))); }

bool PredicateFormula::operator==(const PredicateFormula& o) const {
    if (node_ == o.node_) return true;
    if (node_->op != o.node_->op) return false;
    switch (node_->op) {
        case POp::Pred: return node_->name == o.node_->name;
        case POp::Top:
        case POp::Bot: return true;
        case POp::And:
        case POp::Or:
        case POp::Impl: return lhs() == o.lhs() && rhs() == o.rhs();
        default: return lhs() == o.lhs();
    }
}

PredicateFormula translate_t(const Formula& f) {
    switch (f.op()) {
        case Op::Letter: return PredicateFormula::pred(f.name() + "*");
        case Op::Top: return PredicateFormula::top();
        case Op::Bot: return PredicateFormula::bot();
        case Op::Not: return PredicateFormula::not_(translate_t(f.lhs()));
        case Op::And: return PredicateFormula::and_(translate_t(f.lhs()), translate_t(f.rhs()));
        case Op::Or: return PredicateFormula::or_(translate_t(f.lhs()), translate_t(f.rhs()));
        case Op::Impl: return PredicateFormula::impl(translate_t(f.lhs()), translate_t(f.rhs()));
        case Op::Dia: return PredicateFormula::dia(translate_t(f.lhs()));
        case Op::Box: return PredicateFormula::box(translate_t(f.lhs()));
        case Op::Ex: return PredicateFormula::ex_x(translate_t(f.lhs()));
        case Op::Fa: return PredicateFormula::fa_x(translate_t(f.lhs()));
    }
    return PredicateFormula::top();
}

namespace {

int pprec(POp op) {
    switch (op) {
        case POp::Impl: return 1;
        case POp::Or: return 2;
        case POp::And: return 3;
        default: return 4;
    }
}

bool is_quantifier(POp op) { return op == POp::ExX || op == POp::FaX; }

void prender(const PredicateFormula& f, std::string& out) {
    auto child = [&](const PredicateFormula& c, int min_prec, bool strict) {
        bool paren = strict ? pprec(c.op()) <= min_prec : pprec(c.op()) < min_prec;
        if (paren) out += '(';
        prender(c, out);
        if (paren) out += ')';
    };
    // A quantifier immediately after a prefix token gets a separating space.
    auto unary_child = [&](const PredicateFormula& c) {
        if (is_quantifier(c.op())) out += ' ';
        child(c, 3, true);
    };
    switch (f.op()) {
        case POp::Pred: out += f.name() + "(x)"; return;
        case POp::Top: out += 'T'; return;
        case POp::Bot: out += 'F'; return;
        case POp::Not: out += '~'; unary_child(f.lhs()); return;
        case POp::Dia: out += "<>"; unary_child(f.lhs()); return;
        case POp::Box: out += "[]"; unary_child(f.lhs()); return;
        case POp::ExX: out += "Ex x. "; child(f.lhs(), 3, true); return;
        case POp::FaX: out += "Fa x. "; child(f.lhs(), 3, true); return;
        case POp::And: child(f.lhs(), 3, false); out += " & "; child(f.rhs(), 3, true); return;
        case POp::Or: child(f.lhs(), 2, false); out += " | "; child(f.rhs(), 2, true); return;
        case POp::Impl: child(f.lhs(), 1, true); out += " -> "; child(f.rhs(), 1, false); return;
    }
}

}  // namespace

std::string render_predicate(const PredicateFormula& f) {
    std::string out;
    prender(f, out);
    return out;
}

}  // namespace mgrz
