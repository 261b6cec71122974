#pragma once

#include <memory>
#include <string>

#include "mgrz/formula.hpp"

namespace mgrz {

enum class POp { Pred, Top, Bot, Not, And, Or, Impl, Dia, Box, ExX, FaX };

// Monadic predicate formula over the single individual variable x.
// Predicate names are `<letter>*`; every quantifier binds x.
class PredicateFormula {
public:
    static PredicateFormula pred(std::string name);
    static PredicateFormula top();
    static PredicateFormula bot();
    static PredicateFormula not_(PredicateFormula f);
    static PredicateFormula and_(PredicateFormula a, PredicateFormula b);
    static PredicateFormula or_(PredicateFormula a, PredicateFormula b);
    static PredicateFormula impl(PredicateFormula a, PredicateFormula b);
    static PredicateFormula dia(PredicateFormula f);
    static PredicateFormula box(PredicateFormula f);
    static PredicateFormula ex_x(PredicateFormula f);
    static PredicateFormula fa_x(PredicateFormula f);

    POp op() const;
    const std::string& name() const;
    const PredicateFormula& lhs() const;
    const PredicateFormula& rhs() const;

    // Whether x occurs free (a Pred node not under any quantifier).
    bool x_free() const;

    bool operator==(const PredicateFormula& o) const;
    bool operator!=(const PredicateFormula& o) const { return !(*this == o); }

private:
    struct Node;
    struct Empty {};
    explicit PredicateFormula(Empty) {}  // empty child slot inside Node
    explicit PredicateFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static PredicateFormula make(Node n);

    std::shared_ptr<const Node> node_;
};

struct PredicateFormula::Node {
    POp op;
    std::string name;
    PredicateFormula lhs, rhs;
    bool x_free = false;
    Node(POp o, std::string nm) : op(o), name(std::move(nm)), lhs(Empty{}), rhs(Empty{}) {}
    Node(POp o, PredicateFormula l) : op(o), lhs(std::move(l)), rhs(Empty{}) {}
    Node(POp o, PredicateFormula l, PredicateFormula r)
        : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
};

inline POp PredicateFormula::op() const { return node_->op; }
inline const std::string& PredicateFormula::name() const { return node_->name; }
inline const PredicateFormula& PredicateFormula::lhs() const { return node_->lhs; }
inline const PredicateFormula& PredicateFormula::rhs() const { return node_->rhs; }
inline bool PredicateFormula::x_free() const { return node_->x_free; }

// The standard translation: p |-> p*(x), homomorphic on connectives,
// E |-> Ex x, A |-> Fa x. The result has at most x free.
PredicateFormula translate_t(const Formula& f);

// e.g. Impl(ExX(Dia p*), Dia(ExX p*)) -> "Ex x. <>p*(x) -> <> Ex x. p*(x)"
std::string render_predicate(const PredicateFormula& f);

}  // namespace mgrz
