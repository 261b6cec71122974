#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace mgrz {

enum class Op {
    Letter,
    Top,
    Bot,
    Not,
    And,
    Or,
    Impl,
    Dia,  // <>
    Box,  // []
    Ex,   // E
    Fa,   // A
};

inline bool is_binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Impl; }
inline bool is_unary(Op op) {
    return op == Op::Not || op == Op::Dia || op == Op::Box || op == Op::Ex || op == Op::Fa;
}

// Immutable formula of the bimodal language. Value type; children are shared.
// Structural equality; derived connectives are first-class nodes.
class Formula {
public:
    Formula();

    static Formula letter(std::string name);
    static Formula top();
    static Formula bot();
    static Formula not_(Formula f);
    static Formula and_(Formula a, Formula b);
    static Formula or_(Formula a, Formula b);
    static Formula impl(Formula a, Formula b);
    static Formula dia(Formula f);
    static Formula box(Formula f);
    static Formula ex(Formula f);
    static Formula fa(Formula f);

    Op op() const;
    const std::string& name() const;  // Letter only
    const Formula& lhs() const;       // unary operand or left child
    const Formula& rhs() const;

    std::size_t hash() const;
    bool operator==(const Formula& o) const;
    bool operator!=(const Formula& o) const { return !(*this == o); }

    int node_count() const;

private:
    struct Node;
    struct Empty {};
    explicit Formula(Empty) {}  // empty child slot inside Node
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Node n);

    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Op op;
    std::string name;
    Formula lhs, rhs;
    std::size_t hash = 0;
    Node(Op o, std::string nm) : op(o), name(std::move(nm)), lhs(Empty{}), rhs(Empty{}) {}
    Node(Op o, Formula l) : op(o), lhs(std::move(l)), rhs(Empty{}) {}
    Node(Op o, Formula l, Formula r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
};

inline Op Formula::op() const { return node_->op; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Formula& Formula::lhs() const { return node_->lhs; }
inline const Formula& Formula::rhs() const { return node_->rhs; }
inline std::size_t Formula::hash() const { return node_->hash; }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Parses the ASCII grammar: unary ~ <> [] E A, constants T F, binary & | ->
// (precedence unary > & > | > ->, -> right-associative, & and | left-
// associative), parentheses, letters [a-z][a-z0-9_]*.
// Throws ParseError with byte offset and expected-token set.
Formula parse_formula(const std::string& text);

// Minimal-parentheses rendering; parse_formula(render_formula(f)) == f.
std::string render_formula(const Formula& f);

// Sub(f): deduplicated, in post-order of first occurrence; contains f last.
std::vector<Formula> subformula_closure(const Formula& f);

// Letters occurring in f, sorted.
std::set<std::string> letters(const Formula& f);

}  // namespace mgrz
