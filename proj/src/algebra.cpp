#include "mgrz/algebra.hpp"

#include "mgrz/errors.hpp"

namespace mgrz {

std::string algebra_class_name(AlgebraClass c) {
    switch (c) {
        case AlgebraClass::Modal: return "modal";
        case AlgebraClass::S4Dia: return "s4";
        case AlgebraClass::S5Ex: return "s5";
        case AlgebraClass::MM: return "mm";
        case AlgebraClass::GrzDia: return "grz";
    }
    return "?";
}

std::optional<AlgebraClass> algebra_class_from_name(const std::string& s) {
    for (AlgebraClass c : {AlgebraClass::Modal, AlgebraClass::S4Dia, AlgebraClass::S5Ex,
                           AlgebraClass::MM, AlgebraClass::GrzDia})
        if (algebra_class_name(c) == s) return c;
    return std::nullopt;
}

FiniteMMAlgebra clop_dual(const MKFrame& f) {
    if (f.n > kAlgebraAtomCap)
        throw BudgetError("clop_dual: frames above " + std::to_string(kAlgebraAtomCap) +
                          " worlds are not supported");
    FiniteMMAlgebra a;
    a.atoms = f.n;
    a.dia.resize(f.n);
    a.ex.resize(f.n);
    for (int w = 0; w < f.n; ++w) {
        std::uint32_t pre = 0, cls = 0;
        for (int x = 0; x < f.n; ++x) {
            if (f.R.test(x, w)) pre |= std::uint32_t{1} << x;
            if (f.E.same(x, w)) cls |= std::uint32_t{1} << x;
        }
        a.dia[w] = pre;
        a.ex[w] = cls;
    }
    return a;
}

MKFrame uf_dual(const FiniteMMAlgebra& a) {
    int n = a.atoms;
    // a E b iff atom a <= ex(b); an equivalence exactly when ex is S5.
    std::vector<int> ids(n, -1);
    bool equivalence = true;
    for (int b = 0; b < n && equivalence; ++b) {
        if (!((a.ex[b] >> b) & 1)) equivalence = false;  // not reflexive
    }
    if (equivalence) {
        for (int x = 0; x < n && equivalence; ++x)
            for (int y = 0; y < n && equivalence; ++y) {
                bool xy = (a.ex[y] >> x) & 1;
                bool yx = (a.ex[x] >> y) & 1;
                if (xy != yx) equivalence = false;  // not symmetric
                if (xy && a.ex[x] != a.ex[y]) equivalence = false;  // not transitive
            }
    }
    if (!equivalence) {
        AlgebraReport s5 = check_axioms(a, AlgebraClass::S5Ex);
        std::string why = "uf_dual: derived E is not an equivalence (ex is not an S5 operator";
        for (const auto& ax : s5.axioms)
            if (!ax.holds) why += "; fails " + ax.axiom;
        why += ")";
        throw InputError(why);
    }
    for (int b = 0; b < n; ++b) {
        int rep = b;
        for (int x = 0; x < b; ++x)
            if ((a.ex[b] >> x) & 1) {
                rep = ids[x];
                break;
            }
        ids[b] = rep;
    }

    MKFrame f;
    f.n = n;
    f.R = Relation(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if ((a.dia[y] >> x) & 1) f.R.set(x, y);  // x <= dia(y)
    f.E = Partition::from_block_ids(ids);
    return f;
}

namespace {

void atom_axiom(AlgebraReport& rep, const FiniteMMAlgebra& a, const std::string& name,
                bool (*pred)(const FiniteMMAlgebra&, std::uint32_t)) {
    AxiomResult r{name, true, std::nullopt};
    for (int at = 0; at < a.atoms; ++at) {
        std::uint32_t e = std::uint32_t{1} << at;
        if (!pred(a, e)) {
            r.holds = false;
            r.witness = e;
            break;
        }
    }
    rep.pass = rep.pass && r.holds;
    rep.axioms.push_back(std::move(r));
}

void element_axiom(AlgebraReport& rep, const FiniteMMAlgebra& a, const std::string& name,
                   bool (*pred)(const FiniteMMAlgebra&, std::uint32_t)) {
    AxiomResult r{name, true, std::nullopt};
    std::uint64_t total = std::uint64_t{1} << a.atoms;
    for (std::uint64_t e = 0; e < total; ++e) {
        if (!pred(a, std::uint32_t(e))) {
            r.holds = false;
            r.witness = std::uint32_t(e);
            break;
        }
    }
    rep.pass = rep.pass && r.holds;
    rep.axioms.push_back(std::move(r));
}

bool leq(std::uint32_t x, std::uint32_t y) { return (x & ~y) == 0; }

bool refl_dia(const FiniteMMAlgebra& a, std::uint32_t e) { return leq(e, a.dia_of(e)); }
bool trans_dia(const FiniteMMAlgebra& a, std::uint32_t e) {
    return leq(a.dia_of(a.dia_of(e)), a.dia_of(e));
}
bool refl_ex(const FiniteMMAlgebra& a, std::uint32_t e) { return leq(e, a.ex_of(e)); }
bool trans_ex(const FiniteMMAlgebra& a, std::uint32_t e) {
    return leq(a.ex_of(a.ex_of(e)), a.ex_of(e));
}
bool b_ex(const FiniteMMAlgebra& a, std::uint32_t e) {
    // a <= ~ex ~ex a
    std::uint32_t u = a.universe();
    return leq(e, u & ~a.ex_of(u & ~a.ex_of(e)));
}
bool connecting(const FiniteMMAlgebra& a, std::uint32_t e) {
    return leq(a.ex_of(a.dia_of(e)), a.dia_of(a.ex_of(e)));
}
bool grz_dia(const FiniteMMAlgebra& a, std::uint32_t e) {
    // a <= dia(a & ~dia(dia a & ~a))
    std::uint32_t u = a.universe();
    std::uint32_t inner = a.dia_of(a.dia_of(e) & (u & ~e));
    return leq(e, a.dia_of(e & (u & ~inner)));
}

}  // namespace

AlgebraReport check_axioms(const FiniteMMAlgebra& a, AlgebraClass cls, int atom_cap) {
    if (a.atoms > atom_cap)
        throw BudgetError("check_axioms: element scans capped at " + std::to_string(atom_cap) +
                          " atoms");
    for (auto img : a.dia)
        if (img & ~a.universe()) throw InputError("check_axioms: dia image out of range");
    for (auto img : a.ex)
        if (img & ~a.universe()) throw InputError("check_axioms: ex image out of range");

    AlgebraReport rep;
    switch (cls) {
        case AlgebraClass::Modal:
            // Join preservation and normality hold by the atom-image
            // representation; record them as checked.
            rep.axioms.push_back({"dia preserves joins", true, std::nullopt});
            rep.axioms.push_back({"ex preserves joins", true, std::nullopt});
            break;
        case AlgebraClass::S4Dia:
            atom_axiom(rep, a, "a <= <>a", refl_dia);
            atom_axiom(rep, a, "<><>a <= <>a", trans_dia);
            break;
        case AlgebraClass::S5Ex:
            atom_axiom(rep, a, "a <= Ea", refl_ex);
            atom_axiom(rep, a, "EEa <= Ea", trans_ex);
            element_axiom(rep, a, "a <= ~E~Ea", b_ex);
            break;
        case AlgebraClass::MM: {
            AlgebraReport s5 = check_axioms(a, AlgebraClass::S5Ex, atom_cap);
            rep.axioms = std::move(s5.axioms);
            rep.pass = s5.pass;
            atom_axiom(rep, a, "E<>a <= <>Ea", connecting);
            break;
        }
        case AlgebraClass::GrzDia: {
            AlgebraReport s4 = check_axioms(a, AlgebraClass::S4Dia, atom_cap);
            rep.axioms = std::move(s4.axioms);
            rep.pass = s4.pass;
            element_axiom(rep, a, "a <= <>(a & ~<>(<>a & ~a))", grz_dia);
            break;
        }
    }
    return rep;
}

}  // namespace mgrz
