#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgrz/frame.hpp"

namespace mgrz {

// Finite monadic modal algebra: the powerset of `atoms` atoms, with two
// join-preserving operators given by their atom images (as atom bitmasks).
// Elements throughout are atom bitmasks.
struct FiniteMMAlgebra {
    int atoms = 0;
    std::vector<std::uint32_t> dia;  // dia[a] = image of atom a
    std::vector<std::uint32_t> ex;

    std::uint32_t universe() const { return (atoms >= 32) ? 0 : (std::uint32_t{1} << atoms) - 1; }
    std::uint32_t dia_of(std::uint32_t elem) const { return apply(dia, elem); }
    std::uint32_t ex_of(std::uint32_t elem) const { return apply(ex, elem); }

    bool operator==(const FiniteMMAlgebra&) const = default;

private:
    std::uint32_t apply(const std::vector<std::uint32_t>& op, std::uint32_t elem) const {
        std::uint32_t r = 0;
        for (int a = 0; a < atoms; ++a)
            if ((elem >> a) & 1) r |= op[a];
        return r;
    }
};

inline constexpr int kAlgebraAtomCap = 16;  // element scans cover 2^atoms

enum class AlgebraClass { Modal, S4Dia, S5Ex, MM, GrzDia };

std::string algebra_class_name(AlgebraClass c);
std::optional<AlgebraClass> algebra_class_from_name(const std::string& s);

struct AxiomResult {
    std::string axiom;
    bool holds = true;
    std::optional<std::uint32_t> witness;  // failing element
};

struct AlgebraReport {
    bool pass = true;
    std::vector<AxiomResult> axioms;
};

// Atoms = worlds; dia(w) = R^{-1}[{w}], ex(w) = E[{w}].
FiniteMMAlgebra clop_dual(const MKFrame& f);

// Worlds = atoms; a R b iff a <= dia(b); a E b iff a <= ex(b).
// Throws InputError (with the failing S5 axiom) when E is not an equivalence.
MKFrame uf_dual(const FiniteMMAlgebra& a);

// Evaluates the class's inequalities for every atom (join-stable axioms) or
// every element (the rest), up to `atom_cap` atoms (BudgetError beyond).
AlgebraReport check_axioms(const FiniteMMAlgebra& a, AlgebraClass cls, int atom_cap = kAlgebraAtomCap);

}  // namespace mgrz
