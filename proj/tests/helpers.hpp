#pragma once

#include <string>
#include <vector>

#include "mgrz/bundle.hpp"
#include "mgrz/frame.hpp"
#include "mgrz/model.hpp"
#include "mgrz/rng.hpp"

namespace mgrz::test {

inline MKFrame make_frame(int n, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<std::vector<int>>& blocks, bool reflexive = true) {
    MKFrame f;
    f.n = n;
    f.R = Relation(n);
    if (reflexive)
        for (int i = 0; i < n; ++i) f.R.set(i, i);
    for (auto [i, j] : edges) f.R.set(i, j);
    f.E = *Partition::from_blocks(n, blocks);
    return f;
}

inline WorldSet ws(int n, const std::vector<int>& members) {
    WorldSet s(n);
    for (int m : members) s.set(m);
    return s;
}

// 3-point Barcan countermodel: worlds x=0, y=1, z=2; R reflexive plus y->z;
// E-blocks {x,z},{y}.
inline MKFrame barcan_frame() { return make_frame(3, {{1, 2}}, {{0, 2}, {1}}); }

// The smax example frame: a=0, b=1 below, c=2, d=3 above; a->c, b->d,
// reflexive; E-blocks {a,b},{c,d}.
inline MKFrame paper4_frame() { return make_frame(4, {{0, 2}, {1, 3}}, {{0, 1}, {2, 3}}); }

// Two-point R-cluster: X = {a,b}, R = X^2, E identity (MS4, not MGrz).
inline MKFrame x2_frame() { return make_frame(2, {{0, 1}, {1, 0}}, {{0}, {1}}); }

// Reflexive 2-chain 0 < 1, E identity.
inline MKFrame two_chain() { return make_frame(2, {{0, 1}}, {{0}, {1}}); }

// The 2-point/1-world bundle: X = {a=0, b=1}, R = {(a,a),(b,b),(a,b)},
// X0 = {w}, R0 = {(w,w)}.
inline KripkeBundle sec2_bundle() {
    KripkeBundle b;
    b.total.n = 2;
    b.total.R = Relation(2);
    b.total.R.set(0, 0);
    b.total.R.set(1, 1);
    b.total.R.set(0, 1);
    b.base.n = 1;
    b.base.R = Relation(1);
    b.base.R.set(0, 0);
    b.pi = {0, 0};
    return b;
}

// Random finite MGrz frame: a random poset of E-blocks, random posets inside
// each block, and block-uniform cross edges (commutativity by construction).
inline MKFrame random_mgrz_frame(Rng& rng, int max_n) {
    int n = 1 + rng.below_int(max_n);
    // Random block sizes.
    std::vector<int> block_of(n);
    int blocks = 1 + rng.below_int(n);
    for (int i = 0; i < n; ++i) block_of[i] = rng.below_int(blocks);
    // Renumber so every block id occurs (Partition normalizes anyway).
    Partition part = Partition::from_block_ids(block_of);
    int k = part.block_count();
    for (int i = 0; i < n; ++i) block_of[i] = part.block_of(i);

    // Random strict order on blocks: b < c allowed only when b's id < c's.
    Relation block_lt(k);
    for (int b = 0; b < k; ++b)
        for (int c = b + 1; c < k; ++c)
            if (rng.chance(2)) block_lt.set(b, c);
    block_lt = block_lt.reflexive_transitive_closure();

    Relation r(n);
    for (int i = 0; i < n; ++i) r.set(i, i);
    // Within-block random posets: i -> j allowed only for i < j.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (block_of[i] == block_of[j] && rng.chance(3)) r.set(i, j);
    // Cross edges: when block b reaches c, every member of b gets at least
    // one successor in c (keeps the reachable block set uniform).
    for (int b = 0; b < k; ++b)
        for (int c = 0; c < k; ++c) {
            if (b == c || !block_lt.test(b, c)) continue;
            std::vector<int> members_c;
            for (int j = 0; j < n; ++j)
                if (block_of[j] == c) members_c.push_back(j);
            for (int i = 0; i < n; ++i) {
                if (block_of[i] != b) continue;
                bool any = false;
                for (int j : members_c)
                    if (rng.chance(2)) {
                        r.set(i, j);
                        any = true;
                    }
                if (!any) r.set(i, members_c[rng.below_int(int(members_c.size()))]);
            }
        }
    r = r.reflexive_transitive_closure();

    MKFrame f(n, r, Partition::from_block_ids(block_of));
    return f;
}

inline Valuation random_valuation(Rng& rng, int n, const std::vector<std::string>& letters) {
    Valuation v;
    for (const auto& l : letters) {
        WorldSet s(n);
        for (int w = 0; w < n; ++w)
            if (rng.chance(2)) s.set(w);
        v[l] = s;
    }
    return v;
}

// Random formula with at most `budget` AST nodes over the given letters.
inline Formula random_formula(Rng& rng, int budget, const std::vector<std::string>& letters) {
    if (budget <= 1) {
        switch (rng.below_int(6)) {
            case 0: return Formula::top();
            case 1: return Formula::bot();
            default: return Formula::letter(letters[rng.below_int(int(letters.size()))]);
        }
    }
    switch (rng.below_int(9)) {
        case 0: return Formula::not_(random_formula(rng, budget - 1, letters));
        case 1: return Formula::dia(random_formula(rng, budget - 1, letters));
        case 2: return Formula::box(random_formula(rng, budget - 1, letters));
        case 3: return Formula::ex(random_formula(rng, budget - 1, letters));
        case 4: return Formula::fa(random_formula(rng, budget - 1, letters));
        default: {
            int left = 1 + rng.below_int(budget - 2 > 0 ? budget - 2 : 1);
            Formula a = random_formula(rng, left, letters);
            Formula b = random_formula(rng, budget - 1 - left, letters);
            switch (rng.below_int(3)) {
                case 0: return Formula::and_(a, b);
                case 1: return Formula::or_(a, b);
                default: return Formula::impl(a, b);
            }
        }
    }
}

// All bundles with |X| = n (base canonically numbered): every relation on X
// and every canonical onto map pi that is a p-morphism onto an induced base.
inline void for_each_bundle(int n, const std::function<void(const KripkeBundle&)>& fn) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
        Relation r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if ((mask >> (i * n + j)) & 1) r.set(i, j);
        std::vector<int> pi(n, 0);
        std::function<void(int, int)> rec = [&](int i, int mx) {
            if (i == n) {
                int m = mx + 1;
                std::vector<WorldSet> img(m, WorldSet(m));
                std::vector<bool> seen(m, false);
                for (int x = 0; x < n; ++x) {
                    WorldSet im(m);
                    const WorldSet& succ = r.row(x);
                    for (int y = succ.first(); y >= 0; y = succ.next(y)) im.set(pi[y]);
                    if (!seen[pi[x]]) {
                        img[pi[x]] = im;
                        seen[pi[x]] = true;
                    } else if (!(img[pi[x]] == im)) {
                        return;  // not a p-morphism for any base
                    }
                }
                KripkeBundle b;
                b.total = KripkeFrame(n, r);
                b.base.n = m;
                b.base.R = Relation(m);
                for (int w = 0; w < m; ++w) b.base.R.row(w) = img[w];
                b.pi = pi;
                fn(b);
                return;
            }
            for (int v = 0; v <= mx + 1; ++v) {
                pi[i] = v;
                rec(i + 1, std::max(mx, v));
            }
        };
        rec(1, 0);
    }
}

// Straight-loop class conditions: the counting oracle, independent of the
// enumerator's optimized iteration.
inline bool oracle_frame_fits(FrameClass cls, const MKFrame& f) {
    int n = f.n;
    auto reflexive = [&] {
        for (int i = 0; i < n; ++i)
            if (!f.R.test(i, i)) return false;
        return true;
    };
    auto irreflexive = [&] {
        for (int i = 0; i < n; ++i)
            if (f.R.test(i, i)) return false;
        return true;
    };
    auto transitive = [&] {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (f.R.test(i, j) && f.R.test(j, k) && !f.R.test(i, k)) return false;
        return true;
    };
    auto antisymmetric = [&] {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && f.R.test(i, j) && f.R.test(j, i)) return false;
        return true;
    };
    auto commutative = [&] {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    if (!(f.E.same(x, y) && f.R.test(y, z))) continue;
                    bool ok = false;
                    for (int u = 0; u < n; ++u)
                        if (f.R.test(x, u) && f.E.same(u, z)) ok = true;
                    if (!ok) return false;
                }
        return true;
    };
    if (!commutative()) return false;
    switch (cls) {
        case FrameClass::MK: return true;
        case FrameClass::MS4: return reflexive() && transitive();
        case FrameClass::MGrz: return reflexive() && transitive() && antisymmetric();
        case FrameClass::GrzU: {
            if (!(reflexive() && transitive() && antisymmetric())) return false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (f.R.test(i, j) && !f.E.same(i, j)) return false;
            return true;
        }
        case FrameClass::MPlusGrz: {
            if (!(reflexive() && transitive() && antisymmetric())) return false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j && f.E.same(i, j) && f.R.test(i, j)) return false;
            return true;
        }
        case FrameClass::MGL: {
            if (!(irreflexive() && transitive())) return false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (f.E.same(i, j) && f.R.test(i, j)) return false;
            return true;
        }
    }
    return false;
}

// Fixed corpus used by the translation-equivalence and decision agreement
// checks; at most two letters per formula.
inline std::vector<std::string> formula_corpus() {
    return {
        "p",
        "~p",
        "p -> p",
        "<>p",
        "[]p -> p",
        "[]p -> [][]p",
        "E<>p -> <>Ep",
        "<>Ep -> E<>p",
        "p -> Ep",
        "EEp -> Ep",
        "Ep -> AEp",
        "[]([](p -> []p) -> p) -> p",
        "<>p & <>q -> <>(p & q)",
        "A(p -> q) -> (Ep -> Eq)",
        "<>(p | q) -> <>p | <>q",
        "E(p & q) -> Ep & Eq",
        "[]<>p -> <>[]p",
        "<>T",
        "[](p -> q) -> ([]p -> []q)",
        "<>q -> Eq",
    };
}

}  // namespace mgrz::test
