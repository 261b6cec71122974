#include "mgrz/frame.hpp"

#include <algorithm>

#include "mgrz/errors.hpp"

namespace mgrz {

Relation q_relation(const MKFrame& f) { return f.R.then(f.E.as_relation()); }

const ClassEntry& report_entry(const FrameClassReport& r, FrameClass c) {
    switch (c) {
        case FrameClass::MK: return r.mk;
        case FrameClass::MS4: return r.ms4;
        case FrameClass::MGrz: return r.mgrz;
        case FrameClass::GrzU: return r.grz_u;
        case FrameClass::MPlusGrz: return r.m_plus_grz;
        case FrameClass::MGL: return r.mgl;
    }
    return r.mk;
}

std::string frame_class_name(FrameClass c) {
    switch (c) {
        case FrameClass::MK: return "mk";
        case FrameClass::MS4: return "ms4";
        case FrameClass::MGrz: return "mgrz";
        case FrameClass::GrzU: return "grz_u";
        case FrameClass::MPlusGrz: return "m_plus_grz";
        case FrameClass::MGL: return "mgl";
    }
    return "?";
}

std::optional<FrameClass> frame_class_from_name(const std::string& s) {
    for (FrameClass c : {FrameClass::MK, FrameClass::MS4, FrameClass::MGrz, FrameClass::GrzU,
                         FrameClass::MPlusGrz, FrameClass::MGL})
        if (frame_class_name(c) == s) return c;
    if (s == "grzu") return FrameClass::GrzU;
    if (s == "mplusgrz" || s == "m+grz") return FrameClass::MPlusGrz;
    return std::nullopt;
}

namespace {

// First lexicographic triple (x,y,z) with x E y, y R z and no u: x R u, u E z.
std::optional<Violation> commutativity_witness(const MKFrame& f) {
    for (int x = 0; x < f.n; ++x)
        for (int y = 0; y < f.n; ++y) {
            if (!f.E.same(x, y)) continue;
            const WorldSet& succ = f.R.row(y);
            for (int z = succ.first(); z >= 0; z = succ.next(z))
                if (!f.R.row(x).intersects(f.E.class_of(z)))
                    return Violation{"commutativity", {x, y, z}};
        }
    return std::nullopt;
}

// First (x,z,y) with x R z, z E y and no u: x E u, u R y  (E∘R ⊄ R∘E).
std::optional<Violation> barcan_witness(const MKFrame& f) {
    for (int x = 0; x < f.n; ++x) {
        const WorldSet& succ = f.R.row(x);
        for (int z = succ.first(); z >= 0; z = succ.next(z)) {
            const WorldSet& cls = f.E.class_of(z);
            for (int y = cls.first(); y >= 0; y = cls.next(y)) {
                bool ok = false;
                const WorldSet& mates = f.E.class_of(x);
                for (int u = mates.first(); u >= 0 && !ok; u = mates.next(u))
                    if (f.R.test(u, y)) ok = true;
                if (!ok) return Violation{"barcan", {x, z, y}};
            }
        }
    }
    return std::nullopt;
}

std::optional<Violation> reflexivity_witness(const Relation& r) {
    for (int x = 0; x < r.size(); ++x)
        if (!r.test(x, x)) return Violation{"reflexive", {x}};
    return std::nullopt;
}

std::optional<Violation> irreflexivity_witness(const Relation& r) {
    for (int x = 0; x < r.size(); ++x)
        if (r.test(x, x)) return Violation{"irreflexive", {x}};
    return std::nullopt;
}

std::optional<Violation> transitivity_witness(const Relation& r) {
    for (int x = 0; x < r.size(); ++x)
        for (int y = 0; y < r.size(); ++y) {
            if (!r.test(x, y)) continue;
            for (int z = 0; z < r.size(); ++z)
                if (r.test(y, z) && !r.test(x, z)) return Violation{"transitive", {x, y, z}};
        }
    return std::nullopt;
}

std::optional<Violation> antisymmetry_witness(const Relation& r) {
    for (int x = 0; x < r.size(); ++x)
        for (int y = x + 1; y < r.size(); ++y)
            if (r.test(x, y) && r.test(y, x)) return Violation{"antisymmetric", {x, y}};
    return std::nullopt;
}

std::optional<Violation> r_subset_e_witness(const MKFrame& f) {
    for (int x = 0; x < f.n; ++x)
        for (int y = 0; y < f.n; ++y)
            if (f.R.test(x, y) && !f.E.same(x, y)) return Violation{"r_subset_e", {x, y}};
    return std::nullopt;
}

std::optional<Violation> e_r_discrete_witness(const MKFrame& f) {
    for (int x = 0; x < f.n; ++x)
        for (int y = 0; y < f.n; ++y)
            if (x != y && f.E.same(x, y) && f.R.test(x, y))
                return Violation{"e_and_r_implies_equal", {x, y}};
    return std::nullopt;
}

std::optional<Violation> e_disjoint_r_witness(const MKFrame& f) {
    for (int x = 0; x < f.n; ++x)
        for (int y = 0; y < f.n; ++y)
            if (f.E.same(x, y) && f.R.test(x, y)) return Violation{"e_implies_not_r", {x, y}};
    return std::nullopt;
}

void note(ClassEntry& e, const std::optional<Violation>& v) {
    if (v) {
        e.holds = false;
        e.witnesses.push_back(*v);
    }
}

void inherit(ClassEntry& e, const ClassEntry& base) {
    if (!base.holds) {
        e.holds = false;
        e.witnesses.insert(e.witnesses.end(), base.witnesses.begin(), base.witnesses.end());
    }
}

}  // namespace

FrameClassReport validate_mk(const MKFrame& f) {
    FrameClassReport r;
    note(r.mk, commutativity_witness(f));
    return r;
}

FrameClassReport classify(const MKFrame& f) {
    FrameClassReport r;
    note(r.mk, commutativity_witness(f));

    auto refl = reflexivity_witness(f.R);
    auto trans = transitivity_witness(f.R);
    auto antisym = antisymmetry_witness(f.R);

    inherit(r.ms4, r.mk);
    note(r.ms4, refl);
    note(r.ms4, trans);

    inherit(r.mgrz, r.ms4);
    note(r.mgrz, antisym);

    inherit(r.grz_u, r.mgrz);
    note(r.grz_u, r_subset_e_witness(f));

    // Barcan is the bare frame condition E∘R = R∘E; one inclusion is the MK
    // commutativity, the other has its own witness shape.
    inherit(r.barcan, r.mk);
    note(r.barcan, barcan_witness(f));

    inherit(r.m_plus_grz, r.mk);
    note(r.m_plus_grz, refl);
    note(r.m_plus_grz, trans);
    note(r.m_plus_grz, antisym);
    note(r.m_plus_grz, e_r_discrete_witness(f));

    inherit(r.mgl, r.mk);
    note(r.mgl, irreflexivity_witness(f.R));
    note(r.mgl, transitivity_witness(f.R));
    note(r.mgl, e_disjoint_r_witness(f));

    return r;
}

bool replay_violation(const MKFrame& f, const Violation& v) {
    const auto& w = v.worlds;
    if (v.condition == "commutativity" && w.size() == 3) {
        return f.E.same(w[0], w[1]) && f.R.test(w[1], w[2]) &&
               !f.R.row(w[0]).intersects(f.E.class_of(w[2]));
    }
    if (v.condition == "barcan" && w.size() == 3) {
        if (!(f.R.test(w[0], w[1]) && f.E.same(w[1], w[2]))) return false;
        const WorldSet& mates = f.E.class_of(w[0]);
        for (int u = mates.first(); u >= 0; u = mates.next(u))
            if (f.R.test(u, w[2])) return false;
        return true;
    }
    if (v.condition == "reflexive" && w.size() == 1) return !f.R.test(w[0], w[0]);
    if (v.condition == "irreflexive" && w.size() == 1) return f.R.test(w[0], w[0]);
    if (v.condition == "transitive" && w.size() == 3)
        return f.R.test(w[0], w[1]) && f.R.test(w[1], w[2]) && !f.R.test(w[0], w[2]);
    if (v.condition == "antisymmetric" && w.size() == 2)
        return w[0] != w[1] && f.R.test(w[0], w[1]) && f.R.test(w[1], w[0]);
    if (v.condition == "r_subset_e" && w.size() == 2)
        return f.R.test(w[0], w[1]) && !f.E.same(w[0], w[1]);
    if (v.condition == "e_and_r_implies_equal" && w.size() == 2)
        return w[0] != w[1] && f.E.same(w[0], w[1]) && f.R.test(w[0], w[1]);
    if (v.condition == "e_implies_not_r" && w.size() == 2)
        return f.E.same(w[0], w[1]) && f.R.test(w[0], w[1]);
    return false;
}

Skeleton e_skeleton(const MKFrame& f) {
    if (!validate_mk(f).mk.holds) throw InputError("e_skeleton: frame is not an MK-frame");
    Relation q = q_relation(f);
    int m = f.E.block_count();
    Skeleton s;
    s.base.n = m;
    s.base.R = Relation(m);
    s.block_of.resize(f.n);
    for (int w = 0; w < f.n; ++w) s.block_of[w] = f.E.block_of(w);
    for (int x = 0; x < f.n; ++x)
        for (int y = 0; y < f.n; ++y)
            if (q.test(x, y)) s.base.R.set(f.E.block_of(x), f.E.block_of(y));
    return s;
}

WorldSet max_set(const MKFrame& f, const WorldSet& u) {
    WorldSet r(f.n);
    for (int x = u.first(); x >= 0; x = u.next(x)) {
        WorldSet succ_in_u = f.R.row(x) & u;
        succ_in_u.reset(x);
        if (succ_in_u.none()) r.set(x);
    }
    return r;
}

WorldSet qmax_set(const MKFrame& f, const WorldSet& u) {
    WorldSet r(f.n);
    for (int x = u.first(); x >= 0; x = u.next(x)) {
        bool ok = true;
        WorldSet succ_in_u = f.R.row(x) & u;
        for (int y = succ_in_u.first(); y >= 0 && ok; y = succ_in_u.next(y))
            if (!f.R.test(y, x)) ok = false;
        if (ok) r.set(x);
    }
    return r;
}

WorldSet smax_set(const MKFrame& f, const WorldSet& u) {
    Relation q = q_relation(f);
    WorldSet mx = max_set(f, u);
    WorldSet r(f.n);
    for (int x = mx.first(); x >= 0; x = mx.next(x)) {
        // x Q y and y in U must imply x E y.
        WorldSet bad = (q.row(x) & u).minus(f.E.class_of(x));
        if (bad.none()) r.set(x);
    }
    return r;
}

WorldSet passive_set(const MKFrame& f, const WorldSet& u) {
    WorldSet outside = ~u;
    WorldSet r(f.n);
    for (int x = u.first(); x >= 0; x = u.next(x)) {
        // active: x R y R z with y outside U, z in U
        WorldSet mid = f.R.row(x) & outside;
        bool active = false;
        for (int y = mid.first(); y >= 0 && !active; y = mid.next(y))
            if (f.R.row(y).intersects(u)) active = true;
        if (!active) r.set(x);
    }
    return r;
}

Partition eq_clusters(const MKFrame& f) {
    // Mutual Q-reachability; on preordered frames this is Q[x] ∩ Q^{-1}[x].
    Relation q = q_relation(f).reflexive_transitive_closure();
    std::vector<int> ids(f.n);
    for (int x = 0; x < f.n; ++x) {
        int rep = x;
        for (int y = 0; y < x; ++y)
            if (q.test(x, y) && q.test(y, x)) {
                rep = ids[y];
                break;
            }
        ids[x] = rep;
    }
    return Partition::from_block_ids(ids);
}

FineEsakiaReport fine_esakia_check(const MKFrame& f, bool exhaustive, int cap) {
    FrameClassReport cls = classify(f);
    if (!cls.ms4.holds) throw InputError("fine_esakia_check: frame is not an MS4-frame");

    FineEsakiaReport rep;
    rep.antisymmetry_pass = f.R.is_antisymmetric();
    if (exhaustive) {
        if (f.n > cap)
            throw BudgetError("fine_esakia_check: exhaustive mode capped at " + std::to_string(cap) +
                              " worlds");
        rep.exhaustive_ran = true;
        rep.exhaustive_pass = true;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.n) && rep.exhaustive_pass; ++mask) {
            WorldSet u(f.n);
            for (int i = 0; i < f.n; ++i)
                if ((mask >> i) & 1) u.set(i);
            WorldSet mx = max_set(f, u);
            if (!(mx == qmax_set(f, u))) {
                rep.exhaustive_pass = false;
                rep.failing_u = u;
                rep.failing_condition = "max = qmax";
                WorldSet diff = qmax_set(f, u).minus(mx);
                rep.failing_x = diff.first();
                break;
            }
            // Fine-Esakia principle: R[x] meets max U for every x in U.
            for (int x = u.first(); x >= 0; x = u.next(x))
                if (!f.R.row(x).intersects(mx)) {
                    rep.exhaustive_pass = false;
                    rep.failing_u = u;
                    rep.failing_x = x;
                    rep.failing_condition = "R[x] meets max U";
                    break;
                }
        }
        rep.agree = rep.exhaustive_pass == rep.antisymmetry_pass;
    }
    return rep;
}

bool smax_theorem_check(const MKFrame& f, const WorldSet& u) {
    if (!classify(f).mgrz.holds) throw InputError("smax_theorem_check: frame is not an MGrz-frame");
    Relation q = q_relation(f);
    WorldSet sm = smax_set(f, u);
    for (int x = u.first(); x >= 0; x = u.next(x))
        if (!q.row(x).intersects(sm)) return false;
    return true;
}

int longest_chain(const Relation& r, const WorldSet& within) {
    // Longest path in the strict part, measured in elements. Assumes a poset.
    int n = r.size();
    std::vector<int> memo(n, 0);
    std::vector<int> order = within.members();
    // Repeated relaxation; n is tiny and the strict part is acyclic.
    bool changed = true;
    for (int x : order) memo[x] = 1;
    while (changed) {
        changed = false;
        for (int x : order)
            for (int y : order)
                if (x != y && r.test(x, y) && memo[x] + 1 > memo[y] && !r.test(y, x)) {
                    memo[y] = memo[x] + 1;
                    changed = true;
                }
    }
    int best = 0;
    for (int x : order) best = std::max(best, memo[x]);
    return best;
}

}  // namespace mgrz
