#include "mgrz/bundle.hpp"

#include "mgrz/errors.hpp"

namespace mgrz {

std::optional<std::string> bundle_invariant_violation(const KripkeBundle& b) {
    if (int(b.pi.size()) != b.total.n) return "pi size differs from total world count";
    for (int x = 0; x < b.total.n; ++x)
        if (b.pi[x] < 0 || b.pi[x] >= b.base.n) return "pi maps outside the base";
    std::vector<bool> hit(b.base.n, false);
    for (int x = 0; x < b.total.n; ++x) hit[b.pi[x]] = true;
    for (int w = 0; w < b.base.n; ++w)
        if (!hit[w]) return "pi is not onto (base world " + std::to_string(w) + " uncovered)";
    // p-morphism: pi(R[x]) = R0[pi(x)] for each x.
    for (int x = 0; x < b.total.n; ++x) {
        WorldSet img(b.base.n);
        const WorldSet& succ = b.total.R.row(x);
        for (int y = succ.first(); y >= 0; y = succ.next(y)) img.set(b.pi[y]);
        if (!(img == b.base.R.row(b.pi[x])))
            return "pi is not a p-morphism at total world " + std::to_string(x);
    }
    return std::nullopt;
}

void validate_bundle(const KripkeBundle& b) {
    if (auto why = bundle_invariant_violation(b)) throw InputError("invalid bundle: " + *why);
}

KripkeBundle bundle_of_frame(const MKFrame& f) {
    Skeleton s = e_skeleton(f);  // rejects non-MK frames
    KripkeBundle b;
    b.total = KripkeFrame(f.n, f.R);
    b.base = s.base;
    b.pi = s.block_of;
    if (auto why = bundle_invariant_violation(b))
        throw InvariantError("bundle_of_frame produced an invalid bundle: " + *why);
    return b;
}

MKFrame frame_of_bundle(const KripkeBundle& b) {
    validate_bundle(b);
    MKFrame f;
    f.n = b.total.n;
    f.R = b.total.R;
    f.E = Partition::from_block_ids(b.pi);
    if (!validate_mk(f).mk.holds)
        throw InvariantError("frame_of_bundle: commutativity failed despite a valid bundle");
    return f;
}

namespace {

bool is_p_morphism(const KripkeFrame& a, const KripkeFrame& b, const std::vector<int>& f,
                   std::vector<int>& witness) {
    for (int x = 0; x < a.n; ++x) {
        WorldSet img(b.n);
        const WorldSet& succ = a.R.row(x);
        for (int y = succ.first(); y >= 0; y = succ.next(y)) img.set(f[y]);
        if (!(img == b.R.row(f[x]))) {
            witness = {x};
            return false;
        }
    }
    return true;
}

}  // namespace

MorphismReport check_bundle_morphism(const KripkeBundle& b, const KripkeBundle& b2,
                                     const std::vector<int>& f, const std::vector<int>& g) {
    MorphismReport rep;
    std::vector<int> w;
    if (int(f.size()) != b.total.n || int(g.size()) != b.base.n)
        throw InputError("check_bundle_morphism: map sizes do not match the bundles");
    for (int x : f)
        if (x < 0 || x >= b2.total.n) throw InputError("check_bundle_morphism: f out of range");
    for (int x : g)
        if (x < 0 || x >= b2.base.n) throw InputError("check_bundle_morphism: g out of range");

    if (!is_p_morphism(b.total, b2.total, f, w)) {
        rep.total_p_morphism = false;
        rep.witnesses.push_back({"f p-morphism", w});
    }
    if (!is_p_morphism(b.base, b2.base, g, w)) {
        rep.base_p_morphism = false;
        rep.witnesses.push_back({"g p-morphism", w});
    }
    for (int x = 0; x < b.total.n; ++x)
        if (g[b.pi[x]] != b2.pi[f[x]]) {
            rep.square_commutes = false;
            rep.witnesses.push_back({"square", {x}});
            break;
        }
    for (int wld = 0; wld < b.base.n && rep.square_commutes; ++wld) {
        WorldSet target = b2.fiber(g[wld]);
        WorldSet image(b2.total.n);
        WorldSet src = b.fiber(wld);
        for (int x = src.first(); x >= 0; x = src.next(x)) image.set(f[x]);
        if (!target.subset_of(image)) {
            rep.fiberwise_onto = false;
            rep.witnesses.push_back({"fiberwise surjection", {wld, target.minus(image).first()}});
            break;
        }
    }
    return rep;
}

RoundTripReport roundtrip_iso_check(const MKFrame& f) {
    RoundTripReport rep;
    MKFrame back = frame_of_bundle(bundle_of_frame(f));
    if (back.n != f.n) {
        rep.ok = false;
        rep.detail = "carrier changed";
    } else if (!(back.R == f.R)) {
        rep.ok = false;
        rep.detail = "R changed";
    } else if (!(back.E == f.E)) {
        rep.ok = false;
        rep.detail = "E changed";
    }
    return rep;
}

RoundTripReport roundtrip_iso_check(const KripkeBundle& b) {
    RoundTripReport rep;
    validate_bundle(b);
    KripkeBundle round = bundle_of_frame(frame_of_bundle(b));

    // epsilon = (id, p0), p0(w) = the block of the fiber pi^{-1}(w).
    if (!(round.total == b.total)) {
        rep.ok = false;
        rep.detail = "total frame changed";
        return rep;
    }
    std::vector<int> p0(b.base.n, -1);
    for (int x = 0; x < b.total.n; ++x) {
        int w = b.pi[x];
        if (p0[w] == -1) p0[w] = round.pi[x];
        if (p0[w] != round.pi[x]) {
            rep.ok = false;
            rep.detail = "p0 is not well defined";
            return rep;
        }
    }
    // bijection
    std::vector<int> seen(round.base.n, 0);
    for (int w = 0; w < b.base.n; ++w) {
        if (p0[w] < 0 || seen[p0[w]]++) {
            rep.ok = false;
            rep.detail = "p0 is not a bijection";
            return rep;
        }
    }
    if (round.base.n != b.base.n) {
        rep.ok = false;
        rep.detail = "base cardinality changed";
        return rep;
    }
    // preserves and reflects the base relation
    for (int v = 0; v < b.base.n; ++v)
        for (int w = 0; w < b.base.n; ++w)
            if (b.base.R.test(v, w) != round.base.R.test(p0[v], p0[w])) {
                rep.ok = false;
                rep.detail = "p0 does not preserve/reflect R0";
                return rep;
            }
    // square: p0(pi(x)) = pi_X(x)
    for (int x = 0; x < b.total.n; ++x)
        if (p0[b.pi[x]] != round.pi[x]) {
            rep.ok = false;
            rep.detail = "epsilon square does not commute";
            return rep;
        }
    return rep;
}

LevelFrame::LevelFrame(const KripkeBundle& b, int level, long long tuple_budget)
    : base_(b.base), total_(b.total), level_(level) {
    if (level < 0) throw InputError("nth_level: negative level");
    if (level == 0) {
        count_ = base_.n;
        return;
    }
    long long c = 1;
    for (int i = 0; i < level; ++i) {
        c *= total_.n;
        if (c > tuple_budget)
            throw BudgetError("nth_level: |X|^" + std::to_string(level) + " exceeds tuple budget of " +
                              std::to_string(tuple_budget));
    }
    count_ = c;
}

std::vector<int> LevelFrame::tuple(long long idx) const {
    std::vector<int> t(level_);
    for (int i = level_ - 1; i >= 0; --i) {
        t[i] = int(idx % total_.n);
        idx /= total_.n;
    }
    return t;
}

bool LevelFrame::related(long long i, long long j) const {
    if (level_ == 0) return base_.R.test(int(i), int(j));
    std::vector<int> x = tuple(i), y = tuple(j);
    for (int k = 0; k < level_; ++k)
        if (!total_.R.test(x[k], y[k])) return false;
    // subordination: x_i = x_j implies y_i = y_j
    for (int a = 0; a < level_; ++a)
        for (int b = a + 1; b < level_; ++b)
            if (x[a] == x[b] && y[a] != y[b]) return false;
    return true;
}

void LevelFrame::for_each_successor(long long i, const std::function<void(long long)>& fn) const {
    if (level_ == 0) {
        const WorldSet& succ = base_.R.row(int(i));
        for (int y = succ.first(); y >= 0; y = succ.next(y)) fn(y);
        return;
    }
    // Walk successor tuples componentwise, honoring subordination by fixing
    // the choice for repeated components.
    std::vector<int> x = tuple(i);
    std::vector<int> y(level_, -1);
    std::function<void(int, long long)> rec = [&](int k, long long acc) {
        if (k == level_) {
            fn(acc);
            return;
        }
        // Repeated component: reuse the earlier choice.
        for (int a = 0; a < k; ++a)
            if (x[a] == x[k]) {
                if (total_.R.test(x[k], y[a])) rec(k + 1, acc * total_.n + y[a]);
                return;
            }
        const WorldSet& succ = total_.R.row(x[k]);
        for (int v = succ.first(); v >= 0; v = succ.next(v)) {
            y[k] = v;
            rec(k + 1, acc * total_.n + v);
        }
        y[k] = -1;
    };
    rec(0, 0);
}

KripkeFrame LevelFrame::materialize(long long cap) const {
    if (count_ > cap)
        throw BudgetError("level frame with " + std::to_string(count_) +
                          " worlds exceeds materialization cap of " + std::to_string(cap));
    KripkeFrame f;
    f.n = int(count_);
    f.R = Relation(f.n);
    for (long long i = 0; i < count_; ++i)
        for_each_successor(i, [&](long long j) { f.R.set(int(i), int(j)); });
    return f;
}

LevelFrame nth_level(const KripkeBundle& b, int level, long long tuple_budget) {
    validate_bundle(b);
    return LevelFrame(b, level, tuple_budget);
}

namespace {

bool has_quantifier(const Formula& f) {
    if (f.op() == Op::Ex || f.op() == Op::Fa) return true;
    if (is_unary(f.op())) return has_quantifier(f.lhs());
    if (is_binary(f.op())) return has_quantifier(f.lhs()) || has_quantifier(f.rhs());
    return false;
}

}  // namespace

StrongValidityReport bounded_strong_validity(const KripkeBundle& b, const Formula& f, int max_level,
                                             int budget_bits, long long tuple_budget,
                                             long long materialize_cap) {
    if (has_quantifier(f))
        throw InputError("bounded_strong_validity: formula must be propositional (no E/A)");
    validate_bundle(b);

    StrongValidityReport rep;
    for (int n = 0; n <= max_level; ++n) {
        LevelFrame lf(b, n, tuple_budget);
        KripkeFrame kf = lf.materialize(materialize_cap);
        MKFrame mk(kf.n, kf.R, Partition::identity(kf.n));
        ValidityResult vr = frame_validity(mk, f, budget_bits);
        LevelOutcome out{n, vr.valid, vr.counter};
        rep.levels.push_back(out);
        rep.checked_up_to = n;
        if (!vr.valid) {
            rep.holds_up_to = false;
            rep.failure = out;
            break;
        }
    }
    return rep;
}

}  // namespace mgrz
