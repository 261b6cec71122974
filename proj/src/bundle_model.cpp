#include "mgrz/bundle_model.hpp"

#include "mgrz/errors.hpp"
#include "mgrz/rng.hpp"

namespace mgrz {

BundleModel::BundleModel(KripkeBundle b, std::map<std::string, WorldSet> interp)
    : bundle_(std::move(b)), interp_(std::move(interp)) {
    validate_bundle(bundle_);
    fibers_.reserve(bundle_.base.n);
    for (int w = 0; w < bundle_.base.n; ++w) fibers_.push_back(bundle_.fiber(w));
    for (const auto& [name, ext] : interp_)
        if (ext.universe() != bundle_.total.n)
            throw InputError("interpretation of " + name + " is not over the total worlds");
}

WorldSet BundleModel::interpretation(const std::string& pred, int w) const {
    auto it = interp_.find(pred);
    if (it == interp_.end()) return WorldSet(bundle_.total.n);
    return it->second & fibers_[w];
}

WorldSet BundleModel::full_extension(const std::string& pred) const {
    auto it = interp_.find(pred);
    return it == interp_.end() ? WorldSet(bundle_.total.n) : it->second;
}

BundleModel push_valuation(const MKFrame& f, const Valuation& v) {
    KripkeBundle b = bundle_of_frame(f);
    std::map<std::string, WorldSet> interp;
    // I_{pi(a)}(p*) = v(p) ∩ E[a]; as a union over a this is just v(p).
    for (const auto& [letter, ext] : v) interp[letter + "*"] = ext;
    return BundleModel(std::move(b), std::move(interp));
}

Valuation pull_valuation(const BundleModel& bm) {
    Valuation v;
    for (const auto& [pred, ext] : bm.raw()) {
        if (pred.size() >= 2 && pred.back() == '*')
            v[pred.substr(0, pred.size() - 1)] = ext;
    }
    return v;
}

bool eval_pred(const BundleModel& bm, const PredicateFormula& g, int w,
               std::optional<int> individual) {
    const KripkeBundle& b = bm.bundle();
    if (g.x_free()) {
        if (!individual) throw InputError("eval_pred: free x but no individual given");
        if (b.pi[*individual] != w)
            throw InputError("eval_pred: individual " + std::to_string(*individual) +
                             " is not in the fiber of base world " + std::to_string(w));
    }
    switch (g.op()) {
        case POp::Pred: return bm.interpretation(g.name(), w).test(*individual);
        case POp::Top: return true;
        case POp::Bot: return false;
        case POp::Not: return !eval_pred(bm, g.lhs(), w, individual);
        case POp::And: return eval_pred(bm, g.lhs(), w, individual) && eval_pred(bm, g.rhs(), w, individual);
        case POp::Or: return eval_pred(bm, g.lhs(), w, individual) || eval_pred(bm, g.rhs(), w, individual);
        case POp::Impl:
            return !eval_pred(bm, g.lhs(), w, individual) || eval_pred(bm, g.rhs(), w, individual);
        case POp::ExX: {
            const WorldSet& fib = bm.fiber(w);
            for (int a = fib.first(); a >= 0; a = fib.next(a))
                if (eval_pred(bm, g.lhs(), w, a)) return true;
            return false;
        }
        case POp::FaX: {
            const WorldSet& fib = bm.fiber(w);
            for (int a = fib.first(); a >= 0; a = fib.next(a))
                if (!eval_pred(bm, g.lhs(), w, a)) return false;
            return true;
        }
        case POp::Dia: {
            const WorldSet& base_succ = b.base.R.row(w);
            if (!g.lhs().x_free()) {
                for (int v2 = base_succ.first(); v2 >= 0; v2 = base_succ.next(v2))
                    if (eval_pred(bm, g.lhs(), v2, std::nullopt)) return true;
                return false;
            }
            // One free individual: pick an inheritor b in R[a] within the target fiber.
            const WorldSet& succ = b.total.R.row(*individual);
            for (int v2 = base_succ.first(); v2 >= 0; v2 = base_succ.next(v2)) {
                WorldSet inheritors = succ & bm.fiber(v2);
                for (int bb = inheritors.first(); bb >= 0; bb = inheritors.next(bb))
                    if (eval_pred(bm, g.lhs(), v2, bb)) return true;
            }
            return false;
        }
        case POp::Box: {
            const WorldSet& base_succ = b.base.R.row(w);
            if (!g.lhs().x_free()) {
                for (int v2 = base_succ.first(); v2 >= 0; v2 = base_succ.next(v2))
                    if (!eval_pred(bm, g.lhs(), v2, std::nullopt)) return false;
                return true;
            }
            const WorldSet& succ = b.total.R.row(*individual);
            for (int v2 = base_succ.first(); v2 >= 0; v2 = base_succ.next(v2)) {
                WorldSet inheritors = succ & bm.fiber(v2);
                for (int bb = inheritors.first(); bb >= 0; bb = inheritors.next(bb))
                    if (!eval_pred(bm, g.lhs(), v2, bb)) return false;
            }
            return true;
        }
    }
    return false;
}

EquivalenceReport check_translation_equivalence(const MKFrame& f, const Formula& phi,
                                                long long trials, std::uint64_t seed,
                                                int budget_bits) {
    if (!validate_mk(f).mk.holds)
        throw InputError("check_translation_equivalence: frame is not an MK-frame");
    std::set<std::string> letter_set = letters(phi);
    std::vector<std::string> ls(letter_set.begin(), letter_set.end());
    PredicateFormula pt = translate_t(phi);

    EquivalenceReport rep;
    auto check_valuation = [&](const Valuation& v) {
        Model m(f, v);
        WorldSet ext = eval(m, phi);
        BundleModel bm = push_valuation(f, v);

        ++rep.checked_valuations;
        for (int a = 0; a < f.n; ++a) {
            bool frame_side = ext.test(a);
            bool bundle_side = eval_pred(bm, pt, bm.bundle().pi[a], a);
            if (frame_side != bundle_side)
                rep.disagreements.push_back({v, a, frame_side, bundle_side});
        }
        // Pull direction: the recovered valuation must evaluate identically.
        Valuation pulled = pull_valuation(bm);
        WorldSet ext2 = eval(Model(f, pulled), phi);
        for (int a = 0; a < f.n; ++a) {
            bool frame_side = ext2.test(a);
            bool bundle_side = eval_pred(bm, pt, bm.bundle().pi[a], a);
            if (frame_side != bundle_side)
                rep.disagreements.push_back({pulled, a, frame_side, bundle_side});
        }
    };

    if (trials <= 0) {
        long long bits = static_cast<long long>(ls.size()) * f.n;
        if (bits > budget_bits || bits > 62)
            throw BudgetError("check_translation_equivalence: exhaustive scan needs " +
                              std::to_string(bits) + " bits");
        rep.exhaustive = true;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
            Valuation v;
            for (std::size_t li = 0; li < ls.size(); ++li) {
                WorldSet s(f.n);
                for (int w = 0; w < f.n; ++w)
                    if ((mask >> (li * f.n + w)) & 1) s.set(w);
                v[ls[li]] = s;
            }
            check_valuation(v);
        }
    } else {
        Rng rng(seed);
        for (long long t = 0; t < trials; ++t) {
            Valuation v;
            for (const auto& l : ls) {
                WorldSet s(f.n);
                for (int w = 0; w < f.n; ++w)
                    if (rng.chance(2)) s.set(w);
                v[l] = s;
            }
            check_valuation(v);
        }
    }
    return rep;
}

}  // namespace mgrz
