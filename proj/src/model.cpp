#include "mgrz/model.hpp"

#include <unordered_map>

#include "mgrz/errors.hpp"

namespace mgrz {

namespace {

WorldSet eval_into(const Model& m, const Formula& f,
                   std::unordered_map<Formula, WorldSet, FormulaHash>& cache) {
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    const MKFrame& fr = m.frame;
    WorldSet r(fr.n);
    switch (f.op()) {
        case Op::Letter: r = m.letter_extension(f.name()); break;
        case Op::Top: r = WorldSet::full(fr.n); break;
        case Op::Bot: break;
        case Op::Not: r = ~eval_into(m, f.lhs(), cache); break;
        case Op::And: r = eval_into(m, f.lhs(), cache) & eval_into(m, f.rhs(), cache); break;
        case Op::Or: r = eval_into(m, f.lhs(), cache) | eval_into(m, f.rhs(), cache); break;
        case Op::Impl: r = ~eval_into(m, f.lhs(), cache) | eval_into(m, f.rhs(), cache); break;
        case Op::Dia: r = fr.R.preimage(eval_into(m, f.lhs(), cache)); break;
        case Op::Box: r = fr.R.preimage_all(eval_into(m, f.lhs(), cache)); break;
        case Op::Ex: {
            WorldSet sub = eval_into(m, f.lhs(), cache);
            for (int x = 0; x < fr.n; ++x)
                if (fr.E.class_of(x).intersects(sub)) r.set(x);
            break;
        }
        case Op::Fa: {
            WorldSet sub = eval_into(m, f.lhs(), cache);
            for (int x = 0; x < fr.n; ++x)
                if (fr.E.class_of(x).subset_of(sub)) r.set(x);
            break;
        }
    }
    cache.emplace(f, r);
    return r;
}

}  // namespace

WorldSet eval(const Model& m, const Formula& f) {
    std::unordered_map<Formula, WorldSet, FormulaHash> cache;
    return eval_into(m, f, cache);
}

bool eval_naive(const Model& m, const Formula& f, int world) {
    const MKFrame& fr = m.frame;
    switch (f.op()) {
        case Op::Letter: return m.letter_extension(f.name()).test(world);
        case Op::Top: return true;
        case Op::Bot: return false;
        case Op::Not: return !eval_naive(m, f.lhs(), world);
        case Op::And: return eval_naive(m, f.lhs(), world) && eval_naive(m, f.rhs(), world);
        case Op::Or: return eval_naive(m, f.lhs(), world) || eval_naive(m, f.rhs(), world);
        case Op::Impl: return !eval_naive(m, f.lhs(), world) || eval_naive(m, f.rhs(), world);
        case Op::Dia: {
            const WorldSet& succ = fr.R.row(world);
            for (int y = succ.first(); y >= 0; y = succ.next(y))
                if (eval_naive(m, f.lhs(), y)) return true;
            return false;
        }
        case Op::Box: {
            const WorldSet& succ = fr.R.row(world);
            for (int y = succ.first(); y >= 0; y = succ.next(y))
                if (!eval_naive(m, f.lhs(), y)) return false;
            return true;
        }
        case Op::Ex: {
            const WorldSet& cls = fr.E.class_of(world);
            for (int y = cls.first(); y >= 0; y = cls.next(y))
                if (eval_naive(m, f.lhs(), y)) return true;
            return false;
        }
        case Op::Fa: {
            const WorldSet& cls = fr.E.class_of(world);
            for (int y = cls.first(); y >= 0; y = cls.next(y))
                if (!eval_naive(m, f.lhs(), y)) return false;
            return true;
        }
    }
    return false;
}

ValidityResult frame_validity(const MKFrame& f, const Formula& phi, int budget_bits) {
    std::set<std::string> letter_set = letters(phi);
    std::vector<std::string> ls(letter_set.begin(), letter_set.end());
    long long bits = static_cast<long long>(ls.size()) * f.n;
    if (bits > budget_bits || bits > 62)
        throw BudgetError("frame_validity: " + std::to_string(bits) +
                          " valuation bits exceed budget of " + std::to_string(budget_bits));

    Model m;
    m.frame = f;
    std::uint64_t total = std::uint64_t{1} << bits;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Valuation v;
        for (std::size_t li = 0; li < ls.size(); ++li) {
            WorldSet s(f.n);
            for (int w = 0; w < f.n; ++w)
                if ((mask >> (li * f.n + w)) & 1) s.set(w);
            v[ls[li]] = s;
        }
        m.v = v;
        WorldSet ext = eval(m, phi);
        if (!(ext == WorldSet::full(f.n))) {
            int world = (~ext).first();
            return ValidityResult{false, CounterValuation{std::move(v), world}};
        }
    }
    return ValidityResult{true, std::nullopt};
}

}  // namespace mgrz
