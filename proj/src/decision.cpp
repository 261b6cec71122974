#include "mgrz/decision.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

#include "mgrz/errors.hpp"

namespace mgrz {

std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int i, int mx) {
        if (i == n) {
            out.push_back(Partition::from_block_ids(rgs));
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            rgs[i] = v;
            rec(i + 1, std::max(mx, v));
        }
    };
    if (n == 0)
        out.push_back(Partition::from_block_ids({}));
    else
        rec(1, 0);  // rgs[0] = 0 fixed
    return out;
}

namespace {

struct MaskScheme {
    std::vector<int> free_bits;   // varying bit positions, ascending
    std::uint64_t forced = 0;     // bits always set (diagonal for reflexive classes)

    std::uint64_t combos() const { return std::uint64_t{1} << free_bits.size(); }
    std::uint64_t mask_at(std::uint64_t idx) const {
        std::uint64_t m = forced;
        for (std::size_t k = 0; k < free_bits.size(); ++k)
            if ((idx >> k) & 1) m |= std::uint64_t{1} << free_bits[k];
        return m;
    }
};

MaskScheme scheme_for(FrameClass cls, int n) {
    MaskScheme s;
    bool reflexive = cls == FrameClass::MS4 || cls == FrameClass::MGrz || cls == FrameClass::GrzU ||
                     cls == FrameClass::MPlusGrz;
    bool irreflexive = cls == FrameClass::MGL;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int bit = i * n + j;
            if (i == j && reflexive)
                s.forced |= std::uint64_t{1} << bit;
            else if (i == j && irreflexive)
                ;  // forced clear
            else
                s.free_bits.push_back(bit);
        }
    return s;
}

Relation relation_from_mask(int n, std::uint64_t mask) {
    Relation r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((mask >> (i * n + j)) & 1) r.set(i, j);
    return r;
}

bool relation_fits_class(FrameClass cls, const Relation& r) {
    switch (cls) {
        case FrameClass::MK: return true;
        case FrameClass::MS4: return r.is_transitive();                       // diagonal forced
        case FrameClass::MGrz: return r.is_transitive() && r.is_antisymmetric();
        case FrameClass::GrzU: return r.is_transitive() && r.is_antisymmetric();
        case FrameClass::MPlusGrz: return r.is_transitive() && r.is_antisymmetric();
        case FrameClass::MGL: return r.is_transitive();                       // irreflexive forced
    }
    return false;
}

bool frame_fits_class(FrameClass cls, const MKFrame& f) {
    if (!validate_mk(f).mk.holds) return false;
    switch (cls) {
        case FrameClass::GrzU:
            for (int x = 0; x < f.n; ++x)
                if (!f.R.row(x).subset_of(f.E.class_of(x))) return false;
            return true;
        case FrameClass::MPlusGrz:
            for (int x = 0; x < f.n; ++x)
                for (int y = 0; y < f.n; ++y)
                    if (x != y && f.E.same(x, y) && f.R.test(x, y)) return false;
            return true;
        case FrameClass::MGL:
            for (int x = 0; x < f.n; ++x)
                if (f.R.row(x).intersects(f.E.class_of(x))) return false;
            return true;
        default: return true;
    }
}

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 7);
    return h * 0x2545f4914f6cdd1dULL;
}

std::vector<std::uint64_t> refined_colors(const MKFrame& f) {
    std::vector<std::uint64_t> color(f.n);
    for (int i = 0; i < f.n; ++i) {
        std::uint64_t c = 0x5bd1e995;
        c = hash_mix(c, f.R.test(i, i));
        c = hash_mix(c, std::uint64_t(f.R.row(i).count()));
        c = hash_mix(c, std::uint64_t(f.R.column(i).count()));
        c = hash_mix(c, std::uint64_t(f.E.class_of(i).count()));
        color[i] = c;
    }
    for (int round = 0; round < f.n; ++round) {
        std::vector<std::uint64_t> next(f.n);
        for (int i = 0; i < f.n; ++i) {
            auto sorted_colors = [&](const WorldSet& s) {
                std::vector<std::uint64_t> cs;
                for (int j = s.first(); j >= 0; j = s.next(j)) cs.push_back(color[j]);
                std::sort(cs.begin(), cs.end());
                return cs;
            };
            std::uint64_t c = hash_mix(0x9e3779b9, color[i]);
            for (std::uint64_t v : sorted_colors(f.R.row(i))) c = hash_mix(c, v);
            c = hash_mix(c, 0xabcdef);
            for (std::uint64_t v : sorted_colors(f.R.column(i))) c = hash_mix(c, v);
            c = hash_mix(c, 0x123457);
            for (std::uint64_t v : sorted_colors(f.E.class_of(i))) c = hash_mix(c, v);
            next[i] = c;
        }
        color = std::move(next);
    }
    return color;
}

}  // namespace

std::uint64_t canonical_signature(const MKFrame& f) {
    std::vector<std::uint64_t> color = refined_colors(f);
    std::vector<std::uint64_t> sorted = color;
    std::sort(sorted.begin(), sorted.end());
    std::uint64_t sig = hash_mix(0x13579bdf, std::uint64_t(f.n));
    for (std::uint64_t c : sorted) sig = hash_mix(sig, c);
    std::vector<std::uint64_t> edges;
    for (auto [i, j] : f.R.pairs()) edges.push_back(hash_mix(color[i], color[j]));
    std::sort(edges.begin(), edges.end());
    for (std::uint64_t e : edges) sig = hash_mix(sig, e);
    std::vector<std::uint64_t> epairs;
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j)
            if (f.E.same(i, j)) epairs.push_back(hash_mix(color[i] ^ 0x77, color[j]));
    std::sort(epairs.begin(), epairs.end());
    for (std::uint64_t e : epairs) sig = hash_mix(sig, e);
    return sig;
}

bool frames_isomorphic(const MKFrame& a, const MKFrame& b) {
    if (a.n != b.n) return false;
    std::vector<std::uint64_t> ca = refined_colors(a), cb = refined_colors(b);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> map(a.n, -1), used(b.n, 0);
    std::function<bool(int)> assign = [&](int i) -> bool {
        if (i == a.n) return true;
        for (int j = 0; j < b.n; ++j) {
            if (used[j] || ca[i] != cb[j]) continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k) {
                if (a.R.test(i, k) != b.R.test(j, map[k])) ok = false;
                if (a.R.test(k, i) != b.R.test(map[k], j)) ok = false;
                if (a.E.same(i, k) != b.E.same(j, map[k])) ok = false;
            }
            if (a.R.test(i, i) != b.R.test(j, j)) ok = false;
            if (!ok) continue;
            used[j] = 1;
            map[i] = j;
            if (assign(i + 1)) return true;
            used[j] = 0;
            map[i] = -1;
        }
        return false;
    };
    return assign(0);
}

void enumerate_frames(FrameClass cls, int n, bool dedup,
                      const std::function<bool(const MKFrame&)>& fn, int cap) {
    if (n < 1) throw InputError("enumerate_frames: need at least one world");
    if (n > cap)
        throw BudgetError("enumerate_frames: cap of " + std::to_string(cap) + " worlds exceeded");

    MaskScheme scheme = scheme_for(cls, n);
    std::vector<Partition> parts = all_partitions(n);
    std::unordered_map<std::uint64_t, std::vector<MKFrame>> seen;

    for (std::uint64_t idx = 0; idx < scheme.combos(); ++idx) {
        Relation r = relation_from_mask(n, scheme.mask_at(idx));
        if (!relation_fits_class(cls, r)) continue;
        for (const Partition& p : parts) {
            MKFrame f(n, r, p);
            if (!frame_fits_class(cls, f)) continue;
            if (dedup) {
                std::uint64_t sig = canonical_signature(f);
                auto& bucket = seen[sig];
                bool dup = false;
                for (const MKFrame& g : bucket)
                    if (frames_isomorphic(f, g)) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                bucket.push_back(f);
            }
            if (!fn(f)) return;
        }
    }
}

std::vector<MKFrame> enumerate_frames_list(FrameClass cls, int n, bool dedup, int cap) {
    std::vector<MKFrame> out;
    enumerate_frames(cls, n, dedup, [&](const MKFrame& f) {
        out.push_back(f);
        return true;
    }, cap);
    return out;
}

long long count_frames(FrameClass cls, int n, bool dedup, int cap) {
    long long c = 0;
    enumerate_frames(cls, n, dedup, [&](const MKFrame&) {
        ++c;
        return true;
    }, cap);
    return c;
}

std::optional<CounterValuation> refute_on_frame(const MKFrame& f, const Formula& phi,
                                                int budget_bits) {
    ValidityResult r = frame_validity(f, phi, budget_bits);
    return r.counter;
}

namespace {

// Sequential scan of one size; returns the first countermodel in order.
std::optional<Countermodel> scan_size(const Formula& phi, FrameClass cls, int n,
                                      const SearchConfig& cfg) {
    std::optional<Countermodel> found;
    enumerate_frames(cls, n, cfg.dedup, [&](const MKFrame& f) {
        if (auto cv = refute_on_frame(f, phi, cfg.budget_bits)) {
            found = Countermodel{f, cv->v, cv->world, n};
            return false;
        }
        return true;
    }, cfg.enum_cap);
    return found;
}

// Parallel scan over the relation-mask odometer; deterministic reduce to the
// minimum (mask index, partition index).
std::optional<Countermodel> scan_size_parallel(const Formula& phi, FrameClass cls, int n,
                                               const SearchConfig& cfg) {
    MaskScheme scheme = scheme_for(cls, n);
    std::vector<Partition> parts = all_partitions(n);
    std::uint64_t combos = scheme.combos();
    int jobs = std::max(1, cfg.jobs);

    struct Hit {
        std::uint64_t mask_idx;
        std::size_t part_idx;
        Countermodel cm;
    };
    std::vector<std::optional<Hit>> hits(jobs);
    std::atomic<std::uint64_t> best_mask{~std::uint64_t{0}};

    auto worker = [&](int t) {
        std::optional<Hit> local;
        for (std::uint64_t idx = t; idx < combos; idx += std::uint64_t(jobs)) {
            if (idx >= best_mask.load(std::memory_order_relaxed)) continue;
            Relation r = relation_from_mask(n, scheme.mask_at(idx));
            if (!relation_fits_class(cls, r)) continue;
            for (std::size_t pi = 0; pi < parts.size(); ++pi) {
                MKFrame f(n, r, parts[pi]);
                if (!frame_fits_class(cls, f)) continue;
                if (auto cv = refute_on_frame(f, phi, cfg.budget_bits)) {
                    local = Hit{idx, pi, Countermodel{f, cv->v, cv->world, n}};
                    break;
                }
            }
            if (local) {
                std::uint64_t cur = best_mask.load(std::memory_order_relaxed);
                while (idx < cur && !best_mask.compare_exchange_weak(cur, idx)) {
                }
                break;
            }
        }
        hits[t] = local;
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();

    std::optional<Hit> best;
    for (auto& h : hits)
        if (h && (!best || h->mask_idx < best->mask_idx ||
                  (h->mask_idx == best->mask_idx && h->part_idx < best->part_idx)))
            best = h;
    if (best) return best->cm;
    return std::nullopt;
}

}  // namespace

Verdict decide(const Formula& phi, const SearchConfig& cfg) {
    if (cfg.max_worlds < 1) throw InputError("decide: max worlds must be at least 1");
    Verdict v;
    for (int n = 1; n <= cfg.max_worlds; ++n) {
        long long bits = static_cast<long long>(letters(phi).size()) * n;
        if (bits > cfg.budget_bits)
            throw BudgetError("decide: valuation budget exceeded at size " + std::to_string(n) +
                              " (no countermodel up to size " + std::to_string(n - 1) + ")");
        std::optional<Countermodel> cm;
        // Dedup keeps shared state; run it sequentially. Both paths visit
        // frames in the same order, so the verdict is identical.
        if (cfg.jobs > 1 && !cfg.dedup)
            cm = scan_size_parallel(phi, cfg.cls, n, cfg);
        else
            cm = scan_size(phi, cfg.cls, n, cfg);
        if (cm) {
            v.countermodel = std::move(cm);
            v.searched_up_to = n;
            return v;
        }
        v.searched_up_to = n;
    }
    return v;
}

}  // namespace mgrz
