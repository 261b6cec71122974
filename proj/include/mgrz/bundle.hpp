#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mgrz/frame.hpp"
#include "mgrz/model.hpp"

namespace mgrz {

// Total frame, base frame and the projection; pi must be an onto p-morphism
// (checked by validate_bundle, which the constructors of derived data use).
struct KripkeBundle {
    KripkeFrame total;
    KripkeFrame base;
    std::vector<int> pi;  // base world per total world

    WorldSet fiber(int w) const {  // pi^{-1}(w)
        WorldSet s(total.n);
        for (int x = 0; x < total.n; ++x)
            if (pi[x] == w) s.set(x);
        return s;
    }
    bool operator==(const KripkeBundle&) const = default;
};

// Empty result means valid; otherwise a description of the first failure.
std::optional<std::string> bundle_invariant_violation(const KripkeBundle& b);
void validate_bundle(const KripkeBundle& b);  // throws InputError

// Functor B on objects: total (X,R), base = E-skeleton, pi = quotient map.
KripkeBundle bundle_of_frame(const MKFrame& f);

// Functor F on objects: (X, R, E_pi) with x E_pi y iff pi(x) = pi(y).
MKFrame frame_of_bundle(const KripkeBundle& b);

struct MorphismReport {
    bool total_p_morphism = true;
    bool base_p_morphism = true;
    bool square_commutes = true;
    bool fiberwise_onto = true;
    std::vector<Violation> witnesses;
    bool ok() const { return total_p_morphism && base_p_morphism && square_commutes && fiberwise_onto; }
};

// Checks (f, g) : b -> b' for the three bundle-morphism clauses.
MorphismReport check_bundle_morphism(const KripkeBundle& b, const KripkeBundle& b2,
                                     const std::vector<int>& f, const std::vector<int>& g);

struct RoundTripReport {
    bool ok = true;
    std::string detail;
};

// F(B(f)) must equal f on the same carrier.
RoundTripReport roundtrip_iso_check(const MKFrame& f);
// epsilon_b = (id, p0) with p0(w) = pi^{-1}(w) must be a bundle isomorphism.
RoundTripReport roundtrip_iso_check(const KripkeBundle& b);

inline constexpr long long kLevelTupleBudget = 1'000'000;

// The n-th level: level 0 is the base frame; level n >= 1 has |X|^n tuple
// worlds with componentwise R restricted by the subordination condition.
// The relation is computed on demand (levels can be too large to materialize).
class LevelFrame {
public:
    LevelFrame(const KripkeBundle& b, int level, long long tuple_budget = kLevelTupleBudget);

    int level() const { return level_; }
    long long world_count() const { return count_; }
    std::vector<int> tuple(long long idx) const;  // level >= 1 only
    bool related(long long i, long long j) const;
    void for_each_successor(long long i, const std::function<void(long long)>& fn) const;

    // Dense Kripke frame; throws BudgetError when world_count() > cap.
    KripkeFrame materialize(long long cap = 4096) const;

private:
    KripkeFrame base_, total_;
    int level_ = 0;
    long long count_ = 0;
};

LevelFrame nth_level(const KripkeBundle& b, int level, long long tuple_budget = kLevelTupleBudget);

struct LevelOutcome {
    int level = 0;
    bool valid = false;
    std::optional<CounterValuation> counter;
};

struct StrongValidityReport {
    // True when every level 0..checked_up_to passed; the wording of any
    // rendering must say "up to N" -- this is a bounded approximation.
    bool holds_up_to = true;
    int checked_up_to = 0;
    std::vector<LevelOutcome> levels;
    std::optional<LevelOutcome> failure;
};

// Checks X_n |= f for n = 0..max_level via frame_validity (E unused: f must
// contain no E/A nodes, InputError otherwise). Stops at the first failure.
StrongValidityReport bounded_strong_validity(const KripkeBundle& b, const Formula& f, int max_level,
                                             int budget_bits = kValuationBudgetBits,
                                             long long tuple_budget = kLevelTupleBudget,
                                             long long materialize_cap = 4096);

}  // namespace mgrz
