#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mgrz/bundle.hpp"
#include "mgrz/model.hpp"
#include "mgrz/translation.hpp"

namespace mgrz {

// Bundle plus a per-base-world interpretation of monadic predicates;
// I_w(P) is a subset of the fiber pi^{-1}(w), stored over total worlds.
class BundleModel {
public:
    BundleModel() = default;
    BundleModel(KripkeBundle b, std::map<std::string, WorldSet> interp);

    const KripkeBundle& bundle() const { return bundle_; }
    const WorldSet& fiber(int w) const { return fibers_[w]; }

    // I_w(P) for one base world.
    WorldSet interpretation(const std::string& pred, int w) const;
    // Union of I_w(P) over all w; empty for unknown predicates.
    WorldSet full_extension(const std::string& pred) const;
    const std::map<std::string, WorldSet>& raw() const { return interp_; }

private:
    KripkeBundle bundle_;
    std::map<std::string, WorldSet> interp_;  // pred -> union over fibers
    std::vector<WorldSet> fibers_;
};

// I_{pi(a)}(p*) = v(p) ∩ E[a]; defined over B(f).
BundleModel push_valuation(const MKFrame& f, const Valuation& v);

// v(p) = union over a of I_{pi(a)}(p*).
Valuation pull_valuation(const BundleModel& bm);

// Satisfaction at base world w; `individual` supplies the value of x and
// must lie in the fiber of w when x occurs free in g (InputError otherwise).
bool eval_pred(const BundleModel& bm, const PredicateFormula& g, int w,
               std::optional<int> individual);

struct EquivalenceDisagreement {
    Valuation v;
    int individual = 0;
    bool frame_side = false;
    bool bundle_side = false;
};

struct EquivalenceReport {
    long long checked_valuations = 0;
    bool exhaustive = false;
    std::vector<EquivalenceDisagreement> disagreements;  // any entry is a bug certificate
    bool ok() const { return disagreements.empty(); }
};

// Verifies a |=_v f  <=>  pi(a) |=_{push(v)} f^t[a/x] at every a, plus the
// pull direction (pull(push(v)) = v re-evaluated). trials == 0 runs all
// valuations over letters(f) (budget permitting); otherwise `trials` seeded
// random valuations.
EquivalenceReport check_translation_equivalence(const MKFrame& f, const Formula& phi,
                                                long long trials = 0, std::uint64_t seed = 1,
                                                int budget_bits = kValuationBudgetBits);

}  // namespace mgrz
