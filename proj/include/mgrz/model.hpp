#pragma once

#include <map>
#include <optional>
#include <string>

#include "mgrz/formula.hpp"
#include "mgrz/frame.hpp"

namespace mgrz {

// letter -> set of worlds where it holds; absent letters hold nowhere.
using Valuation = std::map<std::string, WorldSet>;

struct Model {
    MKFrame frame;
    Valuation v;

    Model() = default;
    Model(MKFrame f, Valuation val) : frame(std::move(f)), v(std::move(val)) {}

    WorldSet letter_extension(const std::string& name) const {
        auto it = v.find(name);
        return it == v.end() ? WorldSet(frame.n) : it->second;
    }
};

// Extension of f, by bottom-up labeling over the subformula closure.
WorldSet eval(const Model& m, const Formula& f);

// Independent oracle: direct structural recursion at one world, no caching.
bool eval_naive(const Model& m, const Formula& f, int world);

struct CounterValuation {
    Valuation v;
    int world = 0;
};

inline constexpr int kValuationBudgetBits = 24;

struct ValidityResult {
    bool valid = false;
    std::optional<CounterValuation> counter;
};

// Enumerates all valuations over letters(f) x worlds as an ascending bit
// counter (letters alphabetical, bit index = letter*n + world) and returns
// the first refuting (valuation, world) pair, if any.
// Throws BudgetError when |letters(f)| * n exceeds budget_bits.
ValidityResult frame_validity(const MKFrame& f, const Formula& phi,
                              int budget_bits = kValuationBudgetBits);

}  // namespace mgrz
