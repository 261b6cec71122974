#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgrz/relation.hpp"

namespace mgrz {

// Kripke frame (X, R) on worlds 0..n-1.
struct KripkeFrame {
    int n = 0;
    Relation R;
    KripkeFrame() = default;
    KripkeFrame(int n_, Relation r) : n(n_), R(std::move(r)) {}
    bool operator==(const KripkeFrame&) const = default;
};

// Monadic Kripke frame (X, R, E). E is an equivalence by representation;
// the commutativity condition is checked by validate_mk, not assumed.
struct MKFrame {
    int n = 0;
    Relation R;
    Partition E;
    std::vector<std::string> names;  // empty or size n

    MKFrame() = default;
    MKFrame(int n_, Relation r, Partition e) : n(n_), R(std::move(r)), E(std::move(e)) {}

    std::string world_name(int w) const {
        return names.empty() ? "w" + std::to_string(w) : names[w];
    }
    bool operator==(const MKFrame& o) const { return n == o.n && R == o.R && E == o.E; }
};

// Q = E after R:  x Q y  iff  exists z with x R z and z E y.
Relation q_relation(const MKFrame& f);

struct Skeleton {
    KripkeFrame base;           // (X0, R0)
    std::vector<int> block_of;  // quotient map, world -> base world
};

// One violation of a defining condition, with the worlds that witness it.
struct Violation {
    std::string condition;
    std::vector<int> worlds;
    bool operator==(const Violation&) const = default;
};

struct ClassEntry {
    bool holds = true;
    std::vector<Violation> witnesses;
};

// Flags are full class memberships, so MGrz implies MS4 implies MK, and
// GrzU implies Barcan implies the MK commutativity condition.
struct FrameClassReport {
    ClassEntry mk;          // commutativity
    ClassEntry ms4;         // MK + R preorder
    ClassEntry mgrz;        // MS4 + R antisymmetric
    ClassEntry grz_u;       // MGrz + (x R y => x E y)
    ClassEntry barcan;      // E∘R = R∘E (the monadic Barcan frame condition)
    ClassEntry m_plus_grz;  // MK + R partial order + (x E y and x R y => x = y)
    ClassEntry mgl;         // MK + R strict order + (x E y => not x R y)
};

enum class FrameClass { MK, MS4, MGrz, GrzU, MPlusGrz, MGL };

const ClassEntry& report_entry(const FrameClassReport& r, FrameClass c);
std::string frame_class_name(FrameClass c);
std::optional<FrameClass> frame_class_from_name(const std::string& s);

// MK flag only: left commutativity x E y, y R z => exists u: x R u, u E z.
FrameClassReport validate_mk(const MKFrame& f);

// All flags. Witnesses are the lexicographically first violating tuples.
FrameClassReport classify(const MKFrame& f);

// Re-checks one recorded violation against its defining condition.
// Returns true when the tuple indeed violates the condition on f.
bool replay_violation(const MKFrame& f, const Violation& v);

// Quotient by E with R0 induced by Q. Requires commutativity (InputError).
Skeleton e_skeleton(const MKFrame& f);

// Section-6 point machinery. U is any subset (finite frames: all clopen).
WorldSet max_set(const MKFrame& f, const WorldSet& u);
WorldSet qmax_set(const MKFrame& f, const WorldSet& u);
WorldSet smax_set(const MKFrame& f, const WorldSet& u);
WorldSet passive_set(const MKFrame& f, const WorldSet& u);

// Partition of X into Q-clusters (mutual Q-reachability).
Partition eq_clusters(const MKFrame& f);

struct FineEsakiaReport {
    bool exhaustive_ran = false;
    bool exhaustive_pass = false;    // max = qmax and U ⊆ R^{-1}[max U] for all U
    bool antisymmetry_pass = false;  // finite-frame equivalent
    bool agree = false;              // both ran and verdicts match
    // First failing subset/world for the exhaustive scan, if any.
    std::optional<WorldSet> failing_u;
    std::optional<int> failing_x;
    std::string failing_condition;
};

inline constexpr int kSubsetScanCap = 14;  // exhaustive scans cover 2^n subsets

// Requires f to be MS4 (InputError otherwise). In exhaustive mode n must be
// at most `cap` (BudgetError otherwise).
FineEsakiaReport fine_esakia_check(const MKFrame& f, bool exhaustive, int cap = kSubsetScanCap);

// Q[x] ∩ smax U nonempty for every x in U. Requires f to classify MGrz.
bool smax_theorem_check(const MKFrame& f, const WorldSet& u);

// Longest chain (element count) of a finite poset; 0 for the empty frame.
int longest_chain(const Relation& r, const WorldSet& within);

}  // namespace mgrz
