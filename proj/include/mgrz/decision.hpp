#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mgrz/model.hpp"

namespace mgrz {

inline constexpr int kEnumWorldsCap = 6;

// All partitions of {0..n-1} as restricted growth strings, lexicographic.
std::vector<Partition> all_partitions(int n);

// Frames of the class with exactly n worlds, in deterministic order:
// R candidates ascending by bitmask (bit i*n+j; the diagonal is forced for
// reflexive/irreflexive classes), partitions in RGS order, filtered by the
// class conditions including commutativity. fn returns false to stop early.
// With dedup, only the first frame of each isomorphism class is yielded
// (signature bucket + exact isomorphism confirmation, so only genuine
// duplicates are ever skipped).
void enumerate_frames(FrameClass cls, int n, bool dedup,
                      const std::function<bool(const MKFrame&)>& fn, int cap = kEnumWorldsCap);

std::vector<MKFrame> enumerate_frames_list(FrameClass cls, int n, bool dedup = false,
                                           int cap = kEnumWorldsCap);
long long count_frames(FrameClass cls, int n, bool dedup = false, int cap = kEnumWorldsCap);

// Isomorphism-invariant signature (1-WL style color refinement over R and E).
std::uint64_t canonical_signature(const MKFrame& f);
// Exact isomorphism test (backtracking with color pruning).
bool frames_isomorphic(const MKFrame& a, const MKFrame& b);

struct SearchConfig {
    FrameClass cls = FrameClass::MGrz;
    int max_worlds = 4;
    bool dedup = false;
    int jobs = 1;
    int budget_bits = kValuationBudgetBits;
    int enum_cap = kEnumWorldsCap;
};

struct Countermodel {
    MKFrame frame;
    Valuation v;
    int world = 0;
    int size = 0;
};

struct Verdict {
    std::optional<Countermodel> countermodel;
    int searched_up_to = 0;  // frames of every size up to this were exhausted
};

// Scans n = 1..max_worlds in enumeration order and returns the first
// countermodel (deterministic regardless of jobs), or NoCountermodelUpTo.
Verdict decide(const Formula& f, const SearchConfig& cfg);

// Wrapper over frame_validity.
std::optional<CounterValuation> refute_on_frame(const MKFrame& f, const Formula& phi,
                                                int budget_bits = kValuationBudgetBits);

}  // namespace mgrz
