#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgrz/model.hpp"

namespace mgrz {

// Per-world witness sets over S: members of S of the shape E psi (resp.
// <>psi) that hold at x while psi fails there.
struct WitnessSets {
    std::vector<std::vector<Formula>> ex;   // W_x^E, in S order
    std::vector<std::vector<Formula>> dia;  // W_x^<>, in S order
};

WitnessSets witness_sets(const Model& m, const std::vector<Formula>& s);

// Partition of worlds by agreement on every member of S.
Partition sim_s(const Model& m, const std::vector<Formula>& s);

enum class PointKind { Root, ExistsWitness, DiaHorizontal, DiaVertical, Commutativity };
std::string point_kind_name(PointKind k);

struct SelectedPoint {
    int id = 0;
    int origin = 0;
    WorldSet selection_clopen;  // origin is strongly maximal in this set
    PointKind kind = PointKind::Root;
};

// One modal selection obligation. Members of S of shape <>psi / E psi are
// carried directly; first-class []beta / A gamma members contribute their
// dual obligations <>~beta / E~gamma (required: without them the Truth Lemma
// fails for formulas like []p | []~p).
struct Obligation {
    Formula member;       // the S member this came from
    Formula display;      // <>psi, or <>~beta for duals (likewise E...)
    bool dual = false;
    WorldSet modal_ext;   // worlds where the (virtual) diamond/exists holds
    WorldSet body_ext;    // worlds a witness origin may come from
    bool active_at(int w) const { return modal_ext.test(w) && !body_ext.test(w); }
};

struct CrossEdge {
    int src = 0;
    int dst = 0;
    Formula witness;  // display formula of the obligation
    WorldSet a_set;
};

// Growing selected-point set with provenance. All invariants (distinct
// origins, Ek/E agreement both ways, the two-case Rk origin condition, Rk a
// partial order) are re-checked after every step; failures are bug
// certificates (InvariantError), never user errors.
struct FiltrationState {
    Model M;
    Formula phi;
    std::vector<Formula> S;
    Relation Q;                           // of M.frame
    std::vector<Obligation> dia_family;   // S order
    std::vector<Obligation> ex_family;    // S order

    std::vector<SelectedPoint> points;
    Relation Rk;                  // over ids; reflexive-transitive, sized frame.n
    std::vector<int> ek_parent;   // union-find over ids
    std::vector<CrossEdge> cross_edges;
    std::vector<std::string> log;
    int rounds = 0;

    int size() const { return int(points.size()); }
    int origin_of(int id) const { return points[id].origin; }
    std::optional<int> point_with_origin(int w) const;
    int ek_find(int id) const;
    bool ek_same(int a, int b) const { return ek_find(a) == ek_find(b); }
    void ek_union(int a, int b);
    std::vector<std::vector<int>> ek_clusters() const;

    int add_point(int origin, WorldSet clopen, PointKind kind);
    void add_rk_edge(int src, int dst);

    void check_invariants() const;  // throws InvariantError

    // Current selection as an MK-frame plus the transferred valuation.
    MKFrame current_frame() const;
    Valuation hat_valuation() const;
};

// State with the single root point: the lowest-index element of
// smax(v(~phi)), selection clopen v(~phi).
// InputError when phi is valid in m (nothing to refute).
FiltrationState select_root(const Model& m, const Formula& phi);

// Each returns whether the state changed. They run their worklist to
// fixpoint (newly added points are processed in the same call).
bool exists_step(FiltrationState& st);
bool diamond_step(FiltrationState& st);
bool commutativity_step(FiltrationState& st);

struct FiltrationStats {
    int rounds = 0;
    std::map<std::string, int> points_per_kind;
    int max_in_cluster_chain = 0;
    int skeleton_depth = 0;
    int cluster_count = 0;
};

struct FiltrationResult {
    MKFrame frame;
    Valuation v_hat;
    std::vector<int> origin;  // per result world
    Formula phi;
    std::vector<Formula> S;
    std::vector<SelectedPoint> points;
    std::vector<std::string> provenance_log;
    FiltrationStats stats;
};

// Rounds of (exists_step; diamond_step; commutativity_step) until a full
// round changes nothing. Requires an MGrz model refuting phi (InputError).
// The result classifies MGrz and refutes phi at world 0 (verified; failure
// is an InvariantError), and stays within the chain/cluster caps.
FiltrationResult selective_filtration(const Model& m, const Formula& phi);

struct TruthLemmaReport {
    struct Disagreement {
        int point;
        Formula psi;
        bool at_origin;
        bool at_copy;
    };
    std::vector<Disagreement> disagreements;
    bool ok() const { return disagreements.empty(); }
};

TruthLemmaReport verify_truth_lemma(const Model& m, const FiltrationResult& r);

struct BoundsReport {
    int in_cluster_chain = 0;
    std::uint64_t in_cluster_bound = 0;  // 2^|S|
    int skeleton_chain = 0;
    std::uint64_t skeleton_bound = 0;  // 2 * 2^|S|
    int max_cluster_size = 0;
    std::uint64_t cluster_bound = 0;  // (|S|+1)(1+|S|+...+|S|^(2^|S|-1)), saturating
    bool pass = false;
};

BoundsReport verify_bounds(const FiltrationResult& r);

// Saturating bound helpers (UINT64_MAX acts as infinity).
std::uint64_t chain_bound_in_cluster(int s_size);
std::uint64_t chain_bound_skeleton(int s_size);
std::uint64_t cluster_size_bound(int s_size);

}  // namespace mgrz
