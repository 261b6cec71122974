#include "mgrz/filtration.hpp"

#include <algorithm>
#include <limits>

#include "mgrz/errors.hpp"

namespace mgrz {

namespace {

std::string set_to_string(const WorldSet& s) {
    std::string out = "{";
    bool first = true;
    for (int w = s.first(); w >= 0; w = s.next(w)) {
        if (!first) out += ",";
        out += std::to_string(w);
        first = false;
    }
    return out + "}";
}

std::unordered_map<Formula, WorldSet, FormulaHash> extensions(const Model& m,
                                                              const std::vector<Formula>& s) {
    std::unordered_map<Formula, WorldSet, FormulaHash> ext;
    for (const Formula& f : s) ext.emplace(f, eval(m, f));
    return ext;
}

std::vector<Obligation> build_family(const Model& m, const std::vector<Formula>& s, bool diamonds) {
    auto ext = extensions(m, s);
    std::vector<Obligation> fam;
    for (const Formula& f : s) {
        Op direct = diamonds ? Op::Dia : Op::Ex;
        Op boxed = diamonds ? Op::Box : Op::Fa;
        if (f.op() == direct) {
            Obligation o;
            o.member = f;
            o.display = f;
            o.dual = false;
            o.modal_ext = ext.at(f);
            o.body_ext = ext.at(f.lhs());
            fam.push_back(std::move(o));
        } else if (f.op() == boxed) {
            Obligation o;
            o.member = f;
            o.display = diamonds ? Formula::dia(Formula::not_(f.lhs()))
                                 : Formula::ex(Formula::not_(f.lhs()));
            o.dual = true;
            o.modal_ext = ~ext.at(f);
            o.body_ext = ~ext.at(f.lhs());
            fam.push_back(std::move(o));
        }
    }
    return fam;
}

}  // namespace

std::string point_kind_name(PointKind k) {
    switch (k) {
        case PointKind::Root: return "root";
        case PointKind::ExistsWitness: return "exists_witness";
        case PointKind::DiaHorizontal: return "dia_horizontal";
        case PointKind::DiaVertical: return "dia_vertical";
        case PointKind::Commutativity: return "commutativity";
    }
    return "?";
}

WitnessSets witness_sets(const Model& m, const std::vector<Formula>& s) {
    auto ext = extensions(m, s);
    WitnessSets w;
    w.ex.resize(m.frame.n);
    w.dia.resize(m.frame.n);
    for (const Formula& f : s) {
        if (f.op() != Op::Ex && f.op() != Op::Dia) continue;
        const WorldSet& whole = ext.at(f);
        const WorldSet& body = ext.at(f.lhs());
        for (int x = 0; x < m.frame.n; ++x)
            if (whole.test(x) && !body.test(x))
                (f.op() == Op::Ex ? w.ex : w.dia)[x].push_back(f);
    }
    return w;
}

Partition sim_s(const Model& m, const std::vector<Formula>& s) {
    auto ext = extensions(m, s);
    std::vector<int> ids(m.frame.n);
    for (int x = 0; x < m.frame.n; ++x) {
        int rep = x;
        for (int y = 0; y < x; ++y) {
            bool same = true;
            for (const Formula& f : s)
                if (ext.at(f).test(x) != ext.at(f).test(y)) {
                    same = false;
                    break;
                }
            if (same) {
                rep = ids[y];
                break;
            }
        }
        ids[x] = rep;
    }
    return Partition::from_block_ids(ids);
}

std::optional<int> FiltrationState::point_with_origin(int w) const {
    for (const SelectedPoint& p : points)
        if (p.origin == w) return p.id;
    return std::nullopt;
}

int FiltrationState::ek_find(int id) const {
    while (ek_parent[id] != id) id = ek_parent[id];
    return id;
}

void FiltrationState::ek_union(int a, int b) {
    a = ek_find(a);
    b = ek_find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    ek_parent[b] = a;
}

std::vector<std::vector<int>> FiltrationState::ek_clusters() const {
    std::vector<std::vector<int>> by_rep(size());
    for (int i = 0; i < size(); ++i) by_rep[ek_find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& c : by_rep)
        if (!c.empty()) out.push_back(std::move(c));
    return out;
}

int FiltrationState::add_point(int origin, WorldSet clopen, PointKind kind) {
    if (point_with_origin(origin))
        throw InvariantError("filtration: duplicate selection of origin " + std::to_string(origin));
    if (!smax_set(M.frame, clopen).test(origin))
        throw InvariantError("filtration: selected origin " + std::to_string(origin) +
                             " is not strongly maximal in its selection clopen");
    int id = size();
    points.push_back({id, origin, clopen, kind});
    Rk.set(id, id);
    ek_parent.push_back(id);
    // Keep Ek agreeing with E on origins in both directions.
    for (int j = 0; j < id; ++j)
        if (M.frame.E.same(points[j].origin, origin)) {
            ek_union(j, id);
            break;
        }
    log.push_back("point " + std::to_string(id) + " kind=" + point_kind_name(kind) +
                  " origin=" + std::to_string(origin) + " clopen=" + set_to_string(clopen));
    return id;
}

void FiltrationState::add_rk_edge(int src, int dst) {
    Rk.set(src, dst);
    int k = size();
    for (int mid = 0; mid < k; ++mid)
        for (int i = 0; i < k; ++i)
            if (Rk.test(i, mid)) Rk.row(i) |= Rk.row(mid);
}

void FiltrationState::check_invariants() const {
    const MKFrame& F = M.frame;
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j) {
            if (i != j && points[i].origin == points[j].origin)
                throw InvariantError("filtration invariant: duplicate origins");
            bool ek = ek_same(i, j);
            bool e = F.E.same(points[i].origin, points[j].origin);
            if (ek != e) throw InvariantError("filtration invariant: Ek/E disagreement");
            if (i == j) continue;
            if (Rk.test(i, j)) {
                int u = points[i].origin, w = points[j].origin;
                bool case_r = F.R.test(u, w) && e;
                bool case_q = Q.test(u, w) && !e;
                if (!case_r && !case_q)
                    throw InvariantError("filtration invariant: Rk pair violates origin condition");
                if (Rk.test(j, i)) throw InvariantError("filtration invariant: Rk not antisymmetric");
            }
        }
    for (int i = 0; i < size(); ++i) {
        if (!Rk.test(i, i)) throw InvariantError("filtration invariant: Rk not reflexive");
        if (!smax_set(F, points[i].selection_clopen).test(points[i].origin))
            throw InvariantError("filtration invariant: origin not smax in its clopen");
        for (int j = 0; j < size(); ++j)
            if (Rk.test(i, j) && !Rk.row(j).subset_of(Rk.row(i)))
                throw InvariantError("filtration invariant: Rk not transitive");
    }
}

MKFrame FiltrationState::current_frame() const {
    int k = size();
    MKFrame f;
    f.n = k;
    f.R = Relation(k);
    std::vector<int> ids(k);
    for (int i = 0; i < k; ++i) {
        ids[i] = ek_find(i);
        for (int j = 0; j < k; ++j)
            if (Rk.test(i, j)) f.R.set(i, j);
    }
    f.E = Partition::from_block_ids(ids);
    return f;
}

Valuation FiltrationState::hat_valuation() const {
    Valuation v;
    for (const Formula& f : S) {
        if (f.op() != Op::Letter) continue;
        WorldSet orig = M.letter_extension(f.name());
        WorldSet s(size());
        for (int i = 0; i < size(); ++i)
            if (orig.test(points[i].origin)) s.set(i);
        v[f.name()] = s;
    }
    return v;
}

FiltrationState select_root(const Model& m, const Formula& phi) {
    FiltrationState st;
    st.M = m;
    st.phi = phi;
    st.S = subformula_closure(phi);
    st.Q = q_relation(m.frame);
    st.dia_family = build_family(m, st.S, true);
    st.ex_family = build_family(m, st.S, false);
    st.Rk = Relation(m.frame.n);

    WorldSet not_phi = ~eval(m, phi);
    if (not_phi.none()) throw InputError("select_root: formula is valid in the model; nothing to refute");
    WorldSet cand = smax_set(m.frame, not_phi);
    if (cand.none())
        throw InvariantError("select_root: smax of v(~phi) is empty on an MGrz model");
    st.add_point(cand.first(), not_phi, PointKind::Root);
    return st;
}

bool exists_step(FiltrationState& st) {
    const MKFrame& F = st.M.frame;
    bool changed = false;
    for (std::size_t i = 0; i < st.points.size(); ++i) {
        int t = st.points[i].origin;
        for (const Obligation& d : st.ex_family) {
            if (!d.active_at(t)) continue;
            // Already satisfied inside the Ek-cluster?
            bool satisfied = false;
            for (int j = 0; j < st.size() && !satisfied; ++j)
                if (st.ek_same(int(i), j) && d.body_ext.test(st.points[j].origin)) satisfied = true;
            if (satisfied) continue;
            // Reuse an existing selected point with an E-related origin.
            int reuse = -1;
            for (int j = 0; j < st.size() && reuse < 0; ++j)
                if (F.E.same(t, st.points[j].origin) && d.body_ext.test(st.points[j].origin)) reuse = j;
            if (reuse >= 0) {
                st.ek_union(int(i), reuse);
                st.log.push_back("ek-link " + std::to_string(i) + "~" + std::to_string(reuse) +
                                 " witness=" + render_formula(d.display));
                changed = true;
                continue;
            }
            // Fresh selection via the horizontal-witness lemma.
            WorldSet u = st.points[i].selection_clopen;
            WorldSet clopen = F.E.saturate(u) & d.body_ext;
            WorldSet cand = smax_set(F, clopen) & F.E.class_of(t) & d.body_ext;
            if (cand.none())
                throw InvariantError("exists_step: lemma-guaranteed candidate set is empty");
            int w = cand.first();
            int id = st.add_point(w, clopen, PointKind::ExistsWitness);
            st.ek_union(int(i), id);
            st.log.back() += " witness=" + render_formula(d.display) + " for=" + std::to_string(i);
            changed = true;
        }
    }
    st.check_invariants();
    return changed;
}

bool diamond_step(FiltrationState& st) {
    const MKFrame& F = st.M.frame;
    bool changed = false;
    for (std::size_t i = 0; i < st.points.size(); ++i) {
        int y = st.points[i].origin;
        for (const Obligation& d : st.dia_family) {
            if (!d.active_at(y)) continue;
            bool satisfied = false;
            for (int j = 0; j < st.size() && !satisfied; ++j)
                if (st.Rk.test(int(i), j) && d.body_ext.test(st.points[j].origin)) satisfied = true;
            if (satisfied) continue;

            WorldSet a_set = d.modal_ext;
            for (const Obligation& d2 : st.dia_family)
                if (!d2.modal_ext.test(y)) a_set &= ~d2.modal_ext;
            WorldSet smax_a = smax_set(F, a_set);
            WorldSet zcand = st.Q.row(y) & smax_a & d.body_ext;
            if (zcand.none())
                throw InvariantError("diamond_step: Q[y] ∩ smax(A) candidate set is empty");
            int z = zcand.first();

            if (F.E.same(y, z)) {
                // Horizontal: witness inside the E-cluster.
                int reuse = -1;
                for (int j = 0; j < st.size() && reuse < 0; ++j) {
                    int u = st.points[j].origin;
                    if (F.R.test(y, u) && F.E.same(y, u) && smax_a.test(u) && d.body_ext.test(u))
                        reuse = j;
                }
                int id;
                if (reuse >= 0) {
                    id = reuse;
                } else {
                    WorldSet ucand = smax_a & max_set(F, d.body_ext) & F.E.class_of(y) & F.R.row(y);
                    if (ucand.none())
                        throw InvariantError("diamond_step: horizontal candidate set is empty");
                    id = st.add_point(ucand.first(), a_set, PointKind::DiaHorizontal);
                }
                st.add_rk_edge(int(i), id);
                st.ek_union(int(i), id);
                st.log.push_back("edge " + std::to_string(i) + "->" + std::to_string(id) +
                                 " kind=horizontal witness=" + render_formula(d.display));
            } else {
                // Vertical: witness outside the E-cluster; this edge realizes
                // a Q-arrow of the original frame.
                int reuse = -1;
                for (int j = 0; j < st.size() && reuse < 0; ++j) {
                    int zz = st.points[j].origin;
                    if (st.Q.test(y, zz) && !F.E.same(y, zz) && smax_a.test(zz) && d.body_ext.test(zz))
                        reuse = j;
                }
                int id = reuse >= 0 ? reuse : st.add_point(z, a_set, PointKind::DiaVertical);
                st.add_rk_edge(int(i), id);
                st.cross_edges.push_back({int(i), id, d.display, a_set});
                st.log.push_back("edge " + std::to_string(i) + "->" + std::to_string(id) +
                                 " kind=vertical witness=" + render_formula(d.display) +
                                 " A=" + set_to_string(a_set));
            }
            changed = true;
        }
    }
    st.check_invariants();
    return changed;
}

bool commutativity_step(FiltrationState& st) {
    const MKFrame& F = st.M.frame;
    bool changed = false;
    while (true) {
        // Lexicographically first violating triple that carries provenance.
        bool any_violation = false;
        bool fixed_one = false;
        for (int t = 0; t < st.size() && !fixed_one; ++t)
            for (int u = 0; u < st.size() && !fixed_one; ++u) {
                if (!st.ek_same(t, u)) continue;
                for (int w = 0; w < st.size() && !fixed_one; ++w) {
                    if (!st.Rk.test(u, w) || st.ek_same(u, w)) continue;
                    bool has_b = false;
                    for (int b = 0; b < st.size() && !has_b; ++b)
                        if (st.Rk.test(t, b) && st.ek_same(b, w)) has_b = true;
                    if (has_b) continue;
                    any_violation = true;
                    std::optional<CrossEdge> entry;  // copy: cross_edges grows below
                    for (const CrossEdge& ce : st.cross_edges)
                        if (st.ek_same(ce.src, u) && st.ek_same(ce.dst, w)) {
                            entry = ce;
                            break;
                        }
                    // Triples whose cluster pair only arises by composition
                    // are resolved by fixing the provenanced pairs first.
                    if (!entry) continue;

                    WorldSet clopen = F.E.saturate(entry->a_set);
                    WorldSet cand = smax_set(F, clopen) & F.R.row(st.points[t].origin) &
                                    F.E.class_of(st.points[entry->dst].origin);
                    if (cand.none())
                        throw InvariantError("commutativity_step: vert(5) candidate set is empty");
                    int b_origin = cand.first();
                    int id;
                    if (auto existing = st.point_with_origin(b_origin)) {
                        id = *existing;
                    } else {
                        id = st.add_point(b_origin, clopen, PointKind::Commutativity);
                    }
                    st.add_rk_edge(t, id);
                    st.ek_union(id, entry->dst);
                    st.cross_edges.push_back({t, id, entry->witness, entry->a_set});
                    st.log.push_back("edge " + std::to_string(t) + "->" + std::to_string(id) +
                                     " kind=commutativity witness=" + render_formula(entry->witness));
                    fixed_one = true;
                    changed = true;
                }
            }
        if (!fixed_one) {
            if (any_violation)
                throw InvariantError(
                    "commutativity_step: violating cluster pair has no cross-edge provenance");
            break;
        }
    }
    st.check_invariants();
    return changed;
}

std::uint64_t chain_bound_in_cluster(int s_size) {
    if (s_size >= 64) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << s_size;
}

std::uint64_t chain_bound_skeleton(int s_size) {
    if (s_size >= 63) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{2} << s_size;
}

std::uint64_t cluster_size_bound(int s_size) {
    const std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
    if (s_size == 0) return 1;
    std::uint64_t terms = chain_bound_in_cluster(s_size);  // 2^|S| summands
    std::uint64_t sum = 0, pow = 1;
    for (std::uint64_t i = 0; i < terms; ++i) {
        if (sum > inf - pow) return inf;
        sum += pow;
        if (pow > inf / std::uint64_t(s_size)) return inf;
        pow *= std::uint64_t(s_size);
        if (i > 128) return inf;  // saturated long ago for any realistic |S|
    }
    std::uint64_t factor = std::uint64_t(s_size) + 1;
    if (sum > inf / factor) return inf;
    return factor * sum;
}

namespace {

FiltrationStats compute_stats(const FiltrationState& st, const MKFrame& frame) {
    FiltrationStats stats;
    stats.rounds = st.rounds;
    for (const SelectedPoint& p : st.points) stats.points_per_kind[point_kind_name(p.kind)]++;
    auto clusters = st.ek_clusters();
    stats.cluster_count = int(clusters.size());
    for (const auto& c : clusters) {
        WorldSet within(frame.n);
        for (int id : c) within.set(id);
        stats.max_in_cluster_chain = std::max(stats.max_in_cluster_chain, longest_chain(frame.R, within));
    }
    Skeleton sk = e_skeleton(frame);
    stats.skeleton_depth = longest_chain(sk.base.R, WorldSet::full(sk.base.n));
    return stats;
}

void enforce_caps(const FiltrationState& st) {
    int s_size = int(st.S.size());
    std::uint64_t cluster_cap = cluster_size_bound(s_size);
    for (const auto& c : st.ek_clusters())
        if (std::uint64_t(c.size()) > cluster_cap)
            throw InvariantError("filtration: cluster size exceeds the paper bound");
    MKFrame f = st.current_frame();
    Skeleton sk = e_skeleton(f);
    if (std::uint64_t(longest_chain(sk.base.R, WorldSet::full(sk.base.n))) >
        chain_bound_skeleton(s_size))
        throw InvariantError("filtration: skeleton depth exceeds the paper bound");
}

}  // namespace

FiltrationResult selective_filtration(const Model& m, const Formula& phi) {
    if (!classify(m.frame).mgrz.holds)
        throw InputError("selective_filtration: the model's frame is not an MGrz-frame");

    FiltrationState st = select_root(m, phi);
    while (true) {
        bool changed = false;
        changed |= exists_step(st);
        changed |= diamond_step(st);
        changed |= commutativity_step(st);
        enforce_caps(st);
        if (!changed) break;
        ++st.rounds;
    }

    FiltrationResult r;
    r.frame = st.current_frame();
    r.v_hat = st.hat_valuation();
    for (const SelectedPoint& p : st.points) r.origin.push_back(p.origin);
    r.phi = phi;
    r.S = st.S;
    r.points = st.points;
    r.provenance_log = st.log;
    r.stats = compute_stats(st, r.frame);

    if (!classify(r.frame).mgrz.holds)
        throw InvariantError("selective_filtration: result frame is not MGrz");
    if (eval(Model(r.frame, r.v_hat), phi).test(0))
        throw InvariantError("selective_filtration: result does not refute phi at the root");
    return r;
}

TruthLemmaReport verify_truth_lemma(const Model& m, const FiltrationResult& r) {
    TruthLemmaReport rep;
    Model hat(r.frame, r.v_hat);
    for (const Formula& psi : r.S) {
        WorldSet orig = eval(m, psi);
        WorldSet copy = eval(hat, psi);
        for (int i = 0; i < r.frame.n; ++i)
            if (orig.test(r.origin[i]) != copy.test(i))
                rep.disagreements.push_back({i, psi, orig.test(r.origin[i]), copy.test(i)});
    }
    return rep;
}

BoundsReport verify_bounds(const FiltrationResult& r) {
    BoundsReport rep;
    int s_size = int(r.S.size());
    rep.in_cluster_bound = chain_bound_in_cluster(s_size);
    rep.skeleton_bound = chain_bound_skeleton(s_size);
    rep.cluster_bound = cluster_size_bound(s_size);

    for (int b = 0; b < r.frame.E.block_count(); ++b) {
        const WorldSet& cluster = r.frame.E.block(b);
        rep.in_cluster_chain = std::max(rep.in_cluster_chain, longest_chain(r.frame.R, cluster));
        rep.max_cluster_size = std::max(rep.max_cluster_size, cluster.count());
    }
    Skeleton sk = e_skeleton(r.frame);
    rep.skeleton_chain = longest_chain(sk.base.R, WorldSet::full(sk.base.n));

    rep.pass = std::uint64_t(rep.in_cluster_chain) <= rep.in_cluster_bound &&
               std::uint64_t(rep.skeleton_chain) <= rep.skeleton_bound &&
               std::uint64_t(rep.max_cluster_size) <= rep.cluster_bound;
    return rep;
}

}  // namespace mgrz
