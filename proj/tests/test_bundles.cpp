#include <doctest.h>

#include "mgrz/bundle.hpp"
#include "mgrz/decision.hpp"
#include "mgrz/errors.hpp"

#include "helpers.hpp"

using namespace mgrz;
using namespace mgrz::test;

TEST_CASE("bundle_of_frame fixtures") {
    // E identity: pi bijective, base isomorphic to total.
    KripkeBundle idb = bundle_of_frame(two_chain());
    CHECK(idb.base.n == 2);
    CHECK(idb.pi == std::vector<int>{0, 1});
    CHECK(idb.base.R == idb.total.R);

    // Paper 4-point frame: 2 base worlds, fibers (2,2).
    KripkeBundle p4 = bundle_of_frame(paper4_frame());
    CHECK(p4.base.n == 2);
    CHECK(p4.fiber(0).count() == 2);
    CHECK(p4.fiber(1).count() == 2);

    // Barcan countermodel: fibers (2,1).
    KripkeBundle bb = bundle_of_frame(barcan_frame());
    CHECK(bb.fiber(0).count() == 2);
    CHECK(bb.fiber(1).count() == 1);

    CHECK_THROWS_AS(bundle_of_frame(make_frame(2, {{0, 1}}, {{0, 1}}, false)), InputError);
}

TEST_CASE("frame_of_bundle fixtures") {
    // pi bijective -> E identity.
    KripkeBundle idb = bundle_of_frame(two_chain());
    CHECK(frame_of_bundle(idb).E == Partition::identity(2));

    // section-2 bundle: one block {a, b}.
    CHECK(frame_of_bundle(sec2_bundle()).E == Partition::single_block(2));

    // F(B(f)).E equals the original E for every MK-frame (eta is identity).
    for (int n = 1; n <= 4; ++n)
        enumerate_frames(FrameClass::MK, n, false, [&](const MKFrame& f) {
            CHECK(frame_of_bundle(bundle_of_frame(f)).E == f.E);
            return true;
        });
}

TEST_CASE("check_bundle_morphism") {
    KripkeBundle b = sec2_bundle();
    // identity morphism
    CHECK(check_bundle_morphism(b, b, {0, 1}, {0}).ok());

    // Collapse of the 2-point fiber onto a 1-point fiber over one world.
    KripkeBundle one;
    one.total = KripkeFrame(1, Relation::identity(1));
    one.base = KripkeFrame(1, Relation::identity(1));
    one.pi = {0};
    MorphismReport collapse = check_bundle_morphism(b, one, {0, 0}, {0});
    CHECK(collapse.ok());

    // A fiber-injective non-surjective map fails the fiberwise clause.
    MorphismReport emb = check_bundle_morphism(one, b, {0}, {0});
    CHECK(!emb.ok());
    CHECK(!emb.fiberwise_onto);
    REQUIRE(!emb.witnesses.empty());
    CHECK(emb.witnesses.back().condition == "fiberwise surjection");

    // A non-commuting square is reported as such.
    KripkeBundle two_fibers;
    two_fibers.total = KripkeFrame(2, Relation::identity(2));
    two_fibers.base = KripkeFrame(2, Relation::identity(2));
    two_fibers.pi = {0, 1};
    MorphismReport square = check_bundle_morphism(two_fibers, two_fibers, {0, 1}, {1, 0});
    CHECK(!square.ok());
    CHECK(!square.square_commutes);
}

TEST_CASE("functoriality on enumerated MK-frame morphisms") {
    // For every pair of small MK-frames and every map f that is a p-morphism
    // for both R and E, the induced pair (f, f0) is a bundle morphism.
    auto frames2 = enumerate_frames_list(FrameClass::MK, 2);
    auto is_mk_morphism = [](const MKFrame& a, const MKFrame& b, const std::vector<int>& f) {
        for (int x = 0; x < a.n; ++x) {
            WorldSet rimg(b.n), eimg(b.n);
            for (int y = a.R.row(x).first(); y >= 0; y = a.R.row(x).next(y)) rimg.set(f[y]);
            for (int y = a.E.class_of(x).first(); y >= 0; y = a.E.class_of(x).next(y)) eimg.set(f[y]);
            if (!(rimg == b.R.row(f[x]))) return false;
            WorldSet bcls(b.n);
            for (int y = b.E.class_of(f[x]).first(); y >= 0; y = b.E.class_of(f[x]).next(y))
                bcls.set(y);
            if (!(eimg == bcls)) return false;
        }
        return true;
    };
    auto check_all_maps = [&](const MKFrame& a, const MKFrame& b) {
        int found = 0;
        std::vector<int> f(a.n, 0);
        while (true) {
            if (is_mk_morphism(a, b, f)) {
                ++found;
                KripkeBundle ba = bundle_of_frame(a), bb = bundle_of_frame(b);
                // induced base map f0([x]) = [f(x)]
                std::vector<int> f0(ba.base.n, -1);
                for (int x = 0; x < a.n; ++x) f0[ba.pi[x]] = bb.pi[f[x]];
                CHECK(check_bundle_morphism(ba, bb, f, f0).ok());
            }
            int i = 0;
            while (i < a.n && ++f[i] == b.n) f[i++] = 0;
            if (i == a.n) break;
        }
        return found;
    };

    int morphisms = 0;
    for (const MKFrame& a : frames2)
        for (const MKFrame& b : frames2) morphisms += check_all_maps(a, b);
    CHECK(morphisms > 0);

    // Sampled frame pairs at n = 3, all 27 maps each.
    auto frames3 = enumerate_frames_list(FrameClass::MK, 3);
    Rng rng(909);
    int morphisms3 = 0;
    for (int t = 0; t < 300; ++t) {
        const MKFrame& a = frames3[rng.below(frames3.size())];
        const MKFrame& b = frames3[rng.below(frames3.size())];
        morphisms3 += check_all_maps(a, b);
    }
    CHECK(morphisms3 > 0);
}

TEST_CASE("roundtrip_iso_check") {
    // Frames: exhaustive n <= 4.
    for (int n = 1; n <= 4; ++n)
        enumerate_frames(FrameClass::MK, n, false, [&](const MKFrame& f) {
            CHECK(roundtrip_iso_check(f).ok);
            return true;
        });

    // Bundles: 1-point bundle and all bundles with |X| <= 4.
    KripkeBundle one;
    one.total = KripkeFrame(1, Relation::identity(1));
    one.base = KripkeFrame(1, Relation::identity(1));
    one.pi = {0};
    CHECK(roundtrip_iso_check(one).ok);

    long long bundles = 0;
    for (int n = 1; n <= 4; ++n)
        for_each_bundle(n, [&](const KripkeBundle& b) {
            ++bundles;
            CHECK(roundtrip_iso_check(b).ok);
        });
    CHECK(bundles > 1000);
}

TEST_CASE("nth_level") {
    KripkeBundle b = sec2_bundle();
    // level 0 = base frame verbatim
    LevelFrame l0 = nth_level(b, 0);
    CHECK(l0.world_count() == 1);
    CHECK(l0.related(0, 0));

    // level 1 = (X, R) exactly
    LevelFrame l1 = nth_level(b, 1);
    KripkeFrame k1 = l1.materialize();
    CHECK(k1.n == 2);
    CHECK(k1.R == b.total.R);

    // level 2: (a,a) R2 (b,b) holds; (a,a) R2 (a,b) violates subordination.
    LevelFrame l2 = nth_level(b, 2);
    auto idx = [&](int x, int y) { return (long long)x * 2 + y; };
    CHECK(l2.related(idx(0, 0), idx(1, 1)));
    CHECK(!l2.related(idx(0, 0), idx(0, 1)));
    CHECK(!l2.related(idx(0, 0), idx(1, 0)));

    // The materialized relation never relates sub-violating tuples.
    KripkeFrame k2 = l2.materialize();
    for (long long i = 0; i < l2.world_count(); ++i)
        for (long long j = 0; j < l2.world_count(); ++j) {
            CHECK(k2.R.test(int(i), int(j)) == l2.related(i, j));
            auto x = l2.tuple(i), y = l2.tuple(j);
            if (x[0] == x[1] && y[0] != y[1]) CHECK(!k2.R.test(int(i), int(j)));
        }

    CHECK_THROWS_AS(nth_level(b, 30), BudgetError);
}

TEST_CASE("bounded_strong_validity") {
    KripkeBundle b = sec2_bundle();
    Formula t_axiom = parse_formula("<>p -> p");

    // valid at level 0 (the 1-point reflexive base), fails at level 1 (a R b)
    StrongValidityReport r = bounded_strong_validity(b, t_axiom, 1);
    CHECK(!r.holds_up_to);
    REQUIRE(r.failure.has_value());
    CHECK(r.failure->level == 1);
    CHECK(r.levels[0].valid);

    StrongValidityReport r0 = bounded_strong_validity(b, t_axiom, 0);
    CHECK(r0.holds_up_to);

    // Levels of bundles over finite MGrz frames stay posets: S4 + Grz axioms
    // hold up to level 3.
    for (const char* ax : {"[]p -> p", "[]p -> [][]p", "[]([](p -> []p) -> p) -> p"}) {
        Formula f = parse_formula(ax);
        for (const MKFrame& fr : {two_chain(), paper4_frame(), barcan_frame()}) {
            KripkeBundle bf = bundle_of_frame(fr);
            int max_level = fr.n <= 2 ? 3 : 2;  // keep the valuation budget sane
            StrongValidityReport rep = bounded_strong_validity(bf, f, max_level, 64, 1 << 20, 1 << 12);
            CHECK(rep.holds_up_to);
        }
    }

    CHECK_THROWS_AS(bounded_strong_validity(b, parse_formula("Ep -> p"), 1), InputError);
}
