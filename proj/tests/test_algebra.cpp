#include <doctest.h>

#include "mgrz/algebra.hpp"
#include "mgrz/decision.hpp"
#include "mgrz/errors.hpp"

#include "helpers.hpp"

using namespace mgrz;
using namespace mgrz::test;

TEST_CASE("clop_dual fixtures") {
    // 1 reflexive world: dia = ex = identity on the single atom.
    MKFrame one = make_frame(1, {}, {{0}});
    FiniteMMAlgebra a = clop_dual(one);
    CHECK(a.atoms == 1);
    CHECK(a.dia[0] == 1u);
    CHECK(a.ex[0] == 1u);

    // 2-chain x < y reflexive: dia(y) = {x,y}, dia(x) = {x}.
    FiniteMMAlgebra chain = clop_dual(two_chain());
    CHECK(chain.dia[1] == 0b11u);
    CHECK(chain.dia[0] == 0b01u);

    // Paper 4-point frame: ex(a) = {a,b}.
    FiniteMMAlgebra p4 = clop_dual(paper4_frame());
    CHECK(p4.ex[0] == 0b0011u);
}

TEST_CASE("uf_dual fixtures") {
    FiniteMMAlgebra a;
    a.atoms = 1;
    a.dia = {1};
    a.ex = {1};
    MKFrame f = uf_dual(a);
    CHECK(f.n == 1);
    CHECK(f.R.test(0, 0));
    CHECK(f.E.block_count() == 1);

    // Non-S5 ex operator: derived E is not an equivalence.
    FiniteMMAlgebra bad;
    bad.atoms = 2;
    bad.dia = {1, 2};
    bad.ex = {3, 2};  // 0 ~ 1 but not 1 ~ 0
    CHECK_THROWS_AS(uf_dual(bad), InputError);
    try {
        uf_dual(bad);
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("S5") != std::string::npos);
    }
}

TEST_CASE("round trips are identities on enumerated frames") {
    for (int n = 1; n <= 4; ++n)
        enumerate_frames(FrameClass::MK, n, false, [&](const MKFrame& f) {
            MKFrame back = uf_dual(clop_dual(f));
            CHECK(back == f);
            return true;
        });
    // Sampled MK frames at n = 5 (the exhaustive scan is test-budget bound).
    Rng rng(505);
    int found = 0;
    for (int t = 0; t < 20000 && found < 500; ++t) {
        int n = 5;
        Relation r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rng.chance(2)) r.set(i, j);
        std::vector<int> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = rng.below_int(3);
        MKFrame f(n, r, Partition::from_block_ids(ids));
        if (!validate_mk(f).mk.holds) continue;
        ++found;
        CHECK(uf_dual(clop_dual(f)) == f);
    }
    CHECK(found == 500);
}

TEST_CASE("algebra round trip for valid random algebras") {
    // Valid algebras: build from random MK frames (ex is then S5 and dia arbitrary).
    Rng rng(606);
    int checked = 0;
    for (int t = 0; t < 5000 && checked < 300; ++t) {
        int n = 1 + rng.below_int(5);
        Relation r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rng.chance(2)) r.set(i, j);
        std::vector<int> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = rng.below_int(n);
        MKFrame f(n, r, Partition::from_block_ids(ids));
        FiniteMMAlgebra a = clop_dual(f);
        ++checked;
        CHECK(clop_dual(uf_dual(a)) == a);
    }
    CHECK(checked == 300);
}

TEST_CASE("check_axioms fixtures") {
    // Identity operators satisfy everything.
    FiniteMMAlgebra id;
    id.atoms = 2;
    id.dia = {1, 2};
    id.ex = {1, 2};
    for (AlgebraClass c : {AlgebraClass::Modal, AlgebraClass::S4Dia, AlgebraClass::S5Ex,
                           AlgebraClass::MM, AlgebraClass::GrzDia})
        CHECK(check_axioms(id, c).pass);

    // clop_dual of an MGrz frame passes all classes.
    FiniteMMAlgebra p4 = clop_dual(paper4_frame());
    for (AlgebraClass c : {AlgebraClass::Modal, AlgebraClass::S4Dia, AlgebraClass::S5Ex,
                           AlgebraClass::MM, AlgebraClass::GrzDia})
        CHECK(check_axioms(p4, c).pass);

    // X^2 frame: S4 passes, Grz fails at witness element {a}.
    FiniteMMAlgebra x2 = clop_dual(x2_frame());
    CHECK(check_axioms(x2, AlgebraClass::S4Dia).pass);
    AlgebraReport grz = check_axioms(x2, AlgebraClass::GrzDia);
    CHECK(!grz.pass);
    REQUIRE(grz.axioms.back().witness.has_value());
    CHECK(*grz.axioms.back().witness == 1u);
}

TEST_CASE("duality: frame class flags match algebra checks") {
    // Exhaustive over all (relation, partition) pairs for n <= 3 plus all MK
    // frames at n = 4; MS4 <-> S4(dia)+S5(ex)+MM, MGrz <-> + Grz(dia).
    auto check_frame = [](const MKFrame& f) {
        FiniteMMAlgebra a = clop_dual(f);
        FrameClassReport cls = classify(f);
        bool mm_pass = check_axioms(a, AlgebraClass::MM).pass;
        bool s4_pass = check_axioms(a, AlgebraClass::S4Dia).pass;
        bool grz_pass = check_axioms(a, AlgebraClass::GrzDia).pass;
        CHECK(mm_pass == cls.mk.holds);
        CHECK((s4_pass && mm_pass) == cls.ms4.holds);
        CHECK((grz_pass && mm_pass) == cls.mgrz.holds);
    };
    for (int n = 1; n <= 3; ++n) {
        auto parts = all_partitions(n);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
            Relation r(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if ((mask >> (i * n + j)) & 1) r.set(i, j);
            for (const Partition& p : parts) check_frame(MKFrame(n, r, p));
        }
    }
    enumerate_frames(FrameClass::MK, 4, false, [&](const MKFrame& f) {
        check_frame(f);
        return true;
    });
}

TEST_CASE("caps") {
    FiniteMMAlgebra big;
    big.atoms = 17;
    big.dia.assign(17, 0);
    big.ex.assign(17, 0);
    CHECK_THROWS_AS(check_axioms(big, AlgebraClass::S4Dia), BudgetError);
}
