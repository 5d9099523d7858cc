#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towers/transversal.hpp"

using namespace towers;

TEST_CASE("split sigma_v transversal at p=2, m=1, n=6") {
    const RingSpec& R = RingSpec::split(2, 6);
    TowerContext T = make_tower(FieldCase::Split, 2, 1, 6, R);
    Transversal t = transversal_sigma(T);
    CHECK(t.reps.size() == 1024);
    // v = 0 gives the identity
    CHECK(t.reps.front() == Mat::identity(R, 4));
    for (const Mat& g : t.reps) CHECK(gu_multiplier(g)->is_one());
    CheckReport rep = verify_transversal(t);
    CHECK(rep.pass);
}

TEST_CASE("duplicated representative fails pairwise distinctness") {
    const RingSpec& R = RingSpec::split(2, 6);
    TowerContext T = make_tower(FieldCase::Split, 2, 1, 6, R);
    Transversal t = transversal_sigma(T);
    t.reps[5] = t.reps[9];
    t.pattern_side[5] = t.pattern_side[9];
    VerifyOptions vo;
    vo.check_completeness = false;  // isolate check (b)
    CheckReport rep = verify_transversal(t, vo);
    CHECK_FALSE(rep.pass);
    CHECK(rep.computed["coset_collisions"].get<size_t>() == 1);
}

TEST_CASE("inert sigma_v enforces the two side conditions") {
    const RingSpec& R = RingSpec::inert_field(2, 6, -3);
    TowerContext T = make_tower(FieldCase::Inert, 2, 1, 6, R);
    Transversal t = transversal_sigma(T);
    CHECK(t.reps.size() == 1024);
    for (const Mat& g : t.reps) {
        REQUIRE(T.V.membership(g));
        CHECK(gu_multiplier(g)->is_one());
        // entry (3,4) = -p^m conj(k1) and p^{2m} r4 = conj(p^{2m} r1) - conj(p^m k1) p^m r3
        CHECK(g.at(2, 3) == -conj(g.at(0, 1)));
        CHECK(g.at(1, 3) == conj(g.at(0, 2)) - conj(g.at(0, 1)) * g.at(1, 2));
    }
}
