#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towers/lift.hpp"

using namespace towers;

TEST_CASE("orders by lifting match brute force on small GL2") {
    // GL2(Z/4) = 96, by kernel lifting and by filtering all 256 matrices
    {
        const RingSpec& R = RingSpec::rational(2, 2);
        SubgroupSpec S = full_spec(GroupKind::GL, 2, R);
        CHECK(subgroup_order(S) == 96);
        CHECK(brute_force_members(S, 1000).size() == 96);
        CHECK(enumerate_members(S, 1000).size() == 96);
    }
    {
        const RingSpec& R = RingSpec::rational(3, 2);
        SubgroupSpec S = full_spec(GroupKind::GL, 2, R);
        CHECK(subgroup_order(S) == 3888);  // 48 * 3^4
        CHECK(brute_force_members(S, 10000).size() == 3888);
    }
    {
        const RingSpec& R = RingSpec::rational(3, 1);
        SubgroupSpec S = full_spec(GroupKind::GL, 2, R);
        CHECK(subgroup_order(S) == 48);
    }
}

TEST_CASE("GSp4 orders") {
    {
        const RingSpec& R = RingSpec::rational(2, 1);
        SubgroupSpec S = full_spec(GroupKind::GSp, 4, R);
        CHECK(subgroup_order(S) == 720);
        CHECK(brute_force_members(S, 100000).size() == 720);
    }
    {
        // full GSp4 image at p=3, K=2: |GSp4(F3)| * 3^11 (11-dim similitude algebra)
        const RingSpec& R = RingSpec::rational(3, 2);
        SubgroupSpec S = full_spec(GroupKind::GSp, 4, R);
        BigInt expect = BigInt(103680);
        for (int i = 0; i < 11; ++i) expect *= 3;
        CHECK(subgroup_order(S) == expect);
        CHECK(classical_order(GroupKind::GSp, 4, R) == expect);
        // the level-2 kernel is the 11-dimensional similitude Lie algebra
        auto lvl1 = level1_enumerate(S, {200000, false, 2, 0});
        FpSystem sys = level_system(S, lvl1.members.front(), 2);
        CHECK(sys.kernel_dim() == 11);
    }
}

TEST_CASE("borel order in GL2(F3)") {
    const RingSpec& R = RingSpec::rational(3, 1);
    auto [upper, lower] = borel_specs(GroupKind::GL, 2, R);
    CHECK(subgroup_order(upper) == 12);
    CHECK(subgroup_order(lower) == 12);
}

TEST_CASE("u1 order and index in GSp4(F2)") {
    const RingSpec& R = RingSpec::rational(2, 1);
    SubgroupSpec amb = full_spec(GroupKind::GSp, 4, R);
    SubgroupSpec u1 = u1_spec(2, 1, R);
    CHECK(subgroup_order(u1) == 48);
    CHECK(subgroup_index(amb, u1) == 15);
}

TEST_CASE("tower index multiplicativity") {
    const RingSpec& R = RingSpec::rational(2, 3);
    SubgroupSpec A = full_spec(GroupKind::GL, 2, R);
    SubgroupSpec B = u1_spec(1, 1, R);
    SubgroupSpec C = u1_spec(1, 3, R);
    BigInt ab = subgroup_index(A, B), bc = subgroup_index(B, C), ac = subgroup_index(A, C);
    CHECK(ac == ab * bc);
}

TEST_CASE("samplers produce members") {
    const RingSpec& R = RingSpec::inert_field(2, 4, -3);
    SubgroupSpec S = v_nm_spec(4, 1, R);
    auto lvl1 = level1_enumerate(S, {});
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        Mat g = sample_member(S, rng, lvl1.members);
        CHECK(S.membership(g));
    }
    auto batch = sample_members(S, 20, 99);
    for (const Mat& g : batch) CHECK(S.membership(g));
    // determinism
    auto batch2 = sample_members(S, 20, 99);
    for (size_t i = 0; i < batch.size(); ++i) CHECK(batch[i] == batch2[i]);
}

TEST_CASE("steered lift pins window digits") {
    const RingSpec& R = RingSpec::inert_field(2, 4, -3);
    SubgroupSpec S = v_nm_spec(4, 1, R);
    std::vector<Steering> st{{1, 2, 0, 1, 1}};  // entry (2,3) rational digit 1 equals 1
    Mat g = steered_lift(S, st, Mat::identity(R, 4));
    CHECK(S.membership(g));
    CHECK((g.at(1, 2).a >> 1 & 1) == 1);
}

TEST_CASE("unsatisfiable lift reports PatternInvalid") {
    const RingSpec& R = RingSpec::rational(2, 3);
    SubgroupSpec S = u1_spec(1, 3, R);
    // force a nonzero digit inside the last-row window: no member exists
    std::vector<Steering> st{{1, 0, 0, 1, 1}};
    CHECK_THROWS_AS((void)steered_lift(S, st, Mat::identity(R, 2)), Error);
}

TEST_CASE("infeasible enumeration errors") {
    const RingSpec& R = RingSpec::rational(2, 1);
    SubgroupSpec S = full_spec(GroupKind::GSp, 4, R);
    CHECK_THROWS_AS((void)enumerate_members(S, 10), Error);
}
