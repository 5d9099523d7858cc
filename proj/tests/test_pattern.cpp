#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towers/lift.hpp"

using namespace towers;

TEST_CASE("u1 membership and count inside GSp4(F2)") {
    const RingSpec& R = RingSpec::rational(2, 1);
    SubgroupSpec u1 = u1_spec(2, 1, R);
    CHECK(u1.membership(Mat::identity(R, 4)));
    auto all = enumerate_members(full_spec(GroupKind::GSp, 4, R), 2000);
    size_t count = 0;
    for (const Mat& h : all) {
        bool last_row_ok = h.at(3, 0).is_zero() && h.at(3, 1).is_zero() && h.at(3, 2).is_zero() &&
                           h.at(3, 3).is_one();
        CHECK(u1.membership(h) == last_row_ok);
        if (u1.membership(h)) ++count;
    }
    CHECK(count == 48);
}

TEST_CASE("v1 pullback property over GSp4(F2)") {
    const RingSpec& R = RingSpec::rational(2, 1);
    const RingSpec& E = RingSpec::inert_field(2, 1, -3);
    SubgroupSpec u1 = u1_spec(2, 1, R);
    SubgroupSpec v1 = v1_spec(1, E, 4);
    CHECK(v1.membership(Mat::identity(E, 4)));
    auto all = enumerate_members(full_spec(GroupKind::GSp, 4, R), 2000);
    for (const Mat& h : all) CHECK(v1.membership(phi_embed(h, E).mat) == u1.membership(h));
    // element with last row (0,0,e,1), e the inert generator, is not a member
    Mat g = Mat::identity(E, 4);
    g.at(3, 2) = RingElem::gen(E);
    CHECK_FALSE(v1.membership(g));
}

TEST_CASE("transport rule") {
    Cocharacter eta = Cocharacter::eta_gu22();
    CongruencePattern triv = CongruencePattern::trivial(4);
    CongruencePattern t1 = transport(triv, eta, 1, 6);
    CHECK(t1.e(0, 1) == 1);
    CHECK(t1.e(1, 0) == 0);
    CHECK(t1.e(0, 3) == 3);
    CongruencePattern t0 = transport(triv, eta, 0, 6);
    CHECK(t0.expo == triv.expo);
    // last-row pattern with exponent n transported by k = m
    const RingSpec& R = RingSpec::inert_field(2, 6, -3);
    SubgroupSpec v1 = v1_spec(4, R, 4);
    CongruencePattern tv = transport(v1.pattern, eta, 1, 6);
    CHECK(tv.e(3, 0) == 4 - 3);
    CHECK(tv.e(3, 1) == 4 - 2);
    CHECK(tv.e(3, 2) == 4 - 1);
    // roundtrip transport(transport(S, k), -k) = S within precision
    CongruencePattern back = transport(tv, eta, -1, 6);
    CHECK(back.e(3, 0) == 4);
    CHECK(back.e(3, 1) == 4);
    CHECK(back.e(3, 2) == 4);
    CHECK_THROWS_AS((void)transport(v1.pattern, eta, 3, 6), Error);  // entry (1,4) reaches 3*3 > 6
}

TEST_CASE("v_nm pattern form") {
    const RingSpec& R = RingSpec::inert_field(2, 6, -3);
    SubgroupSpec pat = v_nm_pattern(6, 1, R);
    CHECK(pat.pattern.e(0, 3) == 3);  // 3m
    CHECK(pat.pattern.e(1, 0) == 6);  // p^n
    CHECK(pat.pattern.e(3, 3) == 6);
    CHECK(pat.membership(Mat::identity(R, 4)));
    SubgroupSpec rec = v_nm_spec(6, 1, R);
    CHECK(rec.membership(Mat::identity(R, 4)));
    CHECK_THROWS_AS((void)v_nm_pattern(3, 1, R), Error);  // needs n > 3m
}

TEST_CASE("klingen membership is the last-row condition on GSp4") {
    for (uint64_t p : {2, 3}) {
        const RingSpec& R = RingSpec::rational(p, 1);
        SubgroupSpec klin = klingen_spec(2, R);
        CHECK(klin.membership(Mat::identity(R, 4)));
        auto all = enumerate_members(full_spec(GroupKind::GSp, 4, R), 200000);
        size_t count = 0;
        for (const Mat& h : all) {
            bool last_row = h.at(3, 0).is_zero() && h.at(3, 1).is_zero() && h.at(3, 2).is_zero() &&
                            h.at(3, 3).is_one();
            // the first-column vanishing is implied by the symplectic relation
            CHECK(klin.membership(h) == last_row);
            if (last_row) ++count;
        }
        if (p == 2) CHECK(count == 48);
    }
}

TEST_CASE("borel specs") {
    const RingSpec& R = RingSpec::inert_field(3, 2, -1);
    auto [upper, lower] = borel_specs(GroupKind::GU, 4, R);
    CHECK(upper.membership(Mat::identity(R, 4)));
    CHECK(lower.membership(Mat::identity(R, 4)));
    Mat g = Mat::identity(R, 4);
    g.at(2, 0) = RingElem::one(R);
    CHECK_FALSE(upper.membership(g));
}

TEST_CASE("appendix conjugators") {
    const RingSpec& S = RingSpec::split(2, 2);
    GroupElem u = u_split(S);
    CHECK(u.mat.at(0, 2) == RingElem(S, S.q - 1, 0));  // M-component -1, N-component 0
    CHECK(u.multiplier->is_one());
    CHECK(gu_multiplier(u.mat)->is_one());

    const RingSpec& E = RingSpec::inert_field(2, 2, -3);
    CHECK_THROWS_AS((void)u_inert(RingElem::one(E)), Error);  // 1 does not generate
    GroupElem ui = u_inert(RingElem::gen(E));
    CHECK(gu_multiplier(ui.mat)->is_one());
}

TEST_CASE("intersect semantics and subgroup closure") {
    const RingSpec& R = RingSpec::rational(2, 2);
    SubgroupSpec a = u1_spec(1, 1, R);
    SubgroupSpec b = u1_spec(1, 2, R);
    SubgroupSpec ab = a.intersect_pattern(b.pattern, "a&b");
    auto all = enumerate_members(full_spec(GroupKind::GL, 2, R), 2000);
    for (const Mat& g : all) CHECK(ab.membership(g) == (a.membership(g) && b.membership(g)));
    // product and inverse closure on exhaustively enumerable instances
    for (const auto* spec : {&a, &b}) {
        std::vector<Mat> members;
        for (const Mat& g : all)
            if (spec->membership(g)) members.push_back(g);
        for (size_t i = 0; i < members.size(); i += 3)
            for (size_t j = 0; j < members.size(); j += 5)
                CHECK(spec->membership(members[i] * members[j]));
        for (const Mat& g : members) CHECK(spec->membership(g.inverse()));
    }
}

TEST_CASE("intersect is commutative at the predicate level") {
    const RingSpec& R = RingSpec::rational(2, 2);
    SubgroupSpec a = u1_spec(1, 1, R);
    SubgroupSpec b = u1_spec(1, 2, R);
    SubgroupSpec ab = a.intersect_pattern(b.pattern, "ab");
    SubgroupSpec ba = b.intersect_pattern(a.pattern, "ba");
    SubgroupSpec aa = a.intersect_pattern(a.pattern, "aa");
    auto all = enumerate_members(full_spec(GroupKind::GL, 2, R), 2000);
    for (const Mat& g : all) {
        CHECK(ab.membership(g) == ba.membership(g));
        CHECK(aa.membership(g) == a.membership(g));  // idempotent
    }
}

TEST_CASE("subgroup closure on GL2(Z/9)") {
    const RingSpec& R = RingSpec::rational(3, 2);
    SubgroupSpec u1 = u1_spec(1, 2, R);
    auto all = enumerate_members(full_spec(GroupKind::GL, 2, R), 10000);
    std::vector<Mat> members;
    for (const Mat& g : all)
        if (u1.membership(g)) members.push_back(g);
    CHECK(!members.empty());
    for (size_t i = 0; i < members.size(); i += 7)
        for (size_t j = 0; j < members.size(); j += 11)
            CHECK(u1.membership(members[i] * members[j]));
    for (size_t i = 0; i < members.size(); i += 5) CHECK(u1.membership(members[i].inverse()));
}

TEST_CASE("split members of the tower satisfy the (M, a) pattern") {
    // pullback along the split-coordinate isomorphism: members of V_{p^n,p^m}
    // over the pair ring have (M, a) with M = diag(a,1,a,1) modulo the exponent
    // matrix [[m,m,2m,3m],[n,m,m,2m],[n,m,m,m],[n,n,n,n]], and conversely
    const RingSpec& S = RingSpec::split(2, 6);
    SubgroupSpec V = v_nm_spec(6, 1, S);
    const int m = 1, n = 6;
    const int E[4][4] = {{m, m, 2 * m, 3 * m}, {n, m, m, 2 * m}, {n, m, m, m}, {n, n, n, n}};
    auto lvl1 = level1_enumerate(V, {});
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        Mat g = sample_member(V, rng, lvl1.members);
        SplitCoords sc = split_iso(g);
        uint64_t a = sc.a.a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                uint64_t pe = 1;
                for (int x = 0; x < E[i][j]; ++x) pe *= 2;
                uint64_t target = i == j ? (i % 2 == 0 ? a : 1) % pe : 0;
                CHECK(sc.m.at(i, j).a % pe == target);
            }
    }
}

TEST_CASE("spec serialization mentions the pattern") {
    const RingSpec& R = RingSpec::inert_field(2, 6, -3);
    std::string js = v_nm_pattern(6, 1, R).to_json_string();
    CHECK(js.find("\"expo\"") != std::string::npos);
    CHECK(js.find("GU") != std::string::npos);
}
