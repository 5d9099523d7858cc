#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towers/lift.hpp"

using namespace towers;

TEST_CASE("standard symplectic form") {
    const RingSpec& R = RingSpec::rational(5, 2);
    Mat J1 = symplectic_form(1, R);
    CHECK(J1.at(0, 1) == RingElem::one(R));
    CHECK(J1.at(1, 0) == -RingElem::one(R));
    Mat J2 = symplectic_form(2, R);
    CHECK(J2.at(0, 3).is_one());
    CHECK(J2.at(1, 2).is_one());
    CHECK(J2.at(2, 1) == -RingElem::one(R));
    CHECK(J2.at(3, 0) == -RingElem::one(R));
    for (int g = 1; g <= 3; ++g) {
        Mat J = symplectic_form(g, R);
        Mat J2m = J * J;
        CHECK(J2m == Mat::identity(R, 2 * g).scaled(-RingElem::one(R)));
    }
}

TEST_CASE("gsp multiplier") {
    const RingSpec& R = RingSpec::rational(3, 2);
    Mat I = Mat::identity(R, 4);
    CHECK(gsp_multiplier(I) == RingElem::one(R));
    RingElem r(R, 2);
    CHECK(gsp_multiplier(I.scaled(r)) == r * r);
    Mat J = symplectic_form(2, R);
    CHECK(gsp_multiplier(J) == RingElem::one(R));
}

TEST_CASE("gu multiplier") {
    const RingSpec& R = RingSpec::inert_field(3, 2, -1);
    Mat I = Mat::identity(R, 4);
    CHECK(gu_multiplier(I) == RingElem::one(R));
    RingElem y(R, 2, 1);
    CHECK(gu_multiplier(I.scaled(y)) == norm(y));
    // u_inert has unitary multiplier 1
    GroupElem u = u_inert(RingElem::gen(R));
    CHECK(u.multiplier->is_one());
}

TEST_CASE("multiplier is multiplicative on all of GSp4(F2)") {
    const RingSpec& R = RingSpec::rational(2, 1);
    auto all = enumerate_members(full_spec(GroupKind::GSp, 4, R), 2000);
    REQUIRE(all.size() == 720);
    for (size_t i = 0; i < all.size(); i += 7)
        for (size_t j = 0; j < all.size(); j += 11) {
            auto m1 = gsp_multiplier(all[i]);
            auto m2 = gsp_multiplier(all[j]);
            auto m12 = gsp_multiplier(all[i] * all[j]);
            CHECK(*m12 == *m1 * *m2);
        }
}

TEST_CASE("phi embedding is an injective homomorphism on GSp4(F2)") {
    const RingSpec& R = RingSpec::rational(2, 1);
    const RingSpec& E = RingSpec::inert_field(2, 1, -3);
    auto all = enumerate_members(full_spec(GroupKind::GSp, 4, R), 2000);
    REQUIRE(all.size() == 720);
    std::vector<Mat> images;
    for (const Mat& h : all) {
        GroupElem img = phi_embed(h, E);
        auto nu = gu_multiplier(img.mat);
        REQUIRE(nu.has_value());
        CHECK(*nu == *img.multiplier);
        CHECK(RingElem(E, gsp_multiplier(h)->a, 0) == *nu);
        images.push_back(img.mat);
    }
    // injectivity: all images distinct
    std::sort(images.begin(), images.end(), [](const Mat& a, const Mat& b) {
        for (size_t i = 0; i < a.e.size(); ++i) {
            if (a.e[i].a != b.e[i].a) return a.e[i].a < b.e[i].a;
            if (a.e[i].b != b.e[i].b) return a.e[i].b < b.e[i].b;
        }
        return false;
    });
    for (size_t i = 1; i < images.size(); ++i) CHECK(images[i - 1] != images[i]);
    // homomorphism on sampled pairs
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const Mat& a = all[rng.uniform(all.size())];
        const Mat& b = all[rng.uniform(all.size())];
        CHECK(phi_embed(a * b, E).mat == phi_embed(a, E).mat * phi_embed(b, E).mat);
    }
}

TEST_CASE("phi carries the multiplier: diag similitudes mod 9") {
    const RingSpec& Q = RingSpec::rational(3, 2);
    const RingSpec& E = RingSpec::inert_field(3, 2, -1);
    Mat h(Q, 4);
    h.at(0, 0) = RingElem(Q, 2);
    h.at(1, 1) = RingElem(Q, 1);
    h.at(2, 2) = RingElem(Q, 2);
    h.at(3, 3) = RingElem(Q, 1);
    auto mu = gsp_multiplier(h);
    REQUIRE(mu.has_value());
    CHECK(mu->a == 2);
    CHECK(phi_embed(h, E).multiplier->a == 2);
}

TEST_CASE("split iso basics") {
    const RingSpec& S = RingSpec::split(5, 3);
    const RingSpec& Q = S.rational_shadow();
    Mat I = Mat::identity(Q, 4);
    Mat g = split_iso_inv(I, RingElem::one(Q), S);
    CHECK(g == Mat::identity(S, 4));
    auto sc = split_iso(g);
    CHECK(sc.m == I);
    CHECK(sc.a.is_one());
    // (I, a):N = a I and the relation N^t J M = a J holds
    RingElem a(Q, 7);
    Mat ga = split_iso_inv(I, a, S);
    for (int i = 0; i < 4; ++i) CHECK(ga.at(i, i) == RingElem(S, 1, 7));
    CHECK(gu_multiplier(ga).has_value());
}

TEST_CASE("exterior powers") {
    const RingSpec& R = RingSpec::rational(7, 2);
    // 2x2, j=2: the determinant
    Mat m(R, 2);
    m.at(0, 0) = RingElem(R, 3);
    m.at(0, 1) = RingElem(R, 5);
    m.at(1, 0) = RingElem(R, 2);
    m.at(1, 1) = RingElem(R, 4);
    Mat w = exterior_power(m, 2);
    CHECK(w.n == 1);
    CHECK(w.at(0, 0) == RingElem(R, (3 * 4 - 5 * 2) % 49));
    // scalar wedge: (mI)^wedge j = m^j I
    for (int g = 1; g <= 3; ++g)
        for (int j = 0; j <= 2 * g; ++j) {
            RingElem c(R, 3);
            Mat sw = exterior_power(Mat::identity(R, 2 * g).scaled(c), j);
            RingElem cj = RingElem::one(R);
            for (int t = 0; t < j; ++t) cj = cj * c;
            CHECK(sw == Mat::identity(R, sw.n).scaled(cj));
        }
    // functoriality on random 4x4 pairs over Z/49
    Rng rng(11);
    for (int t = 0; t < 25; ++t) {
        Mat A(R, 4), B(R, 4);
        for (auto& x : A.e) x = RingElem(R, rng.uniform(R.q));
        for (auto& x : B.e) x = RingElem(R, rng.uniform(R.q));
        CHECK(exterior_power(A * B, 2) == exterior_power(A, 2) * exterior_power(B, 2));
    }
}

TEST_CASE("cocharacter matrices") {
    Cocharacter eta = Cocharacter::eta_gu22();
    const RingSpec& R = RingSpec::rational(2, 4);
    Mat m = cocharacter_matrix(eta, 1, R);
    CHECK(m.at(0, 0) == RingElem(R, 8));
    CHECK(m.at(1, 1) == RingElem(R, 4));
    CHECK(m.at(2, 2) == RingElem(R, 2));
    CHECK(m.at(3, 3) == RingElem(R, 1));
    CHECK(cocharacter_matrix(eta, 0, R) == Mat::identity(R, 4));
    const RingSpec& R7 = RingSpec::rational(2, 7);
    Mat m2 = cocharacter_matrix(eta, 2, R7);
    CHECK(m2.at(0, 0) == RingElem(R7, 64));
    CHECK(m2.at(1, 1) == RingElem(R7, 16));
    CHECK(m2.at(2, 2) == RingElem(R7, 4));
}

TEST_CASE("gu multiplier is multiplicative on sampled GU elements") {
    const RingSpec& R = RingSpec::inert_field(2, 2, -3);
    SubgroupSpec amb = full_spec(GroupKind::GU, 4, R);
    auto pool = level1_enumerate(amb, {200000, true, 0, 0});
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        Mat a = sample_member(amb, rng, pool.members);
        Mat b = sample_member(amb, rng, pool.members);
        CHECK(*gu_multiplier(a * b) == *gu_multiplier(a) * *gu_multiplier(b));
    }
}
