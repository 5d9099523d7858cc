#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towers/hermitian.hpp"

using namespace towers;

TEST_CASE("hermitian form basics over Q(i) mod 3") {
    const RingSpec& R = RingSpec::inert_field(3, 1, -1);
    OFModule M(R);
    // H(e1, e4) = y * J_{14} = i
    CHECK(hermitian_form(M, M.basis_vector(0), M.basis_vector(3)) == M.y());
    // H(x, x) = 0 for x = e1 (J_{11} = 0)
    CHECK(hermitian_form(M, M.basis_vector(0), M.basis_vector(0)).is_zero());
    // sesquilinearity with a = i, b = 1
    auto x1 = M.basis_vector(0), x2 = M.basis_vector(3);
    auto ix1 = x1;
    for (auto& v : ix1) v = M.y() * v;
    CHECK(hermitian_form(M, ix1, x2) == conj(M.y()) * hermitian_form(M, x1, x2));
    // decomposition of H(e1, e4): coordinates (0, 1)
    auto [fst, snd] = skew_decompose(M, x1, x2);
    CHECK(fst.is_zero());
    CHECK(snd.is_one());
}

TEST_CASE("skew decompose over Q(sqrt(-3)) mod 2 by direct basis expansion") {
    const RingSpec& R = RingSpec::inert_field(2, 1, -3);
    OFModule M(R);
    auto x1 = M.basis_vector(0);
    auto x2 = M.basis_vector(3);
    for (auto& v : x2) v = M.y() * v;  // omega * e4
    // H(e1, omega e4) = y * omega * J_14 = omega^2 = omega - 1
    RingElem H = hermitian_form(M, x1, x2);
    RingElem expect = M.y() * M.y();
    CHECK(H == expect);
    auto [fst, snd] = skew_decompose(M, x1, x2);
    CHECK(fst + M.y() * snd == H);
    // x1 = x2: second component vanishes on rational vectors
    auto r = M.basis_vector(2);
    CHECK(skew_decompose(M, r, r).second.is_zero());
}

TEST_CASE("decomposition checks pass for both acceptance fields") {
    CHECK(hermitian_decomposition_check(RingSpec::inert_field(3, 1, -1), 500, 1).pass);
    CHECK(hermitian_decomposition_check(RingSpec::inert_field(2, 1, -3), 500, 1).pass);
}

TEST_CASE("tensor level structure") {
    const RingSpec& Q = RingSpec::rational(3, 1);
    const RingSpec& E = RingSpec::inert_field(3, 1, -1);
    // identity goes to identity
    CHECK(tensor_level_structure(Mat::identity(Q, 4), E) == Mat::identity(E, 4));
    // a similitude with mu = 2: the image respects <.,.> with similitude 2
    Mat h = Mat::identity(Q, 4).scaled(RingElem(Q, 2));
    auto mu = gsp_multiplier(h);
    REQUIRE(mu.has_value());
    CHECK(mu->a == 1);  // (2I)^t J (2I) = 4J = J mod 3
    Mat img = tensor_level_structure(h, E);
    CHECK(img == Mat::identity(E, 4).scaled(RingElem(E, 2)));
    // non-symplectic input
    Mat bad = Mat::identity(Q, 4);
    bad.at(0, 1) = RingElem::one(Q);
    bad.at(0, 0) = RingElem::zero(Q);
    CHECK_THROWS_AS((void)tensor_level_structure(bad, E), Error);
}

TEST_CASE("tensor level structure agrees with phi_embed and is a homomorphism") {
    const RingSpec& Q = RingSpec::rational(3, 1);
    const RingSpec& E = RingSpec::inert_field(3, 1, -1);
    auto all = enumerate_members(full_spec(GroupKind::GSp, 4, Q), 20'000'000);
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        const Mat& a = all[rng.uniform(all.size())];
        const Mat& b = all[rng.uniform(all.size())];
        Mat ta = tensor_level_structure(a, E);
        CHECK(ta == phi_embed(a, E).mat);
        CHECK(tensor_level_structure(a * b, E) == ta * tensor_level_structure(b, E));
    }
}

TEST_CASE("of-points checks") {
    CHECK(ofpoint_structure_check(2, 1, FieldCase::Inert, -3, 40, 3).pass);
    CHECK(ofpoint_structure_check(3, 1, FieldCase::Inert, -1, 40, 3).pass);
    CHECK(ofpoint_structure_check(5, 1, FieldCase::Split, -1, 25, 3).pass);
}
