#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towers/ring.hpp"

using namespace towers;

namespace {

std::vector<RingElem> all_elements(const RingSpec& R) {
    std::vector<RingElem> out;
    for (uint64_t a = 0; a < R.q; ++a) {
        if (!R.quadratic()) {
            out.emplace_back(R, a);
        } else {
            for (uint64_t b = 0; b < R.q; ++b) out.emplace_back(R, a, b);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("conjugation on the three ring kinds") {
    // Q(i) model: i conjugates to -i mod 3
    const RingSpec& qi = RingSpec::inert_field(3, 1, -1);
    RingElem i(qi, 0, 1);
    CHECK(conj(i) == -i);

    // split pair swap mod 7
    const RingSpec& sp = RingSpec::split(7, 1);
    RingElem x(sp, 2, 5);
    CHECK(conj(x) == RingElem(sp, 5, 2));

    // Q(sqrt(-3)) basis omega, omega^2 = omega - 1: conj(omega) = 1 + omega mod 2
    const RingSpec& w2 = RingSpec::inert_field(2, 1, -3);
    RingElem w(w2, 0, 1);
    CHECK(conj(w) == RingElem(w2, 1, 1));
}

TEST_CASE("valuation") {
    const RingSpec& r4 = RingSpec::rational(2, 4);
    CHECK(valuation(RingElem(r4, 4)) == 2);  // p^2 in Z/p^4
    const RingSpec& r3 = RingSpec::rational(2, 3);
    CHECK(valuation(RingElem(r3, 0)) == 3);  // zero has full-precision valuation
    const RingSpec& w3 = RingSpec::inert_field(2, 3, -3);
    CHECK(valuation(RingElem(w3, 0, 2)) == 1);  // p * omega mod p^3
}

TEST_CASE("invert") {
    const RingSpec& z8 = RingSpec::rational(2, 3);
    CHECK(invert(RingElem(z8, 3)) == RingElem(z8, 3));  // 3*3 = 9 = 1 mod 8
    CHECK_THROWS_AS((void)invert(RingElem(z8, 2)), Error);
    const RingSpec& w2 = RingSpec::inert_field(2, 1, -3);
    CHECK(invert(RingElem(w2, 0, 1)) == RingElem(w2, 1, 1));  // omega^-1 = 1 + omega
}

TEST_CASE("ring axioms on exhaustively enumerated small rings") {
    std::vector<const RingSpec*> rings;
    for (uint64_t p : {2, 3})
        for (unsigned K : {1u, 2u}) {
            rings.push_back(&RingSpec::rational(p, K));
            rings.push_back(&RingSpec::split(p, K));
        }
    rings.push_back(&RingSpec::inert_field(2, 1, -3));
    rings.push_back(&RingSpec::inert_field(3, 1, -1));
    rings.push_back(&RingSpec::inert_field(2, 2, -3));
    for (const RingSpec* R : rings) {
        auto elems = all_elements(*R);
        bool assoc = true, distrib = true, conj_inv = true, conj_hom = true;
        for (const auto& x : elems)
            for (const auto& y : elems) {
                if (conj(x * y) != conj(x) * conj(y)) conj_hom = false;
                for (const auto& z : elems) {
                    if ((x * y) * z != x * (y * z)) assoc = false;
                    if (x * (y + z) != x * y + x * z) distrib = false;
                }
            }
        for (const auto& x : elems) {
            if (conj(conj(x)) != x) conj_inv = false;
            CHECK(norm(x).is_rational());
            // in the local models a unit is exactly an element of valuation 0;
            // in the split (product) model both components must be units
            bool expect_unit = R->kind == RingKind::Split
                                   ? (x.a % R->p != 0 && x.b % R->p != 0)
                                   : valuation(x) == 0;
            CHECK(is_unit(x) == expect_unit);
            if (expect_unit) {
                CHECK(invert(x) * x == RingElem::one(*R));
            } else {
                CHECK_THROWS_AS((void)invert(x), Error);
            }
        }
        CHECK(assoc);
        CHECK(distrib);
        CHECK(conj_inv);
        CHECK(conj_hom);
    }
}

TEST_CASE("conjugation fixes the rational subring") {
    const RingSpec& w = RingSpec::inert_field(3, 2, -1);
    for (int64_t v = 0; v < 9; ++v) CHECK(conj(RingElem::from_int(w, v)) == RingElem::from_int(w, v));
    const RingSpec& s = RingSpec::split(3, 2);
    for (int64_t v = 0; v < 9; ++v) CHECK(RingElem::from_int(s, v).is_rational());
}

TEST_CASE("ring spec validation") {
    CHECK_THROWS_AS((void)RingSpec::rational(4, 1), Error);       // p not prime
    CHECK_THROWS_AS((void)RingSpec::inert(2, 1, 0, -1, -1), Error);  // y^2+1 reducible mod 2
    CHECK_THROWS_AS((void)RingSpec::split(3, 1, -1), Error);      // 3 inert in Q(i)
    CHECK(RingSpec::split(5, 1, -1).q == 5);                      // 5 splits in Q(i)
}
