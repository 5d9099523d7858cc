#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towers/divisor.hpp"
#include "towers/errors.hpp"

using namespace towers;

TEST_CASE("characteristic class D_c") {
    Divisor d = d_c(2, 1);  // on (Z/2)^2: coefficients (3, -1, -1, -1)
    CHECK(d.coeff[0] == 3);
    CHECK(d.coeff[1] == -1);
    CHECK(d.coeff[2] == -1);
    CHECK(d.coeff[3] == -1);
    CHECK(d.degree() == 0);
    Divisor one = d_c(1, 2);
    CHECK(one.degree() == 0);
    CHECK(one.coeff[0] == 0);  // the zero divisor
    CHECK(d_c(3, 2).degree() == 0);
    for (int g = 1; g <= 3; ++g)
        for (int64_t c = 1; c <= 10; ++c) CHECK(d_c(c, g).degree() == 0);
}

TEST_CASE("pullback and pushforward") {
    // pullback of delta_0 from (Z/2)^2 to (Z/4)^2 by a=2: the 2-torsion indicator
    Divisor delta(TorsionGroup{1, 2});
    delta.coeff[0] = 1;
    Divisor pb = pullback(delta, 2);
    CHECK(pb.base.c == 4);
    BigInt total = 0;
    for (size_t i = 0; i < pb.coeff.size(); ++i) {
        auto pt = pb.base.point(i);
        bool torsion2 = pt[0] % 2 == 0 && pt[1] % 2 == 0;
        CHECK(pb.coeff[i] == (torsion2 ? 1 : 0));
        total += pb.coeff[i];
    }
    CHECK(total == 4);
    // pushforward by 1 is the identity
    Divisor d = d_c(3, 1);
    CHECK(pushforward(d, 1) == d);
    // x -> 5x fixes D_3 on (Z/3)^2
    CHECK(pushforward(d, 5) == d);
    CHECK_THROWS_AS((void)pushforward(d_c(4, 1), 2), Error);  // 2 not prime to 4
    // push/pull composition scales degree by a^{2g}
    Divisor dd = d_c(2, 1);
    Divisor comp = pullback(pushforward(dd, 1), 3);
    CHECK(comp.degree() == 9 * dd.degree());
    Divisor rnd(TorsionGroup{1, 2});
    rnd.coeff = {2, -1, 5, 7};
    CHECK(pullback(rnd, 3).degree() == 9 * rnd.degree());
}

TEST_CASE("distribution relation") {
    CHECK(distribution_check(2, 3, 1).pass);
    CHECK(distribution_check(3, 5, 2).pass);
    CHECK(distribution_check(5, 1, 1).pass);  // [c]^* 0 + D_c = D_c
    for (int64_t c1 : {2, 3, 4, 5})
        for (int64_t c2 : {2, 3, 4, 5})
            for (int g : {1, 2}) CHECK(distribution_check(c1, c2, g).pass);
}

TEST_CASE("trace invariance grid") {
    CheckReport rep = trace_invariance_check(10, 2);
    CHECK(rep.pass);
}

TEST_CASE("duality pairing") {
    CHECK(duality_pairing_check(2, 2, 100, 42).pass);
    CHECK(duality_pairing_check(3, 1, 100, 42).pass);
}

TEST_CASE("N_m values") {
    CHECK(n_m(2, 3) == 33280);
    CHECK(v_p(n_m(2, 3), 7) == 0);
    CHECK(n_m(1, 1) == 0);  // the i = 2g-1 factor vanishes
    CHECK(n_m(2, 2) == 315);
    CHECK(v_p(n_m(2, 2), 5) == 1);
    BigInt n23 = n_m(3, 2);  // (-63)(-31)(-15)(-7)(-3)(-1)
    CHECK(n23 == BigInt(63) * 31 * 15 * 7 * 3 * 1);
    CheckReport r = n_m_unit_check(7, 2, 3);
    CHECK(r.pass);
    CHECK(r.computed["unit"] == true);
    CheckReport r2 = n_m_unit_check(5, 2, 2);
    CHECK(r2.pass);  // consistent: p = 2g+1 violates the strict inequality
    CHECK(r2.computed["unit"] == false);
    CHECK(n_m_grid_check(23, 3).pass);
}

TEST_CASE("F_m annihilation") {
    CHECK(f_m_annihilation_check(1, 2).pass);
    CHECK(f_m_annihilation_check(2, 3).pass);
    CheckReport g3 = f_m_annihilation_check(3, 2);
    CHECK(g3.pass);
    CHECK(g3.computed["fixed_line_scalar"] == n_m(3, 2).str());
    for (int g = 1; g <= 3; ++g)
        for (int64_t m = 1; m <= 5; ++m) CHECK(f_m_annihilation_check(g, m).pass);
}

TEST_CASE("divisor serialization is sparse") {
    json j = d_c(2, 1).to_json();
    CHECK(j["support"].size() == 4);
    Divisor zero(TorsionGroup{1, 3});
    CHECK(zero.to_json()["support"].empty());
}
