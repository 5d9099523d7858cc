// Acceptance suite: every finitely checkable claim in scope, one line per criterion.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "towers/checks.hpp"
#include "towers/divisor.hpp"
#include "towers/hermitian.hpp"
#include "towers/registry.hpp"

using namespace towers;

namespace {

void line(int criterion, bool pass, const std::string& what, int64_t ms) {
    std::printf("criterion %2d: %s  %s (%lld ms)\n", criterion, pass ? "PASS" : "FAIL", what.c_str(),
                static_cast<long long>(ms));
    std::fflush(stdout);
}

bool run_and_line(int criterion, const std::string& what, const std::vector<CheckReport>& reps) {
    bool pass = true;
    int64_t ms = 0;
    for (const auto& r : reps) {
        pass = pass && r.pass;
        ms += r.elapsed_ms;
    }
    line(criterion, pass, what, ms);
    return pass;
}

}  // namespace

TEST_CASE("criterion 1: index p^10 by order counting") {
    Stopwatch sw;
    std::vector<CheckReport> reps;
    for (uint64_t p : {2, 3}) {
        reps.push_back(index_p10_check(FieldCase::Split, p, 1, 6, 101));
        reps.push_back(index_p10_check(FieldCase::Inert, p, 1, 6, 102));
    }
    reps.push_back(index_p10_check(FieldCase::Split, 5, 1, 6, 103));  // Q(i), p = 5 split
    bool pass = run_and_line(1, "[V_{p^n,p^m} : V'] = p^10, split and inert, (p,m,n) in {(2,1,6),(3,1,6)} + split p=5", reps);
    CHECK(pass);
    CHECK(sw.ms() < 5 * 60 * 1000);
}

TEST_CASE("criterion 2: transversal verification") {
    std::vector<CheckReport> reps;
    bool pass = true;
    for (auto [fc, p] : {std::pair{FieldCase::Split, uint64_t{2}}, {FieldCase::Split, uint64_t{3}},
                         {FieldCase::Inert, uint64_t{2}}, {FieldCase::Inert, uint64_t{3}}}) {
        for (bool prime : {false, true}) {
            CheckReport r = sigma_transversal_check(fc, p, 1, 6, prime, 202);
            pass = pass && r.pass && r.elapsed_ms < 2 * 60 * 1000;
            reps.push_back(r);
        }
    }
    run_and_line(2, "sigma_v and sigma'_w pass membership + distinctness + cardinality = p^10", reps);
    CHECK(pass);
}

TEST_CASE("criterion 3: closed-immersion lemmas") {
    std::vector<CheckReport> reps;
    for (uint64_t p : {2, 3}) {
        reps.push_back(closed_immersion_check(FieldCase::Split, p, 1));
        reps.push_back(closed_immersion_check(FieldCase::Inert, p, 1));
    }
    bool pass = run_and_line(3, "u g u^-1 in H forces g = diag(a,1,a,1) with multiplier a mod p^{m+1}", reps);
    CHECK(pass);
}

TEST_CASE("criterion 4: degree equality (Cartesian bottom square)") {
    std::vector<CheckReport> reps;
    for (uint64_t p : {2, 3}) {
        reps.push_back(cartesian_degree_check(FieldCase::Split, p, 1, 6, 404));
        reps.push_back(cartesian_degree_check(FieldCase::Inert, p, 1, 6, 405));
    }
    bool pass = run_and_line(4, "[V:V'] = [uVu^-1 cap H : uV'u^-1 cap H] = p^10", reps);
    CHECK(pass);
}

TEST_CASE("criterion 5: level-structure bijection counts") {
    Stopwatch sw;
    std::vector<CheckReport> reps;
    reps.push_back(exact_order_bijection_check(2, 2, 1));
    reps.push_back(exact_order_bijection_check(1, 3, 1));
    reps.push_back(exact_order_bijection_check(1, 2, 2));
    bool counts_ok = reps[0].computed["index"] == "15" && reps[1].computed["index"] == "8" &&
                     reps[2].computed["index"] == "12";
    bool pass = reps[0].pass && reps[1].pass && reps[2].pass && counts_ok;
    line(5, pass, "exact-order counts 15 = 15, 8 = 8, 12 = 12 with bijective row map", sw.ms());
    CHECK(pass);
    CHECK(sw.ms() < 10'000);
}

TEST_CASE("criterion 6: order oracle equivalence") {
    CheckReport r = order_oracle_check(606);
    bool pass = run_and_line(6, "lifting orders match brute force (GL2(Z/4), GL2(Z/9), GSp4(F2)) and the classical formula (GSp4(F3))", {r});
    CHECK(pass);
}

TEST_CASE("criterion 7: divisor suite") {
    Stopwatch sw;
    bool pass = trace_invariance_check(10, 2).pass;
    for (int64_t c1 : {2, 3, 4, 5})
        for (int64_t c2 : {2, 3, 4, 5})
            for (int g : {1, 2}) pass = pass && distribution_check(c1, c2, g).pass;
    line(7, pass, "deg D_c = 0, push-invariance (c <= 10, g <= 2), distribution identity on {2,3,4,5}^2 x {1,2}", sw.ms());
    CHECK(pass);
    CHECK(sw.ms() < 30'000);
}

TEST_CASE("criterion 8: operator suite") {
    Stopwatch sw;
    bool pass = true;
    for (int g = 1; g <= 3; ++g)
        for (int64_t m = 1; m <= 5; ++m) pass = pass && f_m_annihilation_check(g, m).pass;
    pass = pass && n_m(2, 3) == 33280 && v_p(n_m(2, 3), 7) == 0;
    pass = pass && n_m(2, 2) == 315 && v_p(n_m(2, 2), 5) == 1;
    pass = pass && n_m_grid_check(23, 3).pass;
    line(8, pass, "F_m annihilation (g <= 3, m <= 5); N_3 = 33280 with v_7 = 0; N_2 = 315 with v_5 = 1; grid p <= 23", sw.ms());
    CHECK(pass);
}

TEST_CASE("criterion 9: split isomorphism roundtrip") {
    CheckReport r = split_iso_check(5, 3, 10000, 909);
    bool pass = run_and_line(9, "10^4 roundtrips mod 5^3 exact; conjugation swaps components", {r});
    CHECK(pass);
}

TEST_CASE("criterion 10: hermitian decomposition") {
    std::vector<CheckReport> reps;
    reps.push_back(hermitian_decomposition_check(RingSpec::inert_field(3, 1, -1), 10000, 1010));
    reps.push_back(hermitian_decomposition_check(RingSpec::inert_field(2, 1, -3), 10000, 1011));
    bool pass = run_and_line(10, "decomposition exact on 16 basis pairs + 10^4 random pairs; restriction to Z^4 is J", reps);
    CHECK(pass);
}

TEST_CASE("criterion 11: remark pattern equivalence with fault sensitivity") {
    Stopwatch sw;
    CheckReport good = remark_pattern_equivalence(2, 1, 4, 100000, 1111, false);
    CheckReport fault = remark_pattern_equivalence(2, 1, 4, 1000, 1112, true);
    bool pass = good.pass && !fault.pass;
    line(11, pass, "double inclusion on 10^5 samples + order equality at (2,1,4); weakened (2,1) entry FAILS", sw.ms());
    CHECK(good.pass);
    CHECK_FALSE(fault.pass);
}

TEST_CASE("criterion 12: GSp6 stabilizer") {
    Stopwatch sw;
    CheckReport r5 = gsp6_stabilizer_check(5);
    CheckReport r7 = gsp6_stabilizer_check(7);
    bool pass = r5.pass && r7.pass && r5.computed["count"] == 4 && r7.computed["count"] == 6;
    line(12, pass, "stabilizer counts 4 over F_5 and 6 over F_7, all of diag(x,1,x,1,x,1) shape up to conjugacy", sw.ms());
    CHECK(pass);
    CHECK(sw.ms() < 10 * 60 * 1000);
}
