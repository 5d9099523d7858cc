#pragma once

#include "towers/report.hpp"
#include "towers/transversal.hpp"

namespace towers {

/// Lemma-A.1/A.3 shadow: every V'-shaped g mod p^{m+1} with u g u^{-1} in H
/// satisfies g == diag(a,1,a,1) with multiplier a mod p^{m+1}. Exhaustive.
CheckReport closed_immersion_check(FieldCase fcase, uint64_t p, int m, uint64_t cap = 20'000'000);

/// [V : V'] computed by order counting; expected p^10.
CheckReport index_p10_check(FieldCase fcase, uint64_t p, int m, int n, uint64_t seed);

/// Degree equality: [V : V'] = [uVu^-1 ∩ H : uV'u^-1 ∩ H] = p^10.
CheckReport cartesian_degree_check(FieldCase fcase, uint64_t p, int m, int n, uint64_t seed);

/// Transversal reports for the sigma_v / sigma'_w families.
CheckReport sigma_transversal_check(FieldCase fcase, uint64_t p, int m, int n, bool prime,
                                    uint64_t seed);

/// Composite appendix run: closed immersion, sigma_v, sigma'_w, degree equality.
std::vector<CheckReport> appendix_checks(FieldCase fcase, uint64_t p, int m, int n, uint64_t seed);

/// Lemma 1.9 shadow: vectors of exact order p^m versus [GSp_2g : U1(p^m)], plus
/// bijectivity of the row map on cosets. Exhaustive.
CheckReport exact_order_bijection_check(int g, uint64_t p, int m, uint64_t cap = 20'000'000);

/// Remark 6.3: the recursive tower spec and the resolved pattern define the same
/// subgroup: double inclusion on samples plus order equality. `weaken_entry21`
/// injects the fault that drops the (2,1)-exponent to 0 in the pattern form.
CheckReport remark_pattern_equivalence(uint64_t p, int m, int n, size_t samples, uint64_t seed,
                                       bool weaken_entry21 = false);

/// Section 5.4 remark: the stabilizer of the u-orbit in GSp6/B^- inside
/// Klin x_{mu,det} GL2 has p-1 elements, each conjugate to diag(x,1,x,1,x,1).
CheckReport gsp6_stabilizer_check(uint64_t p);

/// g=1 oracle: the whole pipeline on the GL2 tower against brute force.
CheckReport oracle_g1_check(uint64_t p, int m, int n, uint64_t seed);

/// Split-coordinate isomorphism roundtrip on random samples plus the
/// conjugation-swaps-components law.
CheckReport split_iso_check(uint64_t p, unsigned K, int samples, uint64_t seed);

/// Lifting-based orders against brute-force enumeration / classical formulas.
CheckReport order_oracle_check(uint64_t seed);

}  // namespace towers
