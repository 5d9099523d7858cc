#pragma once

#include "towers/lift.hpp"
#include "towers/report.hpp"

namespace towers {

/// A claimed left-coset transversal of `small` inside `big`. pattern_side holds
/// the reps pulled back through the conjugator of `big` (equal to reps when big
/// is unconjugated); the pairwise-distinctness test runs there.
struct Transversal {
    SubgroupSpec big, small;
    std::vector<Mat> reps;
    std::vector<Mat> pattern_side;
    std::string param_description;
};

/// Tower ingredients for one appendix case at precision K = ring.K >= 3m+3.
struct TowerContext {
    const RingSpec* ring = nullptr;
    FieldCase fcase = FieldCase::Split;
    int m = 1;
    int n = 6;
    SubgroupSpec V, Vprime;      // V_{p^n,p^m} and V'_{p^n,p^m} over the extension ring
    SubgroupSpec HV, HVprime;    // u V u^-1 ∩ H and u V' u^-1 ∩ H
    SubgroupSpec VcapH;          // V ∩ u^-1 H u (construction side for sigma')
    SubgroupSpec VprimeCapH;
    Mat u, u_inv;
};
TowerContext make_tower(FieldCase c, uint64_t p, int m, int n, const RingSpec& ring);

/// The unitriangular sigma_v family: p^10 exact members of V representing V/V'.
Transversal transversal_sigma(const TowerContext& T);
/// The sigma'_w family: p^10 exact members of uVu^-1 ∩ H representing its
/// quotient by uV'u^-1 ∩ H, built by steered constrained lifting.
Transversal transversal_sigma_prime(const TowerContext& T);

struct VerifyOptions {
    OrderOptions order;
    bool check_completeness = true;
    unsigned threads = 0;
};
/// (a) membership of every rep in big, (b) pairwise distinctness
/// rep_i^-1 rep_j not in small, (c) cardinality equal to [big : small].
CheckReport verify_transversal(const Transversal& t, const VerifyOptions& opt = {});

}  // namespace towers
