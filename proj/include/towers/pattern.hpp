#pragma once

#include <optional>
#include <string>
#include <vector>

#include "towers/groups.hpp"

namespace towers {

enum class FieldCase { Split, Inert };
inline const char* field_case_name(FieldCase c) { return c == FieldCase::Split ? "split" : "inert"; }

/// Extra per-diagonal requirement on top of the exponent matrix.
struct DiagTarget {
    enum class Kind { Free, Unit, OneModPa, EqualEntry };
    Kind kind = Kind::Free;
    int a = 0;      // OneModPa exponent
    int other = 0;  // EqualEntry partner index
};

/// Entry-wise congruence condition "g == delta mod p^{e_ij}" (delta the identity),
/// exponent 0 meaning no constraint, plus optional diagonal targets.
/// Intersection takes entry-wise max and the conjunction of targets.
struct CongruencePattern {
    int n = 0;
    std::vector<int> expo;  // n*n
    std::vector<std::vector<DiagTarget>> diag;

    static CongruencePattern trivial(int n);
    int& e(int i, int j) { return expo[static_cast<size_t>(i) * n + j]; }
    int e(int i, int j) const { return expo[static_cast<size_t>(i) * n + j]; }
    CongruencePattern intersect(const CongruencePattern& o) const;
    int max_exponent() const;
};

/// Transport of a pattern under conjugation by eta(p)^k: the exponent of entry
/// (i,j) becomes max(0, e_ij + k (e_i - e_j)); diagonal data is unchanged.
/// Throws PrecisionTooLow when an exponent would exceed K.
CongruencePattern transport(const CongruencePattern& pat, const Cocharacter& c, int k, unsigned K);

/// A congruence subgroup as a membership predicate: the ambient group condition,
/// a congruence pattern (optionally tested in conjugated coordinates), an optional
/// rationality condition (again optionally after conjugation), and an optional
/// multiplier congruence.
struct SubgroupSpec {
    std::string name;
    GroupKind kind = GroupKind::GL;
    const RingSpec* ring = nullptr;
    int dim = 0;
    CongruencePattern pattern;
    // pattern is evaluated on pconj_inv * g * pconj, i.e. the spec is the
    // conjugate pconj * {pattern group} * pconj_inv.
    std::optional<Mat> pconj, pconj_inv;
    // when set, rconj * g * rconj_inv must have conjugation-fixed entries
    bool rational = false;
    std::optional<Mat> rconj, rconj_inv;
    std::optional<int> mult_one_mod;  // multiplier == 1 mod p^a

    unsigned K() const { return ring->K; }
    bool membership(const Mat& g) const;
    std::string to_json_string() const;

    SubgroupSpec conjugated_by(const Mat& u, const std::string& new_name) const;
    SubgroupSpec intersect_pattern(const CongruencePattern& extra, const std::string& new_name) const;
};

// -- named subgroups ---------------------------------------------------------

/// U1(p^m) in GSp_2g over Z/p^K: last row congruent to (0,...,0,1) mod p^m.
SubgroupSpec u1_spec(int g, int m, const RingSpec& ring);
/// V1(p^m) in GU(2,2) over the extension ring (also used at dim 2 for the
/// small unitary analogue).
SubgroupSpec v1_spec(int m, const RingSpec& ring, int dim = 4);
/// Full ambient group (trivial pattern).
SubgroupSpec full_spec(GroupKind kind, int dim, const RingSpec& ring);
/// The depth-m block congruence {g == diag(*,1,...,*,1) mod p^m}.
CongruencePattern diag_alternating_pattern(int dim, int m);

/// V_{p^n,p^m}: the recursive intersection V1(p^n) ∩ eta^m V1(p^n) eta^{-m} ∩ diag-congruence.
SubgroupSpec v_nm_spec(int n, int m, const RingSpec& ring);
/// V'_{p^n,p^m}: V1(p^n) ∩ eta^{m+1} V1(p^n) eta^{-(m+1)} ∩ diag-congruence at depth m.
SubgroupSpec v_prime_spec(int n, int m, const RingSpec& ring);
/// The resolved explicit pattern, valid for n > 3m:
/// exponents [[0,m,2m,3m],[n,m,m,2m],[n,m,0,m],[n,n,n,n]], diagonal (free, m, free, n).
SubgroupSpec v_nm_pattern(int n, int m, const RingSpec& ring);
/// g=1 analogues on GL2 with cocharacter (1,0).
SubgroupSpec v_nm_spec_g1(int n, int m, const RingSpec& ring);
SubgroupSpec v_prime_spec_g1(int n, int m, const RingSpec& ring);

/// Klingen-type parabolic: last row exactly (0,..,0,1), first column zero below the corner.
SubgroupSpec klingen_spec(int g, const RingSpec& ring);
/// Upper and lower triangular Borels of the ambient group.
std::pair<SubgroupSpec, SubgroupSpec> borel_specs(GroupKind kind, int dim, const RingSpec& ring);

/// The appendix conjugators: split u = ((I - E_13), 1), inert u = I + e E_13 + conj(e) E_24.
GroupElem u_split(const RingSpec& split_ring);
GroupElem u_inert(const RingElem& e);

}  // namespace towers
