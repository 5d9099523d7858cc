#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "towers/report.hpp"

namespace towers {

using BigInt = boost::multiprecision::cpp_int;

/// The torsion group (Z/c)^{2g}; points are indexed in base c.
struct TorsionGroup {
    int g = 1;
    int64_t c = 1;
    size_t size() const;
    std::vector<int64_t> point(size_t idx) const;
    size_t index_of(const std::vector<int64_t>& pt) const;
    bool operator==(const TorsionGroup& o) const { return g == o.g && c == o.c; }
};

/// Integer-valued function on a torsion group; exact coefficients.
struct Divisor {
    TorsionGroup base;
    std::vector<BigInt> coeff;

    explicit Divisor(TorsionGroup b) : base(b), coeff(b.size(), 0) {}
    BigInt degree() const;
    bool operator==(const Divisor& o) const { return base == o.base && coeff == o.coeff; }
    json to_json() const;  // sparse (point, coefficient) list
};

/// D_c = c^{2g} e_*(1) - pi^*(1): coefficient c^{2g}-1 at 0 and -1 elsewhere.
Divisor d_c(int64_t c, int g);

/// Pullback along multiplication by a: from (Z/c)^{2g} to (Z/ac)^{2g}
/// (in integer coordinates, multiplication by a on torsion is reduction mod c).
Divisor pullback(const Divisor& D, int64_t a);
/// Pushforward along multiplication by a with gcd(a, c) = 1: relabeling x -> a x.
Divisor pushforward(const Divisor& D, int64_t a);
/// Extension by zero along A[c] (points c'*k) inside A[c*c'].
Divisor extend_by_zero(const Divisor& D, int64_t cofactor);

/// [c1]^* D_{c2} + c2^{2g} D_{c1} = D_{c1 c2}, in both argument orders.
CheckReport distribution_check(int64_t c1, int64_t c2, int g);
/// Gysin-dual pairing model: <phi(v), b> = b * deg(v); degree 0 <=> kernel.
CheckReport duality_pairing_check(int64_t c, int g, int samples, uint64_t seed);
/// Pushforward by every unit fixes D_c (trace invariance shadow) over a grid.
CheckReport trace_invariance_check(int64_t c_max, int g_max);

/// N_m = prod_{i=0}^{2g-1} (1 - m^{2g-i}).
BigInt n_m(int g, int64_t m);
unsigned v_p(const BigInt& x, uint64_t p);  // valuation; huge sentinel for 0
/// v_p(N_m) with the p > 2g+1 / primitive-root sufficiency cross-check.
CheckReport n_m_unit_check(uint64_t p, int g, int64_t m);
/// Full-grid consistency of the sufficiency criterion (p <= p_max, g <= g_max, m < p).
CheckReport n_m_grid_check(uint64_t p_max, int g_max);

/// F_m = prod (Tr_m - m^{2g-i}) annihilates degrees i <= 2g-1, where Tr_m acts on
/// degree i as the (2g-i)-th exterior power of multiplication by m; on the
/// Tr-fixed line in top degree F_m is the scalar N_m.
CheckReport f_m_annihilation_check(int g, int64_t m);

}  // namespace towers
