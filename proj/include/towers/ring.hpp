#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "towers/errors.hpp"

namespace towers {

// 64-bit modular helpers. Moduli are p^K <= 23^7, so products need 128 bits.
inline uint64_t addm(uint64_t a, uint64_t b, uint64_t q) {
    uint64_t s = a + b;
    return s >= q ? s - q : s;
}
inline uint64_t subm(uint64_t a, uint64_t b, uint64_t q) { return a >= b ? a - b : a + q - b; }
inline uint64_t mulm(uint64_t a, uint64_t b, uint64_t q) {
    if ((a | b) < (uint64_t{1} << 32)) return a * b % q;
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}
uint64_t powm(uint64_t a, uint64_t e, uint64_t q);
// Inverse of a unit mod q; throws NonUnit otherwise.
uint64_t invm(uint64_t a, uint64_t q);
bool is_prime_u64(uint64_t n);

enum class RingKind { Rational, Split, Inert };

/// Z/p^K, or a rank-2 extension of it: the split model (pair ring Z/p^K x Z/p^K
/// with coordinate-swapping conjugation) or the inert model Z[y]/(y^2 - s*y - t, p^K).
/// Specs are interned; RingElem holds a pointer into the pool.
struct RingSpec {
    uint64_t p = 0;
    unsigned K = 0;
    uint64_t q = 0;  // p^K
    RingKind kind = RingKind::Rational;
    uint64_t s = 0, t = 0;  // minimal polynomial y^2 = s*y + t, coefficients mod q (inert only)
    std::optional<int> field_disc;

    unsigned coords() const { return kind == RingKind::Rational ? 1u : 2u; }
    bool quadratic() const { return kind != RingKind::Rational; }
    std::string label() const;

    static const RingSpec& rational(uint64_t p, unsigned K);
    static const RingSpec& split(uint64_t p, unsigned K, std::optional<int> field_disc = {});
    static const RingSpec& inert(uint64_t p, unsigned K, int64_t s, int64_t t,
                                 std::optional<int> field_disc = {});
    // Inert model with the default integral basis for d in {-1,-3,-7}.
    static const RingSpec& inert_field(uint64_t p, unsigned K, int field_disc);
    // Rational ring with the same (p, K).
    const RingSpec& rational_shadow() const { return rational(p, K); }
};

/// One residue-ring element. Immutable by convention: all operations return new values.
struct RingElem {
    const RingSpec* R = nullptr;
    uint64_t a = 0, b = 0;  // rational: (a, 0); split: the pair; inert: a + b*y

    RingElem() = default;
    RingElem(const RingSpec& spec, uint64_t a_, uint64_t b_ = 0) : R(&spec), a(a_ % spec.q), b(b_ % spec.q) {}

    static RingElem zero(const RingSpec& R) { return RingElem(R, 0, 0); }
    static RingElem one(const RingSpec& R) { return RingElem(R, 1, R.kind == RingKind::Split ? 1 : 0); }
    // The canonical generator: y (inert), the first idempotent-ish (1,0) (split).
    static RingElem gen(const RingSpec& R);
    static RingElem from_int(const RingSpec& R, int64_t v);

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_one() const { return *this == one(*R); }
    bool operator==(const RingElem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator*(const RingElem& o) const;
    RingElem operator-() const;

    // True when the element lies in the image of Z/p^K (fixed by conjugation).
    bool is_rational() const;
    std::string str() const;
};

RingElem conj(const RingElem& x);
// Largest v <= K with x in p^v * ring; K for x = 0.
unsigned valuation(const RingElem& x);
bool is_unit(const RingElem& x);
// x * conj(x); always lands in the rational subring.
RingElem norm(const RingElem& x);
// Multiplicative inverse; throws NonUnit when valuation(x) > 0.
RingElem invert(const RingElem& x);

}  // namespace towers
