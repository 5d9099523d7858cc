#pragma once

#include <optional>
#include <vector>

#include "towers/ring.hpp"

namespace towers {

/// Dense square matrix over a residue ring.
struct Mat {
    const RingSpec* R = nullptr;
    int n = 0;
    std::vector<RingElem> e;

    Mat() = default;
    Mat(const RingSpec& ring, int dim)
        : R(&ring), n(dim), e(static_cast<size_t>(dim) * dim, RingElem::zero(ring)) {}

    RingElem& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
    const RingElem& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }

    static Mat identity(const RingSpec& ring, int dim);
    static Mat zero(const RingSpec& ring, int dim) { return Mat(ring, dim); }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat transpose() const;
    Mat conjugate() const;                       // entry-wise bar
    Mat conjugate_transpose() const { return conjugate().transpose(); }
    Mat scaled(const RingElem& c) const;
    // Inverse over the local ring (Gaussian with unit pivots); split rings are
    // inverted component-wise. Throws NonUnit when singular.
    Mat inverse() const;
    bool operator==(const Mat& o) const { return e == o.e; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool is_rational() const;
    std::string str() const;
};

/// Group element: a matrix plus the lazily cached similitude multiplier
/// (the GL1 component in split coordinates).
struct GroupElem {
    Mat mat;
    std::optional<RingElem> multiplier;

    GroupElem() = default;
    explicit GroupElem(Mat m) : mat(std::move(m)) {}
    GroupElem(Mat m, RingElem mult) : mat(std::move(m)), multiplier(mult) {}
};

enum class GroupKind { GL, GSp, GU };
const char* group_kind_name(GroupKind k);

/// The 2g x 2g form: J = [[0, I'_g], [-I'_g, 0]] with I'_g the anti-diagonal identity.
Mat symplectic_form(int g, const RingSpec& ring);
/// Anti-diagonal skew form for any even dimension (dim = 2g).
Mat standard_form(int dim, const RingSpec& ring);

/// h^t J h = mu J; returns mu (a unit) or nullopt.
std::optional<RingElem> gsp_multiplier(const Mat& h);
/// conj(g)^t J g = nu J with nu a rational unit; returns nu or nullopt.
std::optional<RingElem> gu_multiplier(const Mat& g);
/// Multiplier dispatch: GL -> 1 when invertible, GSp/GU as above.
std::optional<RingElem> multiplier(GroupKind kind, const Mat& g);
bool in_group(GroupKind kind, const Mat& g);

/// Coerce a symplectic-similitude matrix over Z/p^K into the extension ring.
/// The unitary multiplier of the image equals the symplectic multiplier.
GroupElem phi_embed(const Mat& h, const RingSpec& ext);

/// Split-coordinate isomorphism: g = (M, N) over the pair ring with N^t J M = a J
/// corresponds to (M, a); the inverse rebuilds N = a J^{-1} M^{-t} J.
struct SplitCoords {
    Mat m;        // over the rational shadow ring
    RingElem a;   // rational GL1 part
};
SplitCoords split_iso(const Mat& g);
Mat split_iso_inv(const Mat& m, const RingElem& a, const RingSpec& split_ring);

/// Matrix of the j-th exterior power on lexicographically ordered wedge basis.
Mat exterior_power(const Mat& m, int j);

/// Cocharacter x -> diag(x^{e_1}, ..., x^{e_n}).
struct Cocharacter {
    std::vector<int> exponents;
    static Cocharacter eta_gu22() { return Cocharacter{{3, 2, 1, 0}}; }
    static Cocharacter eta_gl2() { return Cocharacter{{1, 0}}; }
};
/// diag(p^{k e_1}, ..., p^{k e_n}) over the ring. Entries may be zero divisors;
/// consumers transport congruences symbolically instead of inverting this.
Mat cocharacter_matrix(const Cocharacter& c, int k, const RingSpec& ring);

/// Subsets of {0..n-1} of size j in lexicographic order (wedge basis indexing).
std::vector<std::vector<int>> subsets_lex(int n, int j);

}  // namespace towers
