#pragma once

#include <array>

#include "towers/lift.hpp"
#include "towers/report.hpp"

namespace towers {

/// Rank-4 module over O_F/p^K with the sesquilinear pairing H = y_F * J.
struct OFModule {
    const RingSpec* R = nullptr;
    explicit OFModule(const RingSpec& ring) : R(&ring) {
        if (!ring.quadratic()) fail(Errc::ConfigError, "OFModule needs an extension ring");
    }
    using Vec = std::array<RingElem, 4>;
    Vec basis_vector(int i) const;
    RingElem y() const { return RingElem::gen(*R); }
};

/// H(x1, x2) = conj(x1)^t (y J) x2.
RingElem hermitian_form(const OFModule& M, const OFModule::Vec& x1, const OFModule::Vec& x2);

/// Coordinates of H(x1, x2) in the basis {1, y}: (first, second) with
/// H = first + y * second. The second coordinate is the skew Z-valued pairing;
/// restricted to Z^4 it is the J-pairing.
std::pair<RingElem, RingElem> skew_decompose(const OFModule& M, const OFModule::Vec& x1,
                                             const OFModule::Vec& x2);

/// Extension of scalars of a symplectic-similitude matrix over Z/M to the
/// O_F-module; asserts equivariance and similitude compatibility of the pairing.
/// Throws NotSymplectic when alpha is not a symplectic similitude.
Mat tensor_level_structure(const Mat& alpha, const RingSpec& ext);

/// Sections 4/6 identities: reconstruction, skewness where it holds, restriction
/// to Z^4, and the exact sesqui-skew relation H(x2,x1) = -(y/conj(y)) conj(H(x1,x2)).
CheckReport hermitian_decomposition_check(const RingSpec& ring, int samples, uint64_t seed);

/// Row-coset structure of V1: injectivity of g -> R_4(g) on cosets, constructive
/// completion of admissible rows, and the module-theoretic p^r O_F-point bijection.
CheckReport ofpoint_structure_check(uint64_t p, int r, FieldCase fcase, int field_disc,
                                    int samples, uint64_t seed);

}  // namespace towers
