#pragma once

#include <vector>

#include "liekit/common.hpp"

namespace liekit {

/// NAK factorization of an SL_d matrix: g = n * diag(a) * k with n unit
/// upper triangular, a positive with product 1, k special orthogonal.
struct NAKDecomposition {
    RMat n;
    RVec a;
    RMat k;

    RMat reassemble() const { return n * a.asDiagonal() * k; }
};

/// Iwasawa decomposition via a Householder factorization of the row flag.
/// Requires |det g - 1| <= 1e-9 unless `rescale` is set, in which case the
/// input is divided by det^(1/d) first (det must be positive).
NAKDecomposition iwasawa(const RMat& g, bool rescale = false, const Tolerances& tol = {});

}  // namespace liekit
