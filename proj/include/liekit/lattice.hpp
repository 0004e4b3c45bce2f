#pragma once

#include <vector>

#include "liekit/common.hpp"

namespace liekit {

using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Full-rank lattice in R^d given by d basis row vectors.
struct LatticeBasis {
    RMat rows;

    double covolume() const { return std::abs(rows.determinant()); }
};

void validate_lattice(const LatticeBasis& basis, const Tolerances& tol = {});

struct ShortestVectorResult {
    RVec v;
    std::vector<long long> coeffs;  // v = coeffs * rows
    double norm = 0.0;
};

/// Nonzero lattice vector of minimal Euclidean norm, by depth-first
/// enumeration with per-level bounds from the Gram-Schmidt profile; the
/// search radius is the smallest basis-row norm times radius_multiplier.
/// Equal-norm ties resolve to the lexicographically smallest canonical
/// coefficient vector (first nonzero coefficient positive).
/// Supports dimension <= 6.
ShortestVectorResult shortest_vector(const LatticeBasis& basis, double radius_multiplier = 1.5,
                                     const Tolerances& tol = {});

struct ReducedBasis {
    LatticeBasis reduced;
    IMat transform;  // reduced.rows = transform * input.rows, |det| = 1
};

/// Reduced basis in the Siegel sense: the last vector is a shortest vector,
/// the projections of the others to its orthogonal complement are reduced
/// recursively, and every lift has minimal norm in its coset. The output
/// satisfies |n_ij| <= 1/2 and a_i/a_{i-1} <= 2/sqrt(3) in its Iwasawa
/// coordinates. When the input is square the result is sign-normalized to a
/// positive determinant. Supports dimension <= 6.
ReducedBasis reduce_basis(const LatticeBasis& basis, const Tolerances& tol = {});

/// Minimal shortest-vector norm across a family of unimodular lattices
/// (Mahler margin). Throws validation_error when a member is not unimodular.
double mahler_margin(const std::vector<LatticeBasis>& family, const Tolerances& tol = {});

}  // namespace liekit
