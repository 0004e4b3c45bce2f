#pragma once

#include "liekit/common.hpp"

namespace liekit {

/// Multiplicative Jordan decomposition g = s * u with s semisimple,
/// u unipotent, and s*u = u*s.
struct JordanSplit {
    CMat semisimple;
    CMat unipotent;
    double eigenvector_condition = 0.0;  // condition number of the diagonalizer of s
};

enum class ElementClass { Semisimple, Unipotent, Mixed };

/// Split an invertible matrix into commuting semisimple and unipotent factors.
/// Eigenvalues within tol.clustering relative distance are merged into one
/// cluster; a cluster gap below 3x the merge distance raises
/// ill_conditioned_error with a diagnostic.
JordanSplit jordan_split(const CMat& g, const Tolerances& tol = {});
JordanSplit jordan_split(const RMat& g, const Tolerances& tol = {});

ElementClass classify_element(const CMat& g, const Tolerances& tol = {});
ElementClass classify_element(const RMat& g, const Tolerances& tol = {});

const char* to_string(ElementClass c);

}  // namespace liekit
