#pragma once

#include <functional>
#include <vector>

#include "liekit/common.hpp"

namespace liekit {

/// Positive-definite Hermitian form given by its Gram matrix.
struct HermitianForm {
    CMat gram;

    Eigen::Index dim() const { return gram.rows(); }
};

struct QuadratureNode {
    double weight = 0.0;
    CMat g;  // group element
};

/// Uniform angular quadrature on SO(2): n nodes k(2*pi*i/n) with weight 1/n.
/// Exact for trigonometric polynomials of degree < n.
std::vector<QuadratureNode> so2_quadrature(int n);

/// Average the standard inner product over the group:
///   gram = sum_i w_i * rep(g_i^-1)^* rep(g_i^-1).
/// Weights must be positive and sum to 1; an indefinite result (quadrature
/// too coarse for the representation) raises accuracy_error.
HermitianForm invariant_hermitian_form(const std::vector<QuadratureNode>& quadrature,
                                       const std::function<CMat(const CMat&)>& rep,
                                       const Tolerances& tol = {});

/// Basis of the form-orthogonal complement of the span of `subspace`.
std::vector<CVec> invariant_complement(const HermitianForm& form,
                                       const std::vector<CVec>& subspace,
                                       const Tolerances& tol = {});

}  // namespace liekit
