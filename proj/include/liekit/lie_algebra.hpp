#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "liekit/common.hpp"

namespace liekit {

/// Ordered basis of a subspace of d x d matrices.
struct LieBasis {
    Eigen::Index ambient_dim = 0;
    std::vector<CMat> elements;
    bool real_field = false;  // tag only; storage is always complex

    Eigen::Index dim() const { return static_cast<Eigen::Index>(elements.size()); }
};

/// Check the basis invariant: elements are d x d and linearly independent
/// (numerical rank of the flattened vectors equals the element count).
void validate_basis(const LieBasis& basis, const Tolerances& tol = {});

CMat bracket(const CMat& x, const CMat& y);
RMat bracket(const RMat& x, const RMat& y);

struct BCHResult {
    CMat value;
    int order = 0;
    double input_scale = 0.0;  // max(|A|, |B|)
};

/// Truncated Baker-Campbell-Hausdorff series through the requested order
/// (1..4). Orders 3 and 4 use the nested-commutator coefficients
/// 1/12, 1/12, -1/24; the test suite pins their exponents against the
/// matrix-logarithm oracle.
BCHResult bch_truncated(const CMat& a, const CMat& b, int order);
BCHResult bch_truncated(const RMat& a, const RMat& b, int order);

/// The two product limits approximating exp(A+B) and exp([A,B]):
/// ((exp(A/n)exp(B/n))^n, (exp(A/n)exp(B/n)exp(-A/n)exp(-B/n))^(n^2)).
std::pair<CMat, CMat> group_commutator_limit_check(const CMat& a, const CMat& b, long n,
                                                   const Tolerances& tol = {});

struct TangentAlgebraResult {
    LieBasis basis;
    bool dependent_constraints = false;  // rank collapsed below constraint count
};

/// Null space of the stacked linear functionals X -> <gradient_k, X>, i.e.
/// the tangent space at the identity of the locus cut out by the defining
/// polynomials whose gradients are supplied.
TangentAlgebraResult tangent_algebra(const std::vector<CMat>& constraint_gradients,
                                     Eigen::Index d, const Tolerances& tol = {});

/// Gradient of det at the identity (trace functional), defining SL_d.
std::vector<CMat> sl_constraints(Eigen::Index d);
/// Gradients of the entries of g^T g - I at the identity, defining O_d.
std::vector<CMat> orthogonal_constraints(Eigen::Index d);

struct ClosureWitness {
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    double residual = 0.0;
    CMat value;
};

struct ClosureResult {
    bool closed = false;
    // structure[(i*n + j)*n + k] = c_ijk with [X_i, X_j] = sum_k c_ijk X_k
    std::vector<Complex> structure_constants;
    std::optional<ClosureWitness> witness;
};

ClosureResult closure_check(const LieBasis& basis, const Tolerances& tol = {});

/// Dimensions of the derived series g, [g,g], [[g,g],[g,g]], ... until
/// stabilization; the input is solvable iff the last entry is 0.
std::vector<Eigen::Index> derived_series(const LieBasis& basis, const Tolerances& tol = {});

/// Smallest bracket-closed space containing the input elements.
LieBasis lie_closure(const LieBasis& basis, const Tolerances& tol = {});

/// Simultaneous triangularization of a solvable algebra: returns invertible
/// g with g*X*g^-1 upper triangular for every input element, found by the
/// common-eigenvector induction through a codimension-one ideal.
/// Throws solvability_error when the derived series does not vanish and
/// ill_conditioned_error when the eigenvector search degenerates.
CMat lie_kolchin_triangularize(const LieBasis& basis, const Tolerances& tol = {});

}  // namespace liekit
