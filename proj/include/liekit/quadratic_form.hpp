#pragma once

#include <optional>
#include <vector>

#include "liekit/lie_algebra.hpp"
#include "liekit/quaternion.hpp"

namespace liekit {

/// Nondegenerate symmetric bilinear form with exact rational Gram matrix;
/// Q(v) = v * gram * v^T on row vectors.
struct QuadraticForm {
    Eigen::Index dim = 0;
    std::vector<Rational> gram;  // row-major dim x dim

    Rational& at(Eigen::Index i, Eigen::Index j) { return gram[static_cast<size_t>(i * dim + j)]; }
    const Rational& at(Eigen::Index i, Eigen::Index j) const {
        return gram[static_cast<size_t>(i * dim + j)];
    }
    RMat gram_double() const;
};

QuadraticForm make_quadratic_form(Eigen::Index dim, std::vector<Rational> gram);

/// Exact determinant of the Gram matrix (rational Gaussian elimination).
Rational exact_det(const QuadraticForm& q);

/// Lie algebra of SO(Q): null space of X -> X*M + M*X^T where M is the Gram
/// matrix; dimension d(d-1)/2.
LieBasis so_q_algebra(const QuadraticForm& q, const Tolerances& tol = {});

/// Integer quadratic form sum_{i<=j} c_ij v_i v_j in up to 4 variables.
struct IntQuadForm {
    int dim = 0;
    std::vector<long long> coeff;  // row-major upper triangle included in full dim x dim

    long long& at(int i, int j) { return coeff[static_cast<size_t>(i * dim + j)]; }
    long long at(int i, int j) const { return coeff[static_cast<size_t>(i * dim + j)]; }
    long long eval(const std::vector<long long>& v) const;
};

IntQuadForm make_int_quad_form(int dim, std::vector<long long> upper_coeffs);
/// Diagonal form c_1 v_1^2 + ... + c_d v_d^2.
IntQuadForm diagonal_form(const std::vector<long long>& diag);

/// First nonzero integer vector v with |v_i| <= height and P(v) = 0, in
/// lexicographic order over sign-canonical representatives; nullopt means
/// no zero up to the height (NOT a proof of anisotropy).
std::optional<std::vector<long long>> isotropic_search(const IntQuadForm& form,
                                                       long long height);

}  // namespace liekit
