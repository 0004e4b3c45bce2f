#pragma once

#include <boost/rational.hpp>
#include <vector>

#include "liekit/common.hpp"
#include "liekit/lattice.hpp"

namespace liekit {

using Rational = boost::rational<long long>;

/// Element p + q*sqrt(a) of the quadratic field Q(sqrt(a)), exact.
struct QuadExt {
    Rational p{0};
    Rational q{0};
    long long a = 0;

    double value() const;
};

QuadExt qe_add(const QuadExt& u, const QuadExt& v);
QuadExt qe_sub(const QuadExt& u, const QuadExt& v);
QuadExt qe_mul(const QuadExt& u, const QuadExt& v);
bool qe_eq(const QuadExt& u, const QuadExt& v);

/// 2x2 matrix over Q(sqrt(a)).
struct QMat2 {
    QuadExt e[2][2];

    QuadExt det() const;
    RMat embed() const;  // numerical image with sqrt(a) evaluated
};

QMat2 qm_add(const QMat2& u, const QMat2& v);
QMat2 qm_mul(const QMat2& u, const QMat2& v);
QMat2 qm_scale(long long c, const QMat2& u);
QMat2 qm_identity(long long a);
bool qm_eq(const QMat2& u, const QMat2& v);

/// Basis matrices of the quaternion algebra with i^2 = aI, j^2 = bI,
/// ij = -ji = k, realized over Q(sqrt(a)). A perfect-square `a` splits the
/// field; the construction still goes through and is only flagged.
struct QuatBasis {
    long long a = 0;
    long long b = 0;
    QMat2 i, j, k;
    bool degenerate_field = false;  // a is a perfect square
};

QuatBasis quaternion_basis(long long a, long long b);

/// Integer quaternion w + xi + yj + zk with its exact matrix image.
struct QuatElement {
    long long w = 0, x = 0, y = 0, z = 0;
    QMat2 matrix;

    long long norm_form(long long a, long long b) const {
        return w * w - a * x * x - b * y * y + a * b * z * z;
    }
};

QMat2 quat_matrix(const QuatBasis& basis, long long w, long long x, long long y, long long z);

/// All unit-norm integer quaternions with coordinates bounded by `height`,
/// sorted lexicographically in (w, x, y, z).
std::vector<QuatElement> quaternion_lattice_elements(const QuatBasis& basis, long long height);

/// Minimal Frobenius distance between distinct real embeddings.
/// Exact duplicates signal an enumeration bug and raise internal_error.
double discreteness_margin(const std::vector<QuatElement>& elements);

/// Elements congruent to the identity mod m: (w,x,y,z) == (1,0,0,0) mod m.
std::vector<QuatElement> congruence_filter(const std::vector<QuatElement>& elements,
                                           long long m);

/// Integer-matrix variant: entries congruent to the identity matrix mod m.
std::vector<IMat> congruence_filter(const std::vector<IMat>& elements, long long m);

}  // namespace liekit
