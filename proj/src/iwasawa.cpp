#include "liekit/iwasawa.hpp"

#include <cmath>

namespace liekit {

NAKDecomposition iwasawa(const RMat& g, bool rescale, const Tolerances& tol) {
    require_square(g, "iwasawa");
    const Eigen::Index d = g.rows();
    const double det = g.determinant();
    if (std::abs(det) < tol.singularity) throw validation_error("iwasawa: singular input");

    RMat m = g;
    if (rescale) {
        if (det <= 0.0)
            throw validation_error("iwasawa: cannot rescale a non-positive determinant to 1");
        m /= std::pow(det, 1.0 / static_cast<double>(d));
    } else if (std::abs(det - 1.0) > 1e-9) {
        throw validation_error("iwasawa: determinant must be 1 (pass rescale to normalize)");
    }

    // g = T k with T upper triangular (positive diagonal) and k orthogonal
    // is the QR factorization of the reversed transpose: with J the exchange
    // matrix, g^T J = Q R gives T = J R^T J and k = J Q^T.
    RMat rev = m.transpose();
    for (Eigen::Index j = 0; j < d / 2; ++j) rev.col(j).swap(rev.col(d - 1 - j));
    const Eigen::HouseholderQR<RMat> qr(rev);
    RMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    RMat q = qr.householderQ();

    // Fix the sign indeterminacy so the triangular factor has a positive diagonal.
    for (Eigen::Index i = 0; i < d; ++i)
        if (r(i, i) < 0.0) {
            r.row(i) *= -1.0;
            q.col(i) *= -1.0;
        }

    RMat t(d, d), k(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            t(i, j) = r(d - 1 - j, d - 1 - i);
            k(i, j) = q(j, d - 1 - i);
        }

    NAKDecomposition out;
    out.a = t.diagonal();
    out.n = t * out.a.cwiseInverse().asDiagonal();
    out.k = k;

    if ((out.k * out.k.transpose() - RMat::Identity(d, d)).norm() > 1e-10)
        throw numeric_error("iwasawa: orthogonal factor lost orthogonality");
    if (out.k.determinant() < 0.0)
        throw numeric_error("iwasawa: orthogonal factor has determinant -1");
    return out;
}

}  // namespace liekit
