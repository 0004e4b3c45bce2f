#include "liekit/quadratic_form.hpp"

namespace liekit {

RMat QuadraticForm::gram_double() const {
    RMat m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = boost::rational_cast<double>(at(i, j));
    return m;
}

QuadraticForm make_quadratic_form(Eigen::Index dim, std::vector<Rational> gram) {
    require(dim >= 1, "QuadraticForm: dimension must be positive");
    require(gram.size() == static_cast<size_t>(dim * dim), "QuadraticForm: gram size mismatch");
    QuadraticForm q{dim, std::move(gram)};
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = i + 1; j < dim; ++j)
            if (q.at(i, j) != q.at(j, i))
                throw validation_error("QuadraticForm: gram matrix is not symmetric");
    if (exact_det(q) == Rational(0))
        throw validation_error("QuadraticForm: gram matrix is degenerate");
    return q;
}

Rational exact_det(const QuadraticForm& q) {
    const Eigen::Index d = q.dim;
    std::vector<Rational> m = q.gram;
    const auto at = [&](Eigen::Index i, Eigen::Index j) -> Rational& {
        return m[static_cast<size_t>(i * d + j)];
    };
    Rational det(1);
    for (Eigen::Index col = 0; col < d; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < d; ++r)
            if (at(r, col) != Rational(0)) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (Eigen::Index c = 0; c < d; ++c) std::swap(at(pivot, c), at(col, c));
            det = -det;
        }
        det *= at(col, col);
        for (Eigen::Index r = col + 1; r < d; ++r) {
            if (at(r, col) == Rational(0)) continue;
            const Rational factor = at(r, col) / at(col, col);
            for (Eigen::Index c = col; c < d; ++c) at(r, c) -= factor * at(col, c);
        }
    }
    return det;
}

LieBasis so_q_algebra(const QuadraticForm& q, const Tolerances& tol) {
    const Eigen::Index d = q.dim;
    const RMat m = q.gram_double();

    // Linear operator X -> X*M + M*X^T flattened row-major over X entries.
    RMat op(d * d, d * d);
    for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l)
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = 0; j < d; ++j) {
                    double c = 0.0;
                    if (k == i) c += m(j, l);  // (X M)_{kl}
                    if (l == i) c += m(k, j);  // (M X^T)_{kl}
                    op(k * d + l, i * d + j) = c;
                }

    Eigen::JacobiSVD<RMat> svd(op, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tol.span * std::max(1.0, sv(0));
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;

    LieBasis out;
    out.ambient_dim = d;
    out.real_field = true;
    for (Eigen::Index c = rank; c < d * d; ++c) {
        CMat x(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) x(i, j) = svd.matrixV()(i * d + j, c);
        out.elements.push_back(x);
    }
    return out;
}

long long IntQuadForm::eval(const std::vector<long long>& v) const {
    long long total = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) total += at(i, j) * v[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
    return total;
}

IntQuadForm make_int_quad_form(int dim, std::vector<long long> upper_coeffs) {
    require(dim >= 1 && dim <= 4, "IntQuadForm: dimension must be in 1..4");
    const size_t expect = static_cast<size_t>(dim * (dim + 1) / 2);
    require(upper_coeffs.size() == expect, "IntQuadForm: expected upper-triangle coefficients");
    IntQuadForm form;
    form.dim = dim;
    form.coeff.assign(static_cast<size_t>(dim * dim), 0);
    size_t idx = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) form.at(i, j) = upper_coeffs[idx++];
    return form;
}

IntQuadForm diagonal_form(const std::vector<long long>& diag) {
    const int dim = static_cast<int>(diag.size());
    require(dim >= 1 && dim <= 4, "diagonal_form: dimension must be in 1..4");
    IntQuadForm form;
    form.dim = dim;
    form.coeff.assign(static_cast<size_t>(dim * dim), 0);
    for (int i = 0; i < dim; ++i) form.at(i, i) = diag[static_cast<size_t>(i)];
    return form;
}

namespace {

// Recursive lexicographic scan over sign-canonical vectors.
bool scan(const IntQuadForm& form, long long height, size_t level, std::vector<long long>& v,
          bool leading_zero, std::vector<long long>& hit) {
    if (level == static_cast<size_t>(form.dim)) {
        if (leading_zero) return false;  // the zero vector
        if (form.eval(v) != 0) return false;
        hit = v;
        return true;
    }
    const long long lo = leading_zero ? 0 : -height;  // canonical: first nonzero positive
    for (long long c = lo; c <= height; ++c) {
        v[level] = c;
        if (scan(form, height, level + 1, v, leading_zero && c == 0, hit)) return true;
    }
    v[level] = 0;
    return false;
}

}  // namespace

std::optional<std::vector<long long>> isotropic_search(const IntQuadForm& form,
                                                       long long height) {
    require(height >= 1, "isotropic_search: height must be >= 1");
    std::vector<long long> v(static_cast<size_t>(form.dim), 0);
    std::vector<long long> hit;
    if (scan(form, height, 0, v, true, hit)) return hit;
    return std::nullopt;
}

}  // namespace liekit
