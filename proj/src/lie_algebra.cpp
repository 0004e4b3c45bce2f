#include "liekit/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "liekit/expm.hpp"

namespace liekit {
namespace {

CVec flatten(const CMat& m) { return CVec(Eigen::Map<const CVec>(m.data(), m.size())); }

CMat unflatten(const CVec& v, Eigen::Index d) {
    return CMat(Eigen::Map<const CMat>(v.data(), d, d));
}

// Orthonormal basis (columns) of the span of the flattened elements.
CMat span_basis(const std::vector<CMat>& elements, Eigen::Index d, double rank_tol) {
    if (elements.empty()) return CMat(d * d, 0);
    CMat stacked(d * d, static_cast<Eigen::Index>(elements.size()));
    for (size_t i = 0; i < elements.size(); ++i) stacked.col(static_cast<Eigen::Index>(i)) = flatten(elements[i]);
    Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cutoff = rank_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return svd.matrixU().leftCols(rank);
}

double out_of_span_residual(const CMat& onb, const CMat& x) {
    const CVec v = flatten(x);
    const CVec proj = onb * (onb.adjoint() * v);
    return (v - proj).norm();
}

// Basis of the span of all pairwise brackets.
std::vector<CMat> bracket_span(const std::vector<CMat>& elements, Eigen::Index d,
                               double rank_tol) {
    std::vector<CMat> brackets;
    for (size_t i = 0; i < elements.size(); ++i)
        for (size_t j = i + 1; j < elements.size(); ++j)
            brackets.push_back(bracket(elements[i], elements[j]));
    const CMat onb = span_basis(brackets, d, rank_tol);
    std::vector<CMat> out;
    for (Eigen::Index c = 0; c < onb.cols(); ++c) out.push_back(unflatten(onb.col(c), d));
    return out;
}

}  // namespace

void validate_basis(const LieBasis& basis, const Tolerances& tol) {
    const Eigen::Index d = basis.ambient_dim;
    require(d > 0, "LieBasis: ambient dimension must be positive");
    for (const CMat& m : basis.elements) {
        require_square(m, "LieBasis element");
        require(m.rows() == d, "LieBasis: element dimension differs from ambient dimension");
    }
    if (basis.elements.empty()) return;
    const CMat onb = span_basis(basis.elements, d, tol.span);
    if (onb.cols() != basis.dim())
        throw validation_error("LieBasis: elements are not linearly independent");
}

CMat bracket(const CMat& x, const CMat& y) {
    require_square(x, "bracket");
    require(x.rows() == y.rows() && x.cols() == y.cols(), "bracket: dimension mismatch");
    return x * y - y * x;
}

RMat bracket(const RMat& x, const RMat& y) {
    require_square(x, "bracket");
    require(x.rows() == y.rows() && x.cols() == y.cols(), "bracket: dimension mismatch");
    return x * y - y * x;
}

BCHResult bch_truncated(const CMat& a, const CMat& b, int order) {
    require_square(a, "bch_truncated");
    require(a.rows() == b.rows() && a.cols() == b.cols(), "bch_truncated: dimension mismatch");
    if (order < 1 || order > 4)
        throw validation_error("bch_truncated: order must be in 1..4");

    BCHResult out;
    out.order = order;
    out.input_scale = std::max(a.norm(), b.norm());
    CMat value = a + b;
    if (order >= 2) value += 0.5 * bracket(a, b);
    if (order >= 3) {
        const CMat ab = bracket(a, b);
        value += (bracket(a, ab) - bracket(b, ab)) / 12.0;
    }
    if (order >= 4) {
        const CMat ab = bracket(a, b);
        value -= bracket(b, bracket(a, ab)) / 24.0;
    }
    out.value = value;
    return out;
}

BCHResult bch_truncated(const RMat& a, const RMat& b, int order) {
    return bch_truncated(CMat(a.cast<Complex>()), CMat(b.cast<Complex>()), order);
}

namespace {
CMat mat_power(CMat base, long e) {
    CMat acc = CMat::Identity(base.rows(), base.cols());
    while (e > 0) {
        if (e & 1) acc = (acc * base).eval();
        base = (base * base).eval();
        e >>= 1;
    }
    return acc;
}
}  // namespace

std::pair<CMat, CMat> group_commutator_limit_check(const CMat& a, const CMat& b, long n,
                                                   const Tolerances& tol) {
    require_square(a, "group_commutator_limit_check");
    require(a.rows() == b.rows() && a.cols() == b.cols(),
            "group_commutator_limit_check: dimension mismatch");
    require(n >= 1, "group_commutator_limit_check: n must be >= 1");
    const double nd = static_cast<double>(n);
    const CMat ea = mat_exp(CMat(a / nd), tol);
    const CMat eb = mat_exp(CMat(b / nd), tol);
    const CMat ea_inv = mat_exp(CMat(-a / nd), tol);
    const CMat eb_inv = mat_exp(CMat(-b / nd), tol);
    return {mat_power(ea * eb, n), mat_power(ea * eb * ea_inv * eb_inv, n * n)};
}

TangentAlgebraResult tangent_algebra(const std::vector<CMat>& constraint_gradients,
                                     Eigen::Index d, const Tolerances& tol) {
    require(d > 0, "tangent_algebra: dimension must be positive");
    TangentAlgebraResult out;
    out.basis.ambient_dim = d;

    if (constraint_gradients.empty()) {
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) {
                CMat e = CMat::Zero(d, d);
                e(i, j) = 1.0;
                out.basis.elements.push_back(e);
            }
        return out;
    }

    CMat stacked(static_cast<Eigen::Index>(constraint_gradients.size()), d * d);
    for (size_t k = 0; k < constraint_gradients.size(); ++k) {
        const CMat& grad = constraint_gradients[k];
        require_square(grad, "tangent_algebra constraint");
        require(grad.rows() == d, "tangent_algebra: constraint dimension mismatch");
        // Functional X -> sum_ij conj is not wanted: <G, X> = sum_ij G_ij X_ij.
        stacked.row(static_cast<Eigen::Index>(k)) = flatten(grad).transpose();
    }

    Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tol.span * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    out.dependent_constraints = rank < stacked.rows();

    // Trailing right-singular vectors span the null space of the stack.
    for (Eigen::Index c = rank; c < d * d; ++c)
        out.basis.elements.push_back(unflatten(svd.matrixV().col(c), d));
    return out;
}

std::vector<CMat> sl_constraints(Eigen::Index d) {
    return {CMat(CMat::Identity(d, d))};
}

std::vector<CMat> orthogonal_constraints(Eigen::Index d) {
    std::vector<CMat> grads;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i; j < d; ++j) {
            CMat g = CMat::Zero(d, d);
            g(i, j) += 1.0;
            g(j, i) += 1.0;
            grads.push_back(g);
        }
    return grads;
}

ClosureResult closure_check(const LieBasis& basis, const Tolerances& tol) {
    validate_basis(basis, tol);
    const Eigen::Index n = basis.dim();
    const Eigen::Index d = basis.ambient_dim;
    ClosureResult out;

    CMat stacked(d * d, n);
    double scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        stacked.col(i) = flatten(basis.elements[static_cast<size_t>(i)]);
        scale = std::max(scale, basis.elements[static_cast<size_t>(i)].norm());
    }
    const CMat onb = span_basis(basis.elements, d, tol.span);

    out.closed = true;
    out.structure_constants.assign(static_cast<size_t>(n * n * n), Complex(0.0));
    // Least-squares coordinates in the (possibly non-orthogonal) basis.
    const Eigen::ColPivHouseholderQR<CMat> qr(stacked);
    for (Eigen::Index i = 0; i < n && out.closed; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const CMat br =
                bracket(basis.elements[static_cast<size_t>(i)], basis.elements[static_cast<size_t>(j)]);
            const double residual = out_of_span_residual(onb, br);
            if (residual > tol.span * std::max(1.0, scale * scale)) {
                out.closed = false;
                out.witness = ClosureWitness{i, j, residual, br};
                out.structure_constants.clear();
                break;
            }
            const CVec coeff = qr.solve(flatten(br));
            for (Eigen::Index k = 0; k < n; ++k)
                out.structure_constants[static_cast<size_t>((i * n + j) * n + k)] = coeff(k);
        }
    return out;
}

std::vector<Eigen::Index> derived_series(const LieBasis& basis, const Tolerances& tol) {
    validate_basis(basis, tol);
    std::vector<Eigen::Index> dims;
    std::vector<CMat> current = basis.elements;
    {
        const CMat onb = span_basis(current, basis.ambient_dim, tol.span);
        dims.push_back(onb.cols());
    }
    while (true) {
        std::vector<CMat> next = bracket_span(current, basis.ambient_dim, tol.span);
        const Eigen::Index dim = static_cast<Eigen::Index>(next.size());
        dims.push_back(dim);
        if (dim == 0 || dim == dims[dims.size() - 2]) break;
        current = std::move(next);
    }
    return dims;
}

LieBasis lie_closure(const LieBasis& basis, const Tolerances& tol) {
    validate_basis(basis, tol);
    const Eigen::Index d = basis.ambient_dim;
    std::vector<CMat> elements = basis.elements;
    double scale = 1.0;
    for (const CMat& m : elements) scale = std::max(scale, m.norm());

    for (int round = 0; round < 64; ++round) {
        CMat onb = span_basis(elements, d, tol.span);
        std::vector<CMat> added;
        for (size_t i = 0; i < elements.size(); ++i)
            for (size_t j = i + 1; j < elements.size(); ++j) {
                const CMat br = bracket(elements[i], elements[j]);
                if (out_of_span_residual(onb, br) > tol.span * scale * scale) {
                    // Store the projected-out component to keep the list well conditioned.
                    const CVec v = flatten(br);
                    CVec res = v - onb * (onb.adjoint() * v);
                    res /= res.norm();
                    added.push_back(unflatten(res, d));
                    onb.conservativeResize(Eigen::NoChange, onb.cols() + 1);
                    onb.col(onb.cols() - 1) = res;
                }
            }
        if (added.empty()) break;
        for (CMat& m : added) elements.push_back(std::move(m));
    }

    LieBasis out;
    out.ambient_dim = d;
    out.real_field = basis.real_field;
    const CMat onb = span_basis(elements, d, tol.span);
    for (Eigen::Index c = 0; c < onb.cols(); ++c) out.elements.push_back(unflatten(onb.col(c), d));
    return out;
}

namespace {

// Refine a near-common eigenvector to machine precision as the smallest
// singular vector of the stacked shifted operators Y - <w, Yw> I. Keeps the
// induction from accumulating noise level by level.
CVec polish_common_eigenvector(const std::vector<CMat>& algebra, CVec w, int rounds = 3) {
    const Eigen::Index k = w.size();
    const Eigen::Index m = static_cast<Eigen::Index>(algebra.size());
    if (m == 0) return w;
    for (int round = 0; round < rounds; ++round) {
        w /= w.norm();
        CMat stacked(m * k, k);
        for (Eigen::Index i = 0; i < m; ++i) {
            const CMat& y = algebra[static_cast<size_t>(i)];
            const Complex lambda = w.dot(y * w);
            stacked.middleRows(i * k, k) = y - lambda * CMat::Identity(k, k);
        }
        Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeFullV);
        w = svd.matrixV().col(k - 1);
    }
    return w;
}

// Common eigenvector of a solvable algebra spanned by `onb` columns
// (flattened k x k matrices), by the codimension-one ideal induction.
CVec common_eigenvector(const std::vector<CMat>& raw, Eigen::Index k,
                        const Tolerances& tol, int depth) {
    if (depth > 64) throw ill_conditioned_error("lie_kolchin: induction depth exceeded");

    // Orthonormalize the (possibly dependent) generating list first.
    std::vector<CMat> algebra;
    {
        const CMat onb = span_basis(raw, k, tol.span);
        for (Eigen::Index c = 0; c < onb.cols(); ++c) algebra.push_back(unflatten(onb.col(c), k));
    }
    if (algebra.empty() || k == 1) {
        CVec e = CVec::Zero(k);
        e(0) = 1.0;
        return e;
    }

    // Derived subalgebra and a codimension-one ideal containing it.
    std::vector<CMat> derived = bracket_span(algebra, k, tol.span);
    const Eigen::Index m = static_cast<Eigen::Index>(algebra.size());
    const Eigen::Index m1 = static_cast<Eigen::Index>(derived.size());
    if (m1 >= m)
        throw solvability_error("lie_kolchin: derived algebra did not shrink");

    // Extend the derived basis by input elements in decreasing order of
    // out-of-span residual; the final addition plays the role of X.
    CMat onb = span_basis(derived, k, tol.span);
    std::vector<std::pair<double, size_t>> candidates;
    for (size_t i = 0; i < algebra.size(); ++i)
        candidates.emplace_back(out_of_span_residual(onb, algebra[i]), i);
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<CMat> ideal = derived;
    CMat x_elem;
    Eigen::Index added = 0;
    for (const auto& [res, idx] : candidates) {
        if (added == m - m1) break;
        if (out_of_span_residual(onb, algebra[idx]) <= tol.span) continue;
        const CVec v = flatten(algebra[idx]);
        CVec r = v - onb * (onb.adjoint() * v);
        r /= r.norm();
        onb.conservativeResize(Eigen::NoChange, onb.cols() + 1);
        onb.col(onb.cols() - 1) = r;
        ++added;
        if (added == m - m1)
            x_elem = algebra[idx];  // last added element is X
        else
            ideal.push_back(unflatten(r, k));
    }
    if (added != m - m1)
        throw ill_conditioned_error("lie_kolchin: could not extend the derived basis");

    const CVec v0 = common_eigenvector(ideal, k, tol, depth + 1);

    // Krylov space of X over the ideal eigenvector; two projection passes
    // keep the columns orthonormal to machine precision.
    CMat kry(k, 0);
    CVec w = v0 / v0.norm();
    for (Eigen::Index step = 0; step <= k && kry.cols() < k; ++step) {
        CVec r = w - kry * (kry.adjoint() * w);
        r -= kry * (kry.adjoint() * r);
        if (r.norm() <= tol.span * std::max(1.0, w.norm())) break;
        r /= r.norm();
        kry.conservativeResize(Eigen::NoChange, kry.cols() + 1);
        kry.col(kry.cols() - 1) = r;
        w = x_elem * r;
    }

    // Any eigenvector of X restricted to the Krylov space is a common
    // eigenvector; take the one with the smallest worst-case residual.
    const CMat xv = kry.adjoint() * (x_elem * kry);
    Eigen::ComplexEigenSolver<CMat> es(xv);
    if (es.info() != Eigen::Success)
        throw ill_conditioned_error("lie_kolchin: eigenvector solve failed");

    const auto joint_residual = [&](const CVec& cand) {
        double worst = 0.0;
        for (const CMat& y : algebra) {
            const CVec img = y * cand;
            const Complex lambda = cand.dot(img);  // conjugate-linear in first arg
            worst = std::max(worst, (img - lambda * cand).norm() / std::max(1.0, y.norm()));
        }
        return worst;
    };

    double best = std::numeric_limits<double>::infinity();
    CVec best_vec;
    const auto consider = [&](const CVec& raw_cand) {
        const CVec cand = polish_common_eigenvector(algebra, raw_cand);
        const double worst = joint_residual(cand);
        if (worst < best) {
            best = worst;
            best_vec = cand;
        }
    };
    for (Eigen::Index c = 0; c < xv.cols(); ++c) consider(CVec(kry * es.eigenvectors().col(c)));

    // Fallback sweep when X|_V is too defective for accurate eigenvectors:
    // the common eigenvector is also an eigenvector of any combination of
    // the algebra, and a generic one keeps it simple.
    if (!(best < 1e-9)) {
        std::mt19937_64 gen(0x5eed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (int sweep = 0; sweep < 3 && !(best < 1e-9); ++sweep) {
            CMat z = CMat::Zero(k, k);
            for (const CMat& y : algebra) z += Complex(unif(gen), unif(gen)) * y;
            Eigen::ComplexEigenSolver<CMat> ez(z);
            if (ez.info() != Eigen::Success) continue;
            for (Eigen::Index c = 0; c < k; ++c) consider(ez.eigenvectors().col(c));
        }
    }

    if (!(best < 1e-6))
        throw ill_conditioned_error("lie_kolchin: common-eigenvector residual " +
                                    std::to_string(best));
    return best_vec;
}

}  // namespace

CMat lie_kolchin_triangularize(const LieBasis& basis, const Tolerances& tol) {
    validate_basis(basis, tol);
    const Eigen::Index d = basis.ambient_dim;
    const LieBasis closed = lie_closure(basis, tol);

    const std::vector<Eigen::Index> series = derived_series(closed, tol);
    if (series.back() != 0)
        throw solvability_error("lie_kolchin_triangularize: input algebra is not solvable");

    CMat q = CMat::Identity(d, d);
    for (Eigen::Index level = 0; level + 1 < d; ++level) {
        const Eigen::Index k = d - level;
        std::vector<CMat> blocks;
        blocks.reserve(closed.elements.size());
        for (const CMat& x : closed.elements) {
            const CMat conj = q.adjoint() * x * q;
            blocks.push_back(conj.block(level, level, k, k));
        }
        const CVec w = common_eigenvector(blocks, k, tol, 0);

        // Unitary with first column w, embedded below the processed flag.
        CMat house = CMat::Identity(k, k);
        house.col(0) = w;
        const Eigen::HouseholderQR<CMat> hqr(house);
        CMat qk = hqr.householderQ();
        // Align the first column with w itself (QR fixes phases arbitrarily).
        const Complex phase = qk.col(0).dot(w);
        qk.col(0) *= phase / std::abs(phase);

        CMat embed = CMat::Identity(d, d);
        embed.block(level, level, k, k) = qk;
        q = (q * embed).eval();
    }

    // Verify: conjugated elements are upper triangular.
    double residual = 0.0;
    for (const CMat& x : basis.elements) {
        const CMat conj = q.adjoint() * x * q;
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < i; ++j)
                residual = std::max(residual, std::abs(conj(i, j)) / std::max(1.0, x.norm()));
    }
    if (residual > 1e-8)
        throw ill_conditioned_error("lie_kolchin_triangularize: sub-diagonal residual " +
                                    std::to_string(residual));
    return q.adjoint();  // g X g^-1 = Q* X Q is upper triangular for g = Q*
}

}  // namespace liekit
