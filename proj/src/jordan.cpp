#include "liekit/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace liekit {
namespace {

double rel_distance(Complex a, Complex b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Unitarily swap the 1x1 Schur blocks at positions (i, i+1), updating T and Q.
void swap_schur_blocks(CMat& t, CMat& q, Eigen::Index i) {
    const Complex t11 = t(i, i), t12 = t(i, i + 1), t22 = t(i + 1, i + 1);
    // Eigenvector of [[t11,t12],[0,t22]] for t22, rotated to the first slot.
    Eigen::Vector2cd x(t12, t22 - t11);
    const double nx = x.norm();
    if (nx == 0.0) return;  // equal diagonal, nothing to move
    x /= nx;
    Eigen::Matrix2cd g;
    g << x(0), -std::conj(x(1)), x(1), std::conj(x(0));
    t.middleCols(i, 2) = (t.middleCols(i, 2) * g).eval();
    t.middleRows(i, 2) = (g.adjoint() * t.middleRows(i, 2)).eval();
    q.middleCols(i, 2) = (q.middleCols(i, 2) * g).eval();
    t(i + 1, i) = 0.0;
}

JordanSplit split_impl(const CMat& g, const Tolerances& tol) {
    require_square(g, "jordan_split");
    const Eigen::Index d = g.rows();

    Eigen::ComplexSchur<CMat> schur(g);
    if (schur.info() != Eigen::Success)
        throw numeric_error("jordan_split: Schur decomposition failed");
    CMat t = schur.matrixT();
    CMat q = schur.matrixU();

    for (Eigen::Index i = 0; i < d; ++i)
        if (std::abs(t(i, i)) < tol.singularity)
            throw validation_error("jordan_split: input is singular");

    // Cluster eigenvalues by transitive closure of the relative merge
    // distance. A defective eigenvalue of multiplicity m splits numerically
    // like (amplified eps)^(1/m), so the effective distance is floored at
    // eps^(1/(d+1)) to absorb the worst block the dimension allows.
    const double merge_tol =
        std::max(tol.clustering, std::pow(1e-16, 1.0 / static_cast<double>(d + 1)));
    std::vector<int> cluster(d);
    std::iota(cluster.begin(), cluster.end(), 0);
    const auto root = [&](int i) {
        while (cluster[i] != i) i = cluster[i] = cluster[cluster[i]];
        return i;
    };
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j)
            if (rel_distance(t(i, i), t(j, j)) <= merge_tol)
                cluster[root(static_cast<int>(i))] = root(static_cast<int>(j));

    // Ambiguity guard: clusters separated by less than 3x the merge distance
    // cannot be told apart reliably.
    double min_gap = std::numeric_limits<double>::infinity();
    Complex ga{}, gb{};
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j)
            if (root(static_cast<int>(i)) != root(static_cast<int>(j))) {
                const double dist = rel_distance(t(i, i), t(j, j));
                if (dist < min_gap) {
                    min_gap = dist;
                    ga = t(i, i);
                    gb = t(j, j);
                }
            }
    if (min_gap < 3.0 * merge_tol) {
        std::ostringstream os;
        os << "jordan_split: eigenvalue clustering ambiguity, relative gap " << min_gap
           << " between (" << ga.real() << "," << ga.imag() << ") and (" << gb.real() << ","
           << gb.imag() << ") is below 3x clustering tolerance " << merge_tol;
        throw ill_conditioned_error(os.str());
    }

    // Bubble same-cluster eigenvalues into contiguous runs, ordered by the
    // first appearance of their cluster on the diagonal.
    std::vector<int> key(d);
    {
        std::vector<int> first_seen(d, -1);
        int next = 0;
        for (Eigen::Index i = 0; i < d; ++i) {
            const int r = root(static_cast<int>(i));
            if (first_seen[r] < 0) first_seen[r] = next++;
            key[static_cast<size_t>(i)] = first_seen[r];
        }
        for (Eigen::Index pass = 0; pass < d; ++pass)
            for (Eigen::Index i = 0; i + 1 < d; ++i)
                if (key[static_cast<size_t>(i)] > key[static_cast<size_t>(i + 1)]) {
                    swap_schur_blocks(t, q, i);
                    std::swap(key[static_cast<size_t>(i)], key[static_cast<size_t>(i + 1)]);
                }
    }

    // Cluster run lengths along the (now sorted) diagonal.
    std::vector<Eigen::Index> runs;
    for (Eigen::Index i = 0; i < d;) {
        Eigen::Index j = i + 1;
        while (j < d && key[static_cast<size_t>(j)] == key[static_cast<size_t>(i)]) ++j;
        runs.push_back(j - i);
        i = j;
    }

    // Block-diagonalize T across cluster boundaries by Sylvester solves:
    // z^-1 T z has zero coupling between distinct clusters.
    CMat z = CMat::Identity(d, d);
    Eigen::Index offset = 0;
    for (size_t r = 0; r + 1 < runs.size(); ++r) {
        const Eigen::Index m = runs[r];
        const Eigen::Index rest = d - offset - m;
        const CMat a = t.block(offset, offset, m, m);
        const CMat b = t.block(offset + m, offset + m, rest, rest);
        const CMat c = t.block(offset, offset + m, m, rest);
        // Solve a*x - x*b = -c column by column (a, b triangular).
        CMat x = CMat::Zero(m, rest);
        for (Eigen::Index j = 0; j < rest; ++j) {
            CVec rhs = -c.col(j);
            for (Eigen::Index k = 0; k < j; ++k) rhs += x.col(k) * b(k, j);
            CMat lhs = a - b(j, j) * CMat::Identity(m, m);
            x.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
        }
        CMat zi = CMat::Identity(d, d);
        zi.block(offset, offset + m, m, rest) = x;
        t.block(offset, offset + m, m, rest).setZero();
        // Update the trailing coupling created by the similarity.
        z = (z * zi).eval();
        offset += m;
    }

    // Semisimple part: cluster means on the diagonal, conjugated back.
    CMat dmat = CMat::Zero(d, d);
    offset = 0;
    for (const Eigen::Index m : runs) {
        Complex mean = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) mean += t(offset + i, offset + i);
        mean /= static_cast<double>(m);
        for (Eigen::Index i = 0; i < m; ++i) dmat(offset + i, offset + i) = mean;
        offset += m;
    }

    const CMat w = q * z;  // diagonalizer of the semisimple part
    Eigen::JacobiSVD<CMat> svd(w);
    const double cond =
        svd.singularValues()(0) / std::max(svd.singularValues()(d - 1), 1e-300);
    if (cond > tol.cond_bound)
        throw ill_conditioned_error("jordan_split: diagonalizer condition " +
                                    std::to_string(cond) + " exceeds bound");

    JordanSplit out;
    const CMat winv = w.inverse();
    out.semisimple = w * dmat * winv;
    out.unipotent = out.semisimple.inverse() * g;
    out.eigenvector_condition = cond;
    return out;
}

}  // namespace

JordanSplit jordan_split(const CMat& g, const Tolerances& tol) { return split_impl(g, tol); }
JordanSplit jordan_split(const RMat& g, const Tolerances& tol) {
    return split_impl(g.cast<Complex>(), tol);
}

ElementClass classify_element(const CMat& g, const Tolerances& tol) {
    const JordanSplit js = jordan_split(g, tol);
    const Eigen::Index d = g.rows();
    const CMat id = CMat::Identity(d, d);
    const double scale = std::max(1.0, g.norm());
    if ((js.semisimple - id).norm() <= 1e-8 * scale) return ElementClass::Unipotent;
    if ((js.unipotent - id).norm() <= 1e-8 * scale) return ElementClass::Semisimple;
    return ElementClass::Mixed;
}

ElementClass classify_element(const RMat& g, const Tolerances& tol) {
    return classify_element(CMat(g.cast<Complex>()), tol);
}

const char* to_string(ElementClass c) {
    switch (c) {
        case ElementClass::Semisimple: return "semisimple";
        case ElementClass::Unipotent: return "unipotent";
        case ElementClass::Mixed: return "mixed";
    }
    return "unknown";
}

}  // namespace liekit
