#include "liekit/invariant_form.hpp"

#include <cmath>
#include <numbers>

namespace liekit {

std::vector<QuadratureNode> so2_quadrature(int n) {
    require(n >= 1, "so2_quadrature: need at least one node");
    std::vector<QuadratureNode> nodes;
    nodes.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / n;
        CMat k(2, 2);
        k << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
        nodes.push_back({1.0 / n, k});
    }
    return nodes;
}

HermitianForm invariant_hermitian_form(const std::vector<QuadratureNode>& quadrature,
                                       const std::function<CMat(const CMat&)>& rep,
                                       const Tolerances& tol) {
    require(!quadrature.empty(), "invariant_hermitian_form: empty quadrature");
    double total = 0.0;
    for (const auto& node : quadrature) {
        require(node.weight > 0.0, "invariant_hermitian_form: weights must be positive");
        total += node.weight;
    }
    require(std::abs(total - 1.0) <= 1e-9, "invariant_hermitian_form: weights must sum to 1");

    CMat gram;
    bool first = true;
    for (const auto& node : quadrature) {
        const CMat rho = rep(node.g);
        require_square(rho, "invariant_hermitian_form: rep value");
        Eigen::FullPivLU<CMat> lu(rho);
        if (!lu.isInvertible())
            throw validation_error("invariant_hermitian_form: rep value is singular");
        const CMat rho_inv = lu.inverse();
        if (first) {
            gram = CMat::Zero(rho.rows(), rho.cols());
            first = false;
        }
        gram += node.weight * (rho_inv.adjoint() * rho_inv);
    }
    gram = 0.5 * (gram + gram.adjoint().eval());  // enforce exact Hermitian symmetry

    Eigen::SelfAdjointEigenSolver<CMat> es(gram);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= tol.singularity)
        throw accuracy_error("invariant_hermitian_form: averaged form is not positive definite");
    return {gram};
}

std::vector<CVec> invariant_complement(const HermitianForm& form,
                                       const std::vector<CVec>& subspace,
                                       const Tolerances& tol) {
    const Eigen::Index n = form.dim();
    require_square(form.gram, "invariant_complement: form");
    {
        Eigen::SelfAdjointEigenSolver<CMat> es(form.gram);
        require((form.gram - form.gram.adjoint()).norm() <= 1e-10 * std::max(1.0, form.gram.norm()),
                "invariant_complement: form is not Hermitian");
        require(es.eigenvalues().minCoeff() > 0.0,
                "invariant_complement: form is not positive definite");
    }
    if (subspace.empty()) {
        std::vector<CVec> full;
        for (Eigen::Index i = 0; i < n; ++i) {
            CVec e = CVec::Zero(n);
            e(i) = 1.0;
            full.push_back(e);
        }
        return full;
    }

    CMat s(n, static_cast<Eigen::Index>(subspace.size()));
    for (size_t i = 0; i < subspace.size(); ++i) {
        require(subspace[i].size() == n, "invariant_complement: vector dimension mismatch");
        s.col(static_cast<Eigen::Index>(i)) = subspace[i];
    }
    {
        Eigen::JacobiSVD<CMat> check(s);
        const auto& sv = check.singularValues();
        if (sv(sv.size() - 1) <= tol.span * sv(0))
            throw validation_error("invariant_complement: subspace vectors are dependent");
    }

    // v is in the complement iff s^* G v = 0.
    const CMat constraint = s.adjoint() * form.gram;
    Eigen::JacobiSVD<CMat> svd(constraint, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tol.span * std::max(1.0, sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;

    std::vector<CVec> out;
    for (Eigen::Index c = rank; c < n; ++c) out.push_back(svd.matrixV().col(c));
    return out;
}

}  // namespace liekit
