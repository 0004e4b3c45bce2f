#include "liekit/expm.hpp"

#include <algorithm>
#include <cmath>

namespace liekit {
namespace {

template <typename Mat>
Mat exp_impl(const Mat& a, const Tolerances&) {
    require_square(a, "mat_exp");
    const Eigen::Index d = a.rows();
    const double norm = a.norm();

    // Scale so the series argument has norm <= 0.5.
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Mat t = a / std::pow(2.0, squarings);

    Mat sum = Mat::Identity(d, d);
    Mat term = Mat::Identity(d, d);
    for (int n = 1; n <= 24; ++n) {
        term = (term * t / static_cast<double>(n)).eval();
        sum += term;
        if (term.norm() <= 1e-18 * sum.norm()) break;
    }
    for (int k = 0; k < squarings; ++k) sum = (sum * sum).eval();
    return sum;
}

// Denman–Beavers coupled iteration for the principal square root.
template <typename Mat>
Mat sqrt_impl(const Mat& g, const Tolerances& tol) {
    require_square(g, "mat_sqrt");
    const Eigen::Index d = g.rows();
    Mat y = g;
    Mat z = Mat::Identity(d, d);
    for (int it = 0; it < 60; ++it) {
        Eigen::FullPivLU<Mat> luy(y);
        Eigen::FullPivLU<Mat> luz(z);
        if (!luy.isInvertible() || !luz.isInvertible())
            throw out_of_domain_error("mat_sqrt: iterate became singular");
        Mat yn = 0.5 * (y + luz.inverse());
        Mat zn = 0.5 * (z + luy.inverse());
        const double delta = (yn - y).norm();
        y = yn;
        z = zn;
        if (delta <= 1e-15 * std::max(1.0, y.norm())) break;
    }
    if ((y * y - g).norm() > 1e-8 * std::max(1.0, g.norm()))
        throw out_of_domain_error("mat_sqrt: Denman-Beavers iteration did not converge");
    (void)tol;
    return y;
}

template <typename Mat>
Mat log_impl(const Mat& g, const Tolerances& tol) {
    require_square(g, "mat_log");
    const Eigen::Index d = g.rows();

    // Reject spectra on the closed negative real axis: the principal branch
    // is undefined there and the square-root iteration stalls.
    Eigen::ComplexEigenSolver<CMat> es(CMat(g.template cast<Complex>()));
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex lam = es.eigenvalues()(i);
        if (std::abs(lam) < tol.singularity)
            throw out_of_domain_error("mat_log: singular input");
        if (lam.real() < 0.0 && std::abs(lam.imag()) <= 1e-12 * std::abs(lam))
            throw out_of_domain_error("mat_log: eigenvalue on the negative real axis");
    }

    Mat y = g;
    const Mat id = Mat::Identity(d, d);
    int halvings = 0;
    while ((y - id).norm() >= 0.5) {
        if (halvings >= 40)
            throw out_of_domain_error("mat_log: square-root preconditioning failed to contract");
        y = sqrt_impl(y, tol);
        ++halvings;
    }

    // Mercator series log(I + E).
    const Mat e = y - id;
    Mat power = e;
    Mat sum = e;
    for (int n = 2; n <= 96; ++n) {
        power = (power * e).eval();
        const Mat term = power / static_cast<double>(n);
        if (n % 2 == 0)
            sum -= term;
        else
            sum += term;
        if (term.norm() <= 1e-18 * std::max(1.0, sum.norm())) break;
    }
    return sum * std::pow(2.0, halvings);
}

template <typename Mat>
Mat one_param_impl(const std::vector<std::pair<double, Mat>>& samples, const Tolerances& tol) {
    if (samples.size() < 2)
        throw inconsistency_error("one_param_recover: need at least two samples");
    const Eigen::Index d = samples.front().second.rows();
    for (const auto& [t, g] : samples) {
        (void)t;
        require_square(g, "one_param_recover");
        require(g.rows() == d, "one_param_recover: mixed sample dimensions");
    }

    // Sort by |t| and consume the smallest usable sample.
    std::vector<std::pair<double, Mat>> ordered(samples);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return std::abs(a.first) < std::abs(b.first); });

    const Mat id = Mat::Identity(d, d);
    Mat gen;
    bool have_gen = false;
    for (const auto& [t, g] : ordered) {
        if (std::abs(t) < 1e-14) {
            if ((g - id).norm() > tol.roundtrip)
                throw inconsistency_error("one_param_recover: sample at t=0 is not the identity");
            continue;
        }
        try {
            gen = log_impl(g, tol) / t;
            have_gen = true;
            break;
        } catch (const out_of_domain_error&) {
            continue;  // sample outside the logarithm domain; try the next one
        }
    }
    if (!have_gen)
        throw inconsistency_error(
            "one_param_recover: no sample with |t| small enough for the logarithm");

    double scale = 0.0;
    for (const auto& [t, g] : ordered) scale = std::max(scale, g.norm());
    for (const auto& [t, g] : ordered) {
        const Mat predicted = exp_impl(Mat(t * gen), tol);
        if ((predicted - g).norm() > 1e-8 * std::max(1.0, scale))
            throw inconsistency_error("one_param_recover: samples inconsistent with exp(tA)");
    }
    return gen;
}

}  // namespace

CMat mat_exp(const CMat& a, const Tolerances& tol) { return exp_impl<CMat>(a, tol); }
RMat mat_exp(const RMat& a, const Tolerances& tol) { return exp_impl<RMat>(a, tol); }

CMat mat_sqrt(const CMat& g, const Tolerances& tol) { return sqrt_impl<CMat>(g, tol); }

CMat mat_log(const CMat& g, const Tolerances& tol) { return log_impl<CMat>(g, tol); }
RMat mat_log(const RMat& g, const Tolerances& tol) { return log_impl<RMat>(g, tol); }

CMat one_param_recover(const std::vector<std::pair<double, CMat>>& samples,
                       const Tolerances& tol) {
    return one_param_impl<CMat>(samples, tol);
}
RMat one_param_recover(const std::vector<std::pair<double, RMat>>& samples,
                       const Tolerances& tol) {
    return one_param_impl<RMat>(samples, tol);
}

}  // namespace liekit
