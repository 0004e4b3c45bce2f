#include "liekit/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace liekit {

ProjPoint canonicalize(const CVec& v) {
    require(v.size() > 0, "ProjPoint: empty vector");
    require(v.allFinite(), "ProjPoint: non-finite entries");
    const double norm = v.norm();
    if (norm <= 0.0) throw validation_error("ProjPoint: zero vector");
    CVec u = v / norm;
    // First coordinate within a factor 2 of the peak sets the phase; the
    // selection is scale- and phase-invariant, so canonicalization is
    // idempotent.
    const double peak = u.cwiseAbs().maxCoeff();
    Eigen::Index lead = 0;
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (std::abs(u(i)) >= 0.5 * peak) {
            lead = i;
            break;
        }
    const Complex phase = u(lead) / std::abs(u(lead));
    u /= phase;
    return {u};
}

double projective_distance(const ProjPoint& p, const ProjPoint& q) {
    require(p.v.size() == q.v.size(), "projective_distance: dimension mismatch");
    // Angle between the lines, through the rank-one projector difference;
    // |P_p - P_q|_F = sqrt(2) sin(theta) and stays accurate for tiny angles
    // where acos of the overlap would lose half the digits.
    const CMat diff = p.v * p.v.adjoint() - q.v * q.v.adjoint();
    const double s = std::min(1.0, diff.norm() / std::sqrt(2.0));
    return std::asin(s);
}

Trajectory projective_orbit(const CMat& t, const ProjPoint& p0, long n_max,
                            const Tolerances& tol) {
    require_square(t, "projective_orbit");
    require(p0.v.size() == t.rows(), "projective_orbit: dimension mismatch");
    require(n_max >= 0, "projective_orbit: negative horizon");
    {
        Eigen::FullPivLU<CMat> lu(t);
        if (!lu.isInvertible()) throw validation_error("projective_orbit: map is singular");
    }
    (void)tol;

    Trajectory traj;
    traj.points.reserve(static_cast<size_t>(n_max) + 1);
    traj.times.reserve(static_cast<size_t>(n_max) + 1);
    CVec current = p0.v;
    for (long k = 0; k <= n_max; ++k) {
        traj.points.push_back(canonicalize(current));
        traj.times.push_back(k);
        current = t * traj.points.back().v;  // renormalized base defeats overflow
    }
    return traj;
}

std::vector<long> recurrence_detect(const Trajectory& traj, double eps) {
    require(eps > 0.0, "recurrence_detect: eps must be positive");
    require(!traj.points.empty(), "recurrence_detect: empty trajectory");
    std::vector<long> returns;
    for (size_t k = 1; k < traj.points.size(); ++k)
        if (projective_distance(traj.points[k], traj.points[0]) < eps)
            returns.push_back(traj.times[k]);
    return returns;
}

RigidityOutcome unipotent_rigidity_check(const CMat& t, const ProjPoint& p0, double eps,
                                         long n_max, const Tolerances& tol) {
    if (classify_element(t, tol) != ElementClass::Unipotent)
        throw validation_error("unipotent_rigidity_check: map is not unipotent");
    const ProjPoint start = canonicalize(p0.v);
    const ProjPoint image = canonicalize(t * start.v);
    if (projective_distance(image, start) <= 1e-10) return RigidityOutcome::Fixed;

    const Trajectory traj = projective_orbit(t, start, n_max, tol);
    const std::vector<long> returns = recurrence_detect(traj, eps);
    return returns.empty() ? RigidityOutcome::Escaped : RigidityOutcome::Violation;
}

const char* to_string(RigidityOutcome o) {
    switch (o) {
        case RigidityOutcome::Fixed: return "fixed";
        case RigidityOutcome::Escaped: return "escaped";
        case RigidityOutcome::Violation: return "violation";
    }
    return "unknown";
}

BorelReport borel_density_experiment(const std::vector<std::pair<CMat, CMat>>& rep_generators,
                                     const std::vector<CMat>& unipotent_family, const CVec& v,
                                     double eps, long n_max, const Tolerances& tol) {
    require(v.size() > 0 && v.norm() > 0.0, "borel_density_experiment: zero candidate vector");
    for (const auto& [gamma, rho] : rep_generators) {
        require_square(gamma, "borel_density_experiment: generator");
        require_square(rho, "borel_density_experiment: rep value");
        require(rho.rows() == v.size(), "borel_density_experiment: rep dimension mismatch");
        if ((rho * v - v).norm() > 1e-10 * std::max(1.0, v.norm()))
            throw validation_error(
                "borel_density_experiment: candidate vector is not fixed by the generators");
    }

    BorelReport report;
    report.all_fixed = true;
    const ProjPoint p = canonicalize(v);
    for (size_t idx = 0; idx < unipotent_family.size(); ++idx) {
        const RigidityOutcome outcome =
            unipotent_rigidity_check(unipotent_family[idx], p, eps, n_max, tol);
        report.entries.push_back({idx, outcome});
        if (outcome != RigidityOutcome::Fixed) report.all_fixed = false;
    }
    return report;
}

CMat symmetric_square(const CMat& g) {
    require_square(g, "symmetric_square");
    require(g.rows() == 2, "symmetric_square: expected a 2x2 matrix");
    const Complex a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    CMat out(3, 3);
    out << a * a, a * b, b * b,
           2.0 * a * c, a * d + b * c, 2.0 * b * d,
           c * c, c * d, d * d;
    return out;
}

RMat symmetric_square(const RMat& g) {
    return symmetric_square(CMat(g.cast<Complex>())).real();
}

}  // namespace liekit
