#pragma once

#include <string>
#include <vector>

#include "liekit/common.hpp"
#include "liekit/jordan.hpp"

namespace liekit {

/// Point of projective space: unit vector with the first significant
/// coordinate rotated to the positive real axis (deterministic canonical
/// representative).
struct ProjPoint {
    CVec v;
};

ProjPoint canonicalize(const CVec& v);

/// Principal angle between the two lines.
double projective_distance(const ProjPoint& p, const ProjPoint& q);

struct Trajectory {
    std::vector<ProjPoint> points;
    std::vector<long> times;
};

/// Orbit p0, T p0, T^2 p0, ... (column action), renormalized at every step.
Trajectory projective_orbit(const CMat& t, const ProjPoint& p0, long n_max,
                            const Tolerances& tol = {});

/// Indices k >= 1 with distance(points[k], points[0]) < eps.
std::vector<long> recurrence_detect(const Trajectory& traj, double eps);

enum class RigidityOutcome { Fixed, Escaped, Violation };

/// Dichotomy check for a unipotent map: a projectively fixed start reports
/// Fixed, a non-fixed start must drift off without eps-returns (Escaped);
/// a non-fixed start with returns is a Violation (an implementation bug,
/// not a counterexample). Throws validation_error when t is not unipotent.
RigidityOutcome unipotent_rigidity_check(const CMat& t, const ProjPoint& p0, double eps,
                                         long n_max, const Tolerances& tol = {});

const char* to_string(RigidityOutcome o);

struct BorelReport {
    struct Entry {
        std::size_t index = 0;
        RigidityOutcome outcome = RigidityOutcome::Fixed;
    };
    std::vector<Entry> entries;
    bool all_fixed = false;
    // A finite run certifies per-element fixing only; nothing here certifies
    // the normality of the stabilizer.
    std::string certifies = "per-element fixing only";
};

/// For a vector fixed by every rho(gamma), run the rigidity check on each
/// unipotent rho(U) in the family. Inputs are representation-space matrices.
BorelReport borel_density_experiment(const std::vector<std::pair<CMat, CMat>>& rep_generators,
                                     const std::vector<CMat>& unipotent_family, const CVec& v,
                                     double eps, long n_max, const Tolerances& tol = {});

/// Symmetric-square representation of a 2x2 matrix on the monomial basis
/// (e1^2, e1 e2, e2^2); polynomial homomorphism used by the label-transport
/// checks.
CMat symmetric_square(const CMat& g);
RMat symmetric_square(const RMat& g);

}  // namespace liekit
