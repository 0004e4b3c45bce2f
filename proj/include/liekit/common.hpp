#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace liekit {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Central tolerance record. Every numerical decision in the library reads
/// from one of these knobs so that tests can tighten or loosen them uniformly.
struct Tolerances {
    double singularity = 1e-12;    // |det| / smallest-singular-value floor
    double roundtrip = 1e-10;      // exp/log roundtrip budget
    double clustering = 1e-7;      // relative eigenvalue merge distance
    double span = 1e-9;            // rank and span-membership decisions
    double orthogonality = 1e-12;  // orthogonal-factor quality
    double cond_bound = 1e8;       // eigenvector matrix condition ceiling
};

// Invalid input: wrong shapes, broken preconditions, malformed data.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// The computation left its numerical domain (branch cuts, non-convergence,
// solvability failures, conditioning collapses).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

struct out_of_domain_error : numeric_error {
    explicit out_of_domain_error(const std::string& what) : numeric_error(what) {}
};

struct ill_conditioned_error : numeric_error {
    explicit ill_conditioned_error(const std::string& what) : numeric_error(what) {}
};

struct solvability_error : numeric_error {
    explicit solvability_error(const std::string& what) : numeric_error(what) {}
};

struct accuracy_error : numeric_error {
    explicit accuracy_error(const std::string& what) : numeric_error(what) {}
};

struct inconsistency_error : numeric_error {
    explicit inconsistency_error(const std::string& what) : numeric_error(what) {}
};

// Bug guards; should never fire on valid builds.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw validation_error(what);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* name) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw validation_error(std::string(name) + ": expected a nonempty square matrix");
    if (!m.allFinite())
        throw validation_error(std::string(name) + ": non-finite entries");
}

}  // namespace liekit
