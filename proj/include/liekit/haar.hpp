#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "liekit/common.hpp"

namespace liekit {

struct HaarExponents {
    std::vector<long> exponents;  // r_i for b_i = a_i / a_{i-1}, i = 2..d
    double fit_residual = 0.0;    // max pre-rounding distance to an integer
};

/// Calibrate the Haar density exponents in NA coordinates by measuring the
/// Jacobian of left translation at randomized sample points and solving the
/// invariance balance by least squares. Throws accuracy_error when the fit
/// is farther than 1e-6 from integers.
HaarExponents fit_haar_exponents(int d, std::uint64_t seed = 20110711,
                                 const Tolerances& tol = {});

/// Coordinate chart on a patch of a group with a density in those
/// coordinates; integration happens over the box [lo, hi].
struct CoordChart {
    int dim = 0;
    std::function<RMat(const RVec&)> point;
    std::function<double(const RVec&)> density;
    RVec lo, hi;
};

/// SL2 in NAK coordinates (x, b, theta) with density b^r2 / (2 pi); the
/// rotation factor carries total mass one.
CoordChart sl2_nak_chart(long r2);

/// SL2 in entry coordinates (a, b, c), d = (1+bc)/a, with density 1/a.
CoordChart sl2_abc_chart();

/// Smooth bump supported on the entry-space ball of the given radius
/// around the center matrix.
std::function<double(const RMat&)> matrix_bump(const RMat& center, double radius);

struct InvarianceCheck {
    double lhs = 0.0;        // integral of f(g0 * g)
    double rhs = 0.0;        // integral of f(g)
    double quad_error = 0.0; // refinement-difference estimate
};

/// Compare the integrals of f(g0 * g) and f(g) over the chart patch using a
/// composite midpoint rule at two resolutions. Throws out_of_domain_error
/// when the support of f (or its translate) touches the patch boundary.
InvarianceCheck haar_invariance_check(const CoordChart& chart,
                                      const std::function<double(const RMat&)>& f,
                                      const RMat& g0, int resolution,
                                      const Tolerances& tol = {});

struct SiegelParams {
    double s = 0.5;
    double t = 2.0 / std::sqrt(3.0);
};

struct SiegelVolume {
    double value = 0.0;
    std::vector<double> levels;      // successive truncation refinements
    double tail_estimate = 0.0;      // power-law tail below the cutoff
    double cutoff = 0.0;
    std::vector<long> exponents;     // calibrated r_i used by the density
};

/// Volume of the Siegel set Sigma_{s,t} in SL_d under the NAK density with
/// the rotation factor normalized to mass one. The b_i integrals run over a
/// geometric grid on (cutoff, t] with doubling refinement; successive levels
/// must form a Cauchy sequence, otherwise accuracy_error is thrown.
SiegelVolume siegel_volume(const SiegelParams& params, int d, int levels = 6,
                           const Tolerances& tol = {});

}  // namespace liekit
