#pragma once

#include <utility>
#include <vector>

#include "liekit/common.hpp"

namespace liekit {

/// Matrix exponential by scaling-and-squaring: the argument is halved until
/// its Frobenius norm is at most 0.5, a truncated power series is summed,
/// and the result is squared back up.
CMat mat_exp(const CMat& a, const Tolerances& tol = {});
RMat mat_exp(const RMat& a, const Tolerances& tol = {});

/// Principal matrix logarithm by inverse scaling-and-squaring: principal
/// square roots (Denman–Beavers iteration) are taken until the argument is
/// within 0.5 of the identity, then the Mercator series is summed.
/// Throws out_of_domain_error when the spectrum touches the closed negative
/// real axis or the square-root preconditioning fails to contract.
CMat mat_log(const CMat& g, const Tolerances& tol = {});
RMat mat_log(const RMat& g, const Tolerances& tol = {});

/// Principal square root (Denman–Beavers). Exposed because several callers
/// (logarithm preconditioning, tests) want it directly.
CMat mat_sqrt(const CMat& g, const Tolerances& tol = {});

/// Recover the generator A of a one-parameter group from samples (t_i, g_i)
/// with g_i = exp(t_i A): take the smallest-|t| sample inside the logarithm
/// domain, divide its log by t, and verify the remaining samples.
/// Throws inconsistency_error when no generator fits all samples.
CMat one_param_recover(const std::vector<std::pair<double, CMat>>& samples,
                       const Tolerances& tol = {});
RMat one_param_recover(const std::vector<std::pair<double, RMat>>& samples,
                       const Tolerances& tol = {});

}  // namespace liekit
