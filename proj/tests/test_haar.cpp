#include <doctest.h>

#include <numbers>

#include "liekit/haar.hpp"
#include "liekit/iwasawa.hpp"
#include "test_util.hpp"

using namespace liekit;

TEST_CASE("haar exponents calibrate to integers") {
    const HaarExponents d2 = fit_haar_exponents(2);
    CHECK(d2.exponents == std::vector<long>{0});
    CHECK(d2.fit_residual <= 1e-6);

    const HaarExponents d3 = fit_haar_exponents(3);
    CHECK(d3.exponents == std::vector<long>{1, 1});
    CHECK(d3.fit_residual <= 1e-6);
}

TEST_CASE("haar exponents are sample-point independent") {
    const HaarExponents a = fit_haar_exponents(3, 7);
    const HaarExponents b = fit_haar_exponents(3, 12345);
    CHECK(a.exponents == b.exponents);
    CHECK(a.fit_residual <= 1e-6);
    CHECK(b.fit_residual <= 1e-6);
}

namespace {

RMat u_of(double x) {
    RMat m(2, 2);
    m << 1, x, 0, 1;
    return m;
}

RMat nak_center() {
    RVec c(3);
    c << 0.0, 1.0, 0.0;
    return sl2_nak_chart(0).point(c);
}

}  // namespace

TEST_CASE("left invariance in the NAK chart") {
    const CoordChart chart = sl2_nak_chart(fit_haar_exponents(2).exponents[0]);
    const auto f = matrix_bump(nak_center(), 0.35);

    SUBCASE("translation by the identity is exact") {
        const InvarianceCheck check =
            haar_invariance_check(chart, f, RMat(RMat::Identity(2, 2)), 48);
        CHECK(check.lhs == check.rhs);
    }
    SUBCASE("translation by a unipotent element") {
        const InvarianceCheck check = haar_invariance_check(chart, f, u_of(0.3), 48);
        CHECK(std::abs(check.lhs - check.rhs) <= 2.0 * check.quad_error);
        CHECK(check.rhs > 0.0);
    }
    SUBCASE("translation by a diagonal element") {
        RMat a(2, 2);
        a << 1.25, 0, 0, 0.8;
        const InvarianceCheck check = haar_invariance_check(chart, f, a, 48);
        CHECK(std::abs(check.lhs - check.rhs) <= 2.0 * check.quad_error);
    }
}

TEST_CASE("a wrong exponent breaks invariance (oracle sensitivity)") {
    CoordChart chart = sl2_nak_chart(2);  // deliberately wrong density b^2
    const auto f = matrix_bump(nak_center(), 0.35);
    const InvarianceCheck check = haar_invariance_check(chart, f, u_of(0.3), 48);
    // u(0.3) does not change b, so pure-N translations stay invariant; use a
    // diagonal element, which scales b.
    RMat a(2, 2);
    a << 1.25, 0, 0, 0.8;
    const InvarianceCheck diag_check = haar_invariance_check(chart, f, a, 48);
    CHECK(std::abs(diag_check.lhs - diag_check.rhs) > 2.0 * diag_check.quad_error);
    (void)check;
}

TEST_CASE("left invariance in the (a,b,c) chart with density 1/a") {
    const CoordChart chart = sl2_abc_chart();
    RVec center_coords(3);
    center_coords << 1.2, 0.0, 0.0;
    const auto f = matrix_bump(chart.point(center_coords), 0.3);

    RMat diag(2, 2);
    diag << 2.0, 0.0, 0.0, 0.5;
    const InvarianceCheck check1 = haar_invariance_check(chart, f, diag, 48);
    CHECK(std::abs(check1.lhs - check1.rhs) <= 2.0 * check1.quad_error);
    CHECK(check1.rhs > 0.0);

    const InvarianceCheck check2 = haar_invariance_check(chart, f, u_of(0.3), 48);
    CHECK(std::abs(check2.lhs - check2.rhs) <= 2.0 * check2.quad_error);
}

TEST_CASE("support escaping the patch is detected") {
    const CoordChart chart = sl2_nak_chart(0);
    const auto f = matrix_bump(nak_center(), 0.35);
    // A large translation pushes the support of f(g0 * g) off the patch.
    CHECK_THROWS_AS((void)haar_invariance_check(chart, f, u_of(3.5), 32), out_of_domain_error);
}

TEST_CASE("NAK density factorizes into NA and K parts") {
    const CoordChart chart = sl2_nak_chart(0);
    // Separable integrand recovered through the Iwasawa coordinates.
    const auto f1 = [](double x) { return std::exp(-x * x); };
    const auto f2 = [](double b) { return 1.0 / (1.0 + b * b); };
    const auto f3 = [](double th) { return 1.0 + 0.5 * std::sin(th); };
    const auto f = [&](const RMat& g) {
        const NAKDecomposition nak = iwasawa(g, true);
        const double x = nak.n(0, 1);
        const double b = nak.a(1) / nak.a(0);
        const double th = std::atan2(nak.k(0, 1), nak.k(0, 0));
        return f1(x) * f2(b) * f3(th);
    };

    const int res = 64;
    double full = 0.0;
    {
        // 3-D midpoint rule of f against the chart density.
        for (int i = 0; i < res; ++i)
            for (int j = 0; j < res; ++j)
                for (int k = 0; k < res; ++k) {
                    RVec x(3);
                    x << chart.lo(0) + (i + 0.5) * (chart.hi(0) - chart.lo(0)) / res,
                        chart.lo(1) + (j + 0.5) * (chart.hi(1) - chart.lo(1)) / res,
                        chart.lo(2) + (k + 0.5) * (chart.hi(2) - chart.lo(2)) / res;
                    full += f(chart.point(x)) * chart.density(x);
                }
        for (int k = 0; k < 3; ++k) full *= (chart.hi(k) - chart.lo(k)) / res;
    }

    const auto mid1d = [res](const std::function<double(double)>& h, double lo, double hi) {
        double total = 0.0;
        for (int i = 0; i < res; ++i) total += h(lo + (i + 0.5) * (hi - lo) / res);
        return total * (hi - lo) / res;
    };
    const double factored = mid1d(f1, chart.lo(0), chart.hi(0)) *
                            mid1d(f2, chart.lo(1), chart.hi(1)) *
                            mid1d(f3, chart.lo(2), chart.hi(2)) / (2.0 * std::numbers::pi);
    CHECK(std::abs(full - factored) <= 1e-6 * std::abs(factored));
}

TEST_CASE("siegel volume at the covering parameters is finite and converges") {
    const SiegelVolume vol = siegel_volume({}, 2, 6);
    CHECK(vol.value > 0.0);
    CHECK(std::isfinite(vol.value));
    CHECK(vol.tail_estimate <= 0.01 * vol.value);
    for (size_t i = 2; i < vol.levels.size(); ++i)
        CHECK(std::abs(vol.levels[i] - vol.levels[i - 1]) <=
              std::abs(vol.levels[i - 1] - vol.levels[i - 2]) + 1e-12);
}

TEST_CASE("siegel volume is monotone in s and t, and linear in the n-box") {
    const SiegelVolume base = siegel_volume({}, 2, 5);
    const SiegelVolume wider = siegel_volume({1.0, 2.0 / std::sqrt(3.0)}, 2, 5);
    const SiegelVolume taller = siegel_volume({0.5, 2.0}, 2, 5);
    CHECK(wider.value >= base.value);
    CHECK(taller.value >= base.value);
    // Doubling s exactly doubles the n-coordinate box factor in d = 2.
    CHECK(std::abs(wider.value - 2.0 * base.value) <= 1e-12 * wider.value);
}

TEST_CASE("siegel volume in d = 3") {
    const SiegelVolume vol = siegel_volume({}, 3, 5);
    CHECK(vol.value > 0.0);
    CHECK(vol.exponents == std::vector<long>{1, 1});
    CHECK(vol.tail_estimate <= 0.01 * vol.value);
}
