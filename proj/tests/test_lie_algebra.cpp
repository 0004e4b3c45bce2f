#include <doctest.h>

#include "liekit/expm.hpp"
#include "liekit/lie_algebra.hpp"
#include "test_util.hpp"

using namespace liekit;

namespace {

CMat elementary(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
    CMat e = CMat::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

double slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

}  // namespace

TEST_CASE("bracket of elementary matrices") {
    const CMat e12 = elementary(2, 0, 1), e21 = elementary(2, 1, 0);
    const CMat expected = elementary(2, 0, 0) - elementary(2, 1, 1);
    CHECK((bracket(e12, e21) - expected).norm() <= 1e-15);
}

TEST_CASE("bracket is alternating, bilinear, and satisfies Jacobi") {
    auto gen = testutil::rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const CMat x = testutil::random_cmat(gen, 3), y = testutil::random_cmat(gen, 3),
                   z = testutil::random_cmat(gen, 3);
        CHECK(bracket(x, x).norm() <= 1e-15);
        CHECK((bracket(x, y) + bracket(y, x)).norm() <= 1e-15);
        const CMat lin = bracket(CMat(2.0 * x + y), z) - 2.0 * bracket(x, z) - bracket(y, z);
        CHECK(lin.norm() <= 1e-14);
        const CMat jacobi =
            bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
        CHECK(jacobi.norm() <= 1e-12);
    }
}

TEST_CASE("bch of commuting inputs is the sum at every order") {
    CMat a = CMat::Zero(2, 2), b = CMat::Zero(2, 2);
    a(0, 0) = 0.3;
    a(1, 1) = -0.1;
    b(0, 0) = 0.2;
    b(1, 1) = 0.4;
    for (int order = 1; order <= 4; ++order)
        CHECK((bch_truncated(a, b, order).value - (a + b)).norm() <= 1e-15);
}

TEST_CASE("bch order 2 closed form on elementary matrices") {
    const double eps = 0.1;
    const CMat a = eps * elementary(2, 0, 1), b = eps * elementary(2, 1, 0);
    const CMat expected =
        a + b + 0.5 * eps * eps * (elementary(2, 0, 0) - elementary(2, 1, 1));
    CHECK((bch_truncated(a, b, 2).value - expected).norm() <= 1e-15);
}

TEST_CASE("bch truncation error exponents against the matrix-log oracle") {
    auto gen = testutil::rng(32);
    const CMat dir_a = testutil::random_cmat(gen, 3, 1.0);
    const CMat dir_b = testutil::random_cmat(gen, 3, 1.0);
    const std::vector<double> radii{0.2, 0.1, 0.05, 0.025};
    for (int order = 2; order <= 4; ++order) {
        std::vector<double> xs, ys;
        for (const double r : radii) {
            const CMat a = r * dir_a, b = r * dir_b;
            const CMat truth = mat_log(CMat(mat_exp(a) * mat_exp(b)));
            const double err = (truth - bch_truncated(a, b, order).value).norm();
            xs.push_back(std::log(r));
            ys.push_back(std::log(err));
        }
        CHECK(slope_fit(xs, ys) >= order + 0.8);
    }
}

TEST_CASE("bch rejects orders outside 1..4") {
    const CMat a = CMat::Zero(2, 2);
    CHECK_THROWS_AS((void)bch_truncated(a, a, 0), validation_error);
    CHECK_THROWS_AS((void)bch_truncated(a, a, 5), validation_error);
}

TEST_CASE("group product limit converges at rate 1/n") {
    const CMat a = elementary(2, 0, 1), b = elementary(2, 1, 0);
    const CMat sum_target = mat_exp(CMat(a + b));
    const CMat bracket_target = mat_exp(bracket(a, b));

    const auto err = [&](long n) {
        const auto [prod, comm] = group_commutator_limit_check(a, b, n);
        return std::make_pair((prod - sum_target).norm(), (comm - bracket_target).norm());
    };
    const auto [p64, c64] = err(64);
    const auto [p128, c128] = err(128);
    CHECK(p64 / p128 > 1.6);
    CHECK(p64 / p128 < 2.4);
    CHECK(c64 / c128 > 1.6);
    CHECK(c64 / c128 < 2.4);

    // Commuting inputs need no limit at all.
    CMat d1 = CMat::Zero(2, 2), d2 = CMat::Zero(2, 2);
    d1(0, 0) = 0.4;
    d1(1, 1) = -0.4;
    d2(0, 0) = -0.25;
    d2(1, 1) = 0.25;
    const auto [prod, comm] = group_commutator_limit_check(d1, d2, 7);
    CHECK((prod - mat_exp(CMat(d1 + d2))).norm() <= 1e-10);
    CHECK((comm - CMat::Identity(2, 2)).norm() <= 1e-10);
}

TEST_CASE("tangent algebra of SL_d is the trace-zero space") {
    for (Eigen::Index d = 2; d <= 4; ++d) {
        const TangentAlgebraResult res = tangent_algebra(sl_constraints(d), d);
        CHECK(res.basis.dim() == d * d - 1);
        for (const CMat& x : res.basis.elements) CHECK(std::abs(x.trace()) <= 1e-9);
        CHECK(closure_check(res.basis).closed);
    }
}

TEST_CASE("tangent algebra of O_d is the antisymmetric space") {
    for (Eigen::Index d = 2; d <= 4; ++d) {
        const TangentAlgebraResult res = tangent_algebra(orthogonal_constraints(d), d);
        CHECK(res.basis.dim() == d * (d - 1) / 2);
        for (const CMat& x : res.basis.elements)
            CHECK((x + x.transpose()).norm() <= 1e-9);
        CHECK(closure_check(res.basis).closed);
    }
}

TEST_CASE("empty constraint list yields the full matrix space") {
    const TangentAlgebraResult res = tangent_algebra({}, 3);
    CHECK(res.basis.dim() == 9);
}

TEST_CASE("dependent constraints set the warning flag instead of failing") {
    std::vector<CMat> grads = sl_constraints(2);
    grads.push_back(2.0 * grads[0]);
    const TangentAlgebraResult res = tangent_algebra(grads, 2);
    CHECK(res.dependent_constraints);
    CHECK(res.basis.dim() == 3);
}

TEST_CASE("closure check reports structure constants that reproduce brackets") {
    const TangentAlgebraResult sl2 = tangent_algebra(sl_constraints(2), 2);
    const ClosureResult res = closure_check(sl2.basis);
    REQUIRE(res.closed);
    const Eigen::Index n = sl2.basis.dim();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            CMat rebuilt = CMat::Zero(2, 2);
            for (Eigen::Index k = 0; k < n; ++k)
                rebuilt += res.structure_constants[static_cast<size_t>((i * n + j) * n + k)] *
                           sl2.basis.elements[static_cast<size_t>(k)];
            const CMat direct = bracket(sl2.basis.elements[static_cast<size_t>(i)],
                                        sl2.basis.elements[static_cast<size_t>(j)]);
            CHECK((rebuilt - direct).norm() <= 1e-9);
        }
}

TEST_CASE("closure check reports a witness for a non-closed span") {
    LieBasis basis;
    basis.ambient_dim = 2;
    basis.elements.push_back(elementary(2, 0, 0));
    basis.elements.push_back(elementary(2, 0, 1) + elementary(2, 1, 0));
    const ClosureResult res = closure_check(basis);
    CHECK_FALSE(res.closed);
    REQUIRE(res.witness.has_value());
    const CMat expected = elementary(2, 0, 1) - elementary(2, 1, 0);
    CHECK((res.witness->value - expected).norm() <= 1e-12);
}

TEST_CASE("derived series dimensions") {
    LieBasis upper;
    upper.ambient_dim = 2;
    upper.elements = {elementary(2, 0, 0), elementary(2, 1, 1), elementary(2, 0, 1)};
    CHECK(derived_series(upper) == std::vector<Eigen::Index>{3, 1, 0});

    const LieBasis sl2 = tangent_algebra(sl_constraints(2), 2).basis;
    CHECK(derived_series(sl2) == std::vector<Eigen::Index>{3, 3});

    LieBasis diag;
    diag.ambient_dim = 3;
    diag.elements = {elementary(3, 0, 0), elementary(3, 1, 1), elementary(3, 2, 2)};
    CHECK(derived_series(diag) == std::vector<Eigen::Index>{3, 0});
}

TEST_CASE("lie-kolchin accepts an already triangular basis") {
    LieBasis basis;
    basis.ambient_dim = 3;
    basis.elements = {elementary(3, 0, 1) + 2.0 * elementary(3, 0, 0),
                      elementary(3, 1, 2) - elementary(3, 2, 2)};
    const CMat g = lie_kolchin_triangularize(basis);
    for (const CMat& x : basis.elements) {
        const CMat conj = g * x * g.inverse();
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = 0; j < i; ++j) CHECK(std::abs(conj(i, j)) <= 1e-8);
    }
}

TEST_CASE("lie-kolchin recovers triangularizability of conjugated pairs") {
    auto gen = testutil::rng(33);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        for (Eigen::Index d = 3; d <= 4; ++d) {
            CMat u1 = CMat::Zero(d, d), u2 = CMat::Zero(d, d);
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = i; j < d; ++j) {
                    u1(i, j) = Complex(unif(gen), unif(gen));
                    u2(i, j) = Complex(unif(gen), unif(gen));
                }
            const CMat h = testutil::random_cconjugator(gen, d);
            const CMat hinv = h.inverse();
            LieBasis basis;
            basis.ambient_dim = d;
            basis.elements = {h * u1 * hinv, h * u2 * hinv};

            const CMat g = lie_kolchin_triangularize(basis);
            const CMat ginv = g.inverse();
            for (const CMat& x : basis.elements) {
                const CMat conj = g * x * ginv;
                for (Eigen::Index i = 0; i < d; ++i)
                    for (Eigen::Index j = 0; j < i; ++j)
                        CHECK(std::abs(conj(i, j)) <= 1e-8 * std::max(1.0, x.norm()));
            }
        }
    }
}

TEST_CASE("lie-kolchin preserves spectra on the diagonal") {
    auto gen = testutil::rng(34);
    CMat u = CMat::Zero(3, 3);
    u(0, 0) = 1.0;
    u(1, 1) = Complex(0.0, 2.0);
    u(2, 2) = -0.5;
    u(0, 1) = 0.7;
    u(1, 2) = Complex(0.3, -0.2);
    const CMat h = testutil::random_cconjugator(gen, 3);
    LieBasis basis;
    basis.ambient_dim = 3;
    basis.elements = {h * u * h.inverse()};
    const CMat g = lie_kolchin_triangularize(basis);
    const CMat conj = g * basis.elements[0] * g.inverse();
    std::vector<Complex> diag{conj(0, 0), conj(1, 1), conj(2, 2)};
    std::vector<Complex> expected{1.0, Complex(0.0, 2.0), -0.5};
    std::sort(diag.begin(), diag.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    std::sort(expected.begin(), expected.end(),
              [](Complex a, Complex b) { return a.real() < b.real(); });
    for (size_t i = 0; i < 3; ++i) CHECK(std::abs(diag[i] - expected[i]) <= 1e-7);
}

TEST_CASE("lie-kolchin rejects sl2") {
    const LieBasis sl2 = tangent_algebra(sl_constraints(2), 2).basis;
    CHECK_THROWS_AS((void)lie_kolchin_triangularize(sl2), solvability_error);
}
