#include <doctest.h>

#include "liekit/iwasawa.hpp"
#include "test_util.hpp"

using namespace liekit;

namespace {

RMat random_sl(std::mt19937_64& gen, Eigen::Index d) {
    while (true) {
        RMat m = testutil::random_rmat(gen, d, 2.0);
        double det = m.determinant();
        if (std::abs(det) < 0.05) continue;
        if (det < 0.0) {
            m.row(0).swap(m.row(1));
            det = -det;
        }
        return m / std::pow(det, 1.0 / static_cast<double>(d));
    }
}

}  // namespace

TEST_CASE("iwasawa of an NA matrix is itself") {
    // u(x) a(y) with x = 1, y = 4 in the half-plane convention: a = (2, 1/2).
    RMat g(2, 2);
    g << 2.0, 0.5, 0.0, 0.5;
    const NAKDecomposition nak = iwasawa(g);
    CHECK(std::abs(nak.a(0) - 2.0) <= 1e-12);
    CHECK(std::abs(nak.a(1) - 0.5) <= 1e-12);
    CHECK(std::abs(nak.n(0, 1) - 1.0) <= 1e-12);
    CHECK((nak.k - RMat::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("iwasawa of a rotation is the rotation") {
    RMat k(2, 2);
    k << std::cos(0.7), std::sin(0.7), -std::sin(0.7), std::cos(0.7);
    const NAKDecomposition nak = iwasawa(k);
    CHECK((nak.n - RMat::Identity(2, 2)).norm() <= 1e-12);
    CHECK(std::abs(nak.a(0) - 1.0) <= 1e-12);
    CHECK(std::abs(nak.a(1) - 1.0) <= 1e-12);
    CHECK((nak.k - k).norm() <= 1e-12);
}

TEST_CASE("iwasawa reconstruction on random SL3 inputs") {
    auto gen = testutil::rng(51);
    for (int trial = 0; trial < 1000; ++trial) {
        const RMat g = random_sl(gen, 3);
        const NAKDecomposition nak = iwasawa(g);
        CHECK((nak.reassemble() - g).norm() <= 1e-12 * std::max(1.0, g.norm()));
        CHECK((nak.k * nak.k.transpose() - RMat::Identity(3, 3)).norm() <= 1e-12);
        CHECK(std::abs(nak.k.determinant() - 1.0) <= 1e-12);
        double prod = 1.0;
        for (Eigen::Index i = 0; i < 3; ++i) {
            CHECK(nak.a(i) > 0.0);
            prod *= nak.a(i);
        }
        CHECK(std::abs(prod - 1.0) <= 1e-10);
        for (Eigen::Index i = 0; i < 3; ++i) {
            CHECK(std::abs(nak.n(i, i) - 1.0) <= 1e-14);
            for (Eigen::Index j = 0; j < i; ++j) CHECK(nak.n(i, j) == 0.0);
        }
    }
}

TEST_CASE("iwasawa determinant handling") {
    RMat g(2, 2);
    g << 2, 0, 0, 2;
    CHECK_THROWS_AS((void)iwasawa(g), validation_error);
    const NAKDecomposition nak = iwasawa(g, /*rescale=*/true);
    CHECK((nak.reassemble() - RMat::Identity(2, 2)).norm() <= 1e-12);

    RMat sing(2, 2);
    sing << 1, 2, 2, 4;
    CHECK_THROWS_AS((void)iwasawa(sing), validation_error);

    RMat neg(2, 2);
    neg << 0, 1, 1, 0;
    CHECK_THROWS_AS((void)iwasawa(neg, /*rescale=*/true), validation_error);
}
