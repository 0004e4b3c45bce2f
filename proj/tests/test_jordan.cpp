#include <doctest.h>

#include "liekit/jordan.hpp"
#include "test_util.hpp"

using namespace liekit;

TEST_CASE("jordan split of a diagonal matrix is trivial") {
    RMat g(2, 2);
    g << 2, 0, 0, 3;
    const JordanSplit js = jordan_split(g);
    CHECK((js.semisimple - g.cast<Complex>()).norm() <= 1e-12);
    CHECK((js.unipotent - CMat::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("jordan split of a single Jordan block") {
    RMat g(2, 2);
    g << 2, 1, 0, 2;
    const JordanSplit js = jordan_split(g);
    CMat expected_s = 2.0 * CMat::Identity(2, 2);
    CMat expected_u(2, 2);
    expected_u << 1, 0.5, 0, 1;
    CHECK((js.semisimple - expected_s).norm() <= 1e-12);
    CHECK((js.unipotent - expected_u).norm() <= 1e-12);
}

TEST_CASE("jordan split postconditions on random conjugates of mixed forms") {
    auto gen = testutil::rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        // Mixed Jordan form: one 2-block with eigenvalue 2, one 1-block with 3.
        CMat j = CMat::Zero(3, 3);
        j(0, 0) = 2.0;
        j(0, 1) = 1.0;
        j(1, 1) = 2.0;
        j(2, 2) = 3.0;
        const CMat h = testutil::random_cconjugator(gen, 3);
        const CMat g = h * j * h.inverse();

        const JordanSplit js = jordan_split(g);
        CHECK((js.semisimple * js.unipotent - g).norm() <= 1e-9 * std::max(1.0, g.norm()));
        CHECK((js.semisimple * js.unipotent - js.unipotent * js.semisimple).norm() <=
              1e-9 * std::max(1.0, g.norm()));
        // Unipotent part has all eigenvalues 1.
        Eigen::ComplexEigenSolver<CMat> es(js.unipotent);
        for (Eigen::Index i = 0; i < 3; ++i)
            CHECK(std::abs(es.eigenvalues()(i) - Complex(1.0)) <= 1e-7);
    }
}

TEST_CASE("classification labels") {
    RMat unip(2, 2), semi(2, 2), mixed(2, 2);
    unip << 1, 5, 0, 1;
    semi << 2, 0, 0, 0.5;
    mixed << 2, 1, 0, 2;
    CHECK(classify_element(unip) == ElementClass::Unipotent);
    CHECK(classify_element(semi) == ElementClass::Semisimple);
    CHECK(classify_element(mixed) == ElementClass::Mixed);
}

TEST_CASE("clustering ambiguity raises a diagnostic error") {
    // Effective merge distance in d = 2 is eps^(1/3) ~ 4.6e-6; a gap inside
    // (1x, 3x) of it is too wide to merge and too narrow to trust.
    RMat g(2, 2);
    g << 1.0, 0, 0, 1.0 + 1e-5;
    CHECK_THROWS_AS((void)jordan_split(g), ill_conditioned_error);
}

TEST_CASE("singular input is rejected") {
    RMat g(2, 2);
    g << 1, 0, 0, 0;
    CHECK_THROWS_AS((void)jordan_split(g), validation_error);
}
