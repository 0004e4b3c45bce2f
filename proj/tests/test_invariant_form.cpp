#include <doctest.h>

#include "liekit/invariant_form.hpp"
#include "test_util.hpp"

using namespace liekit;

namespace {

// Conjugated standard rotation representation: k -> S k S^-1.
std::function<CMat(const CMat&)> conjugated_so2(const CMat& s) {
    const CMat sinv = s.inverse();
    return [s, sinv](const CMat& k) { return CMat(s * k * sinv); };
}

}  // namespace

TEST_CASE("trivial representation averages to the identity") {
    const auto rep = [](const CMat&) { return CMat(CMat::Identity(3, 3)); };
    const HermitianForm form = invariant_hermitian_form(so2_quadrature(16), rep);
    CHECK((form.gram - CMat::Identity(3, 3)).norm() <= 1e-14);
}

TEST_CASE("standard SO(2) representation is already orthogonal") {
    const auto rep = [](const CMat& k) { return k; };
    const HermitianForm form = invariant_hermitian_form(so2_quadrature(256), rep);
    CHECK((form.gram - CMat::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("conjugated SO(2) representation averages to the transported form") {
    CMat s(2, 2);
    s << 1.0, 0.7, -0.2, 1.4;
    const HermitianForm form = invariant_hermitian_form(so2_quadrature(256), conjugated_so2(s));
    // Average of k M k^-1 over SO(2) is (tr M / 2) I for symmetric M, so the
    // averaged form transports to a scalar multiple of (S^-1)* S^-1.
    const CMat sinv = s.inverse();
    const double scale = (s.adjoint() * s).trace().real() / 2.0;
    const CMat expected = scale * sinv.adjoint() * sinv;
    CHECK((form.gram - expected).norm() <= 1e-10);
}

TEST_CASE("averaged form is invariant under every group element") {
    CMat s(2, 2);
    s << 0.9, 0.5, 0.1, 1.2;
    const auto rep = conjugated_so2(s);
    const HermitianForm form = invariant_hermitian_form(so2_quadrature(256), rep);
    for (const auto& node : so2_quadrature(17)) {
        const CMat rho = rep(node.g);
        CHECK((rho.adjoint() * form.gram * rho - form.gram).norm() <= 1e-11);
    }
}

TEST_CASE("weights must be positive and sum to one") {
    const auto rep = [](const CMat& k) { return k; };
    auto nodes = so2_quadrature(8);
    nodes[0].weight = -nodes[0].weight;
    CHECK_THROWS_AS((void)invariant_hermitian_form(nodes, rep), validation_error);
    nodes = so2_quadrature(8);
    nodes[0].weight *= 2.0;
    CHECK_THROWS_AS((void)invariant_hermitian_form(nodes, rep), validation_error);
}

TEST_CASE("complement with the standard form") {
    HermitianForm standard{CMat(CMat::Identity(2, 2))};
    CVec e1 = CVec::Zero(2);
    e1(0) = 1.0;
    const auto comp = invariant_complement(standard, {e1});
    REQUIRE(comp.size() == 1);
    CHECK(std::abs(comp[0](0)) <= 1e-12);
    CHECK(std::abs(std::abs(comp[0](1)) - 1.0) <= 1e-12);
}

TEST_CASE("complement of an invariant line is invariant") {
    CMat s(2, 2);
    s << 1.1, 0.4, -0.3, 0.9;
    const auto rep = conjugated_so2(s);
    const HermitianForm form = invariant_hermitian_form(so2_quadrature(256), rep);

    // Invariant lines of the conjugated rotation action are S * (1, +-i).
    CVec line = CVec::Zero(2);
    line(0) = Complex(1.0, 0.0);
    line(1) = Complex(0.0, 1.0);
    line = (s * line).eval();

    const auto comp = invariant_complement(form, {line});
    REQUIRE(comp.size() == 1);
    const CMat rho = rep(so2_quadrature(8)[1].g);
    const CVec image = rho * comp[0];
    const Complex lambda = comp[0].dot(image);
    CHECK((image - lambda * comp[0]).norm() <= 1e-9);
}

TEST_CASE("complement of the full space is empty") {
    HermitianForm standard{CMat(CMat::Identity(2, 2))};
    CVec e1 = CVec::Zero(2), e2 = CVec::Zero(2);
    e1(0) = 1.0;
    e2(1) = 1.0;
    CHECK(invariant_complement(standard, {e1, e2}).empty());
}

TEST_CASE("complement dimensions add up") {
    auto gen = testutil::rng(41);
    const CMat base = testutil::random_cmat(gen, 4, 1.0);
    const CMat gram = base.adjoint() * base + 4.0 * CMat::Identity(4, 4);
    HermitianForm form{gram};
    std::vector<CVec> sub;
    sub.push_back(testutil::random_cmat(gen, 4, 1.0).col(0));
    sub.push_back(testutil::random_cmat(gen, 4, 1.0).col(1));
    const auto comp = invariant_complement(form, sub);
    CHECK(comp.size() == 2);
    for (const CVec& w : comp)
        for (const CVec& v : sub) CHECK(std::abs((v.adjoint() * form.gram * w)(0)) <= 1e-9);
}
