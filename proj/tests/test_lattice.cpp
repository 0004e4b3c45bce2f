#include <doctest.h>

#include "liekit/iwasawa.hpp"
#include "liekit/lattice.hpp"
#include "test_util.hpp"

using namespace liekit;

namespace {

LatticeBasis from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    LatticeBasis basis;
    const Eigen::Index d = static_cast<Eigen::Index>(rows.size());
    basis.rows.resize(d, d);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (const double v : row) basis.rows(i, j++) = v;
        ++i;
    }
    return basis;
}

// Independent exhaustive oracle: box bounds from the dual basis norms.
double brute_force_shortest(const LatticeBasis& basis) {
    const Eigen::Index d = basis.rows.rows();
    const RMat dual = basis.rows.inverse().transpose();
    double radius = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d; ++i) radius = std::min(radius, basis.rows.row(i).norm());
    std::vector<long> bound(static_cast<size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i)
        bound[static_cast<size_t>(i)] =
            static_cast<long>(std::floor(radius * dual.row(i).norm() + 1e-9));

    double best = std::numeric_limits<double>::infinity();
    std::vector<long> x(static_cast<size_t>(d), 0);
    const std::function<void(Eigen::Index)> walk = [&](Eigen::Index level) {
        if (level == d) {
            RVec v = RVec::Zero(d);
            bool zero = true;
            for (Eigen::Index i = 0; i < d; ++i) {
                if (x[static_cast<size_t>(i)] != 0) zero = false;
                v += static_cast<double>(x[static_cast<size_t>(i)]) * basis.rows.row(i).transpose();
            }
            if (!zero) best = std::min(best, v.norm());
            return;
        }
        for (long c = -bound[static_cast<size_t>(level)]; c <= bound[static_cast<size_t>(level)]; ++c) {
            x[static_cast<size_t>(level)] = c;
            walk(level + 1);
        }
    };
    walk(0);
    return best;
}

}  // namespace

TEST_CASE("shortest vector of the integer lattice") {
    const ShortestVectorResult sv = shortest_vector(from_rows({{1, 0}, {0, 1}}));
    CHECK(sv.norm == 1.0);
    CHECK(sv.coeffs == std::vector<long long>{0, 1});  // canonical lexicographic pick
}

TEST_CASE("shortest vector of a squeezed lattice") {
    const ShortestVectorResult sv = shortest_vector(from_rows({{0.1, 0}, {0, 10}}));
    CHECK(std::abs(sv.norm - 0.1) <= 1e-15);
    CHECK(std::abs(std::abs(sv.v(0)) - 0.1) <= 1e-15);
}

TEST_CASE("shortest vector needs correlated coefficients") {
    // The shortest vector is -10*b1 + b2 = (0, 0.1); a naive per-axis box
    // around the basis rows misses it.
    const ShortestVectorResult sv = shortest_vector(from_rows({{1, 0}, {10, 0.1}}));
    CHECK(std::abs(sv.norm - 0.1) <= 1e-12);
}

TEST_CASE("shortest vector agrees with the enlarged-box oracle") {
    auto gen = testutil::rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        LatticeBasis basis;
        basis.rows = testutil::random_conjugator(gen, 3);
        const double mine = shortest_vector(basis, 2.0 * 1.5).norm;
        const double oracle = brute_force_shortest(basis);
        CHECK(std::abs(mine - oracle) <= 1e-12 * std::max(1.0, oracle));
    }
}

TEST_CASE("reduce keeps the identity basis fixed") {
    const ReducedBasis red = reduce_basis(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(red.transform == IMat(IMat::Identity(3, 3).cast<long long>()));
    CHECK((red.reduced.rows - RMat::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("reduce orders the smallest vector last") {
    const ReducedBasis red = reduce_basis(from_rows({{2, 0}, {0, 0.5}}));
    CHECK(std::abs(red.reduced.rows(1, 1) - 0.5) <= 1e-15);
    CHECK(std::abs(red.reduced.rows(1, 0)) <= 1e-15);
    CHECK(std::abs(red.transform.cast<double>().determinant()) == 1.0);
}

TEST_CASE("reduction satisfies the Siegel inequalities and preserves the lattice") {
    auto gen = testutil::rng(62);
    const double ratio_bound = 2.0 / std::sqrt(3.0) + 1e-9;
    for (int trial = 0; trial < 50; ++trial) {
        LatticeBasis basis;
        basis.rows = testutil::random_conjugator(gen, 3);
        const ReducedBasis red = reduce_basis(basis);

        // Integer unimodular transform linking the bases.
        double detu = 1.0;
        {
            RMat ud(3, 3);
            for (Eigen::Index i = 0; i < 3; ++i)
                for (Eigen::Index j = 0; j < 3; ++j) ud(i, j) = static_cast<double>(red.transform(i, j));
            detu = ud.determinant();
            CHECK(std::abs(std::abs(detu) - 1.0) <= 1e-9);
            CHECK((ud * basis.rows - red.reduced.rows).norm() <= 1e-9);
        }
        CHECK(std::abs(red.reduced.covolume() - basis.covolume()) <=
              1e-10 * std::max(1.0, basis.covolume()));

        // Siegel coordinates of the reduced matrix (rescaled to det 1).
        const NAKDecomposition nak = iwasawa(red.reduced.rows, /*rescale=*/true);
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = i + 1; j < 3; ++j) CHECK(std::abs(nak.n(i, j)) <= 0.5 + 1e-9);
        for (Eigen::Index i = 1; i < 3; ++i) CHECK(nak.a(i) / nak.a(i - 1) <= ratio_bound);

        // The last reduced row is a shortest vector.
        CHECK(std::abs(red.reduced.rows.row(2).norm() - brute_force_shortest(basis)) <= 1e-12);
    }
}

TEST_CASE("reduction is idempotent") {
    auto gen = testutil::rng(63);
    for (int trial = 0; trial < 20; ++trial) {
        LatticeBasis basis;
        basis.rows = testutil::random_conjugator(gen, 3);
        const ReducedBasis once = reduce_basis(basis);
        const ReducedBasis twice = reduce_basis(once.reduced);
        CHECK(twice.transform == IMat(IMat::Identity(3, 3).cast<long long>()));
    }
}

TEST_CASE("reduction dimension cap") {
    LatticeBasis basis;
    basis.rows = RMat::Identity(7, 7);
    CHECK_THROWS_AS((void)reduce_basis(basis), validation_error);
    CHECK_THROWS_AS((void)shortest_vector(basis), validation_error);
}

TEST_CASE("mahler margin of the integer lattice") {
    CHECK(mahler_margin({from_rows({{1, 0}, {0, 1}})}) == 1.0);
}

TEST_CASE("mahler margin of the escaping diagonal family") {
    std::vector<LatticeBasis> family;
    for (int n = 1; n <= 10; ++n)
        family.push_back(from_rows({{1.0 / n, 0}, {0, static_cast<double>(n)}}));
    const double margin = mahler_margin(family);
    CHECK(std::abs(margin - 0.1) <= 1e-15);
    CHECK(margin < 0.5);  // flagged escaping for delta = 0.5
}

TEST_CASE("mahler margin equals the member-wise oracle on bounded families") {
    auto gen = testutil::rng(64);
    std::vector<LatticeBasis> family;
    double oracle = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 10; ++trial) {
        LatticeBasis basis;
        basis.rows = testutil::random_conjugator(gen, 3);
        basis.rows /= std::cbrt(std::abs(basis.rows.determinant()));
        family.push_back(basis);
        oracle = std::min(oracle, brute_force_shortest(basis));
    }
    CHECK(std::abs(mahler_margin(family) - oracle) <= 1e-12);
}

TEST_CASE("mahler margin rejects non-unimodular members") {
    CHECK_THROWS_AS((void)mahler_margin({from_rows({{2, 0}, {0, 1}})}), validation_error);
}
