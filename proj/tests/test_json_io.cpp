#include <doctest.h>

#include "liekit/json_io.hpp"
#include "test_util.hpp"

using namespace liekit;

TEST_CASE("real matrix JSON roundtrip is exact") {
    auto gen = testutil::rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const RMat m = testutil::random_rmat(gen, 3, 2.0);
        const Json j = mat_to_json(m);
        // Serialize through text to exercise the wire format.
        const Json parsed = Json::parse(j.dump());
        bool real_field = false;
        const CMat back = mat_from_json(parsed, &real_field);
        CHECK(real_field);
        CHECK((back.real() - m).norm() == 0.0);  // shortest-roundtrip doubles
    }
}

TEST_CASE("complex matrix JSON uses [re, im] pairs") {
    auto gen = testutil::rng(102);
    const CMat m = testutil::random_cmat(gen, 2, 1.0);
    const Json j = mat_to_json(m, false);
    CHECK(j["field"] == "complex");
    CHECK(j["entries"][0][0].is_array());
    const CMat back = mat_from_json(Json::parse(j.dump()));
    CHECK((back - m).norm() == 0.0);
}

TEST_CASE("matrix JSON validation errors") {
    CHECK_THROWS_AS((void)mat_from_json(Json::parse("{}")), validation_error);
    CHECK_THROWS_AS((void)mat_from_json(Json::parse(R"({"dim":2,"field":"real","entries":[[1,2]]})")),
                    validation_error);
    CHECK_THROWS_AS(
        (void)mat_from_json(Json::parse(R"({"dim":1,"field":"quaternion","entries":[[1]]})")),
        validation_error);
    CHECK_THROWS_AS(
        (void)mat_from_json(Json::parse(R"({"dim":1,"field":"complex","entries":[[1]]})")),
        validation_error);
}

TEST_CASE("vector JSON roundtrip") {
    CVec v(3);
    v << Complex(1.5, -0.25), Complex(0.0, 2.0), Complex(-3.0, 0.0);
    const CVec back = vec_from_json(Json::parse(vec_to_json(v, false).dump()));
    CHECK((back - v).norm() == 0.0);
}

TEST_CASE("lie basis JSON roundtrip validates independence") {
    LieBasis basis;
    basis.ambient_dim = 2;
    basis.real_field = true;
    CMat x = CMat::Zero(2, 2), y = CMat::Zero(2, 2);
    x(0, 1) = 1.0;
    y(0, 0) = 1.0;
    y(1, 1) = -1.0;
    basis.elements = {x, y};
    const LieBasis back = basis_from_json(Json::parse(basis_to_json(basis).dump()));
    CHECK(back.ambient_dim == 2);
    CHECK(back.dim() == 2);
    CHECK((back.elements[0] - x).norm() == 0.0);

    // A dependent element list must be rejected on parse.
    Json j = basis_to_json(basis);
    j["elements"].push_back(mat_to_json(x, true));
    CHECK_THROWS_AS((void)basis_from_json(j), validation_error);
}

TEST_CASE("lattice JSON roundtrip carries the covolume") {
    LatticeBasis basis;
    basis.rows.resize(2, 2);
    basis.rows << 2, 0, 0, 0.5;
    const Json j = lattice_to_json(basis);
    CHECK(j["covolume"].get<double>() == doctest::Approx(1.0));
    const LatticeBasis back = lattice_from_json(Json::parse(j.dump()));
    CHECK((back.rows - basis.rows).norm() == 0.0);

    Json degenerate = j;
    degenerate["rows"][1] = degenerate["rows"][0];
    CHECK_THROWS_AS((void)lattice_from_json(degenerate), validation_error);
}
