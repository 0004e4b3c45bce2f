#include "liekit/json_io.hpp"

namespace liekit {
namespace {

Json scalar_to_json(Complex z, bool as_real) {
    if (as_real) return z.real();
    return Json::array({z.real(), z.imag()});
}

Complex scalar_from_json(const Json& j, bool expect_complex) {
    if (expect_complex) {
        if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
            throw validation_error("matrix JSON: complex entries must be [re, im] pairs");
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (!j.is_number()) throw validation_error("matrix JSON: real entries must be numbers");
    return {j.get<double>(), 0.0};
}

bool parse_field(const Json& j) {
    if (!j.contains("field") || !j["field"].is_string())
        throw validation_error("matrix JSON: missing \"field\"");
    const std::string field = j["field"].get<std::string>();
    if (field == "real") return true;
    if (field == "complex") return false;
    throw validation_error("matrix JSON: field must be \"real\" or \"complex\"");
}

}  // namespace

Json mat_to_json(const CMat& m, bool as_real) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j), as_real));
        entries.push_back(std::move(row));
    }
    return Json{{"dim", m.rows()}, {"field", as_real ? "real" : "complex"}, {"entries", entries}};
}

Json mat_to_json(const RMat& m) { return mat_to_json(CMat(m.cast<Complex>()), true); }

CMat mat_from_json(const Json& j, bool* is_real) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw validation_error("matrix JSON: expected {dim, field, entries}");
    const bool real_field = parse_field(j);
    if (is_real) *is_real = real_field;
    const auto d = j["dim"].get<Eigen::Index>();
    if (d <= 0) throw validation_error("matrix JSON: dim must be positive");
    const Json& entries = j["entries"];
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != d)
        throw validation_error("matrix JSON: entries must be a dim x dim array");
    CMat m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Json& row = entries[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
            throw validation_error("matrix JSON: entries must be a dim x dim array");
        for (Eigen::Index c = 0; c < d; ++c)
            m(i, c) = scalar_from_json(row[static_cast<size_t>(c)], !real_field);
    }
    if (!m.allFinite()) throw validation_error("matrix JSON: non-finite entries");
    return m;
}

RMat rmat_from_json(const Json& j) {
    bool real_field = false;
    const CMat m = mat_from_json(j, &real_field);
    if (!real_field) throw validation_error("matrix JSON: expected a real matrix");
    return m.real();
}

Json vec_to_json(const CVec& v, bool as_real) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(scalar_to_json(v(i), as_real));
    return Json{{"dim", v.size()}, {"field", as_real ? "real" : "complex"}, {"entries", entries}};
}

CVec vec_from_json(const Json& j, bool* is_real) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw validation_error("vector JSON: expected {dim, field, entries}");
    const bool real_field = parse_field(j);
    if (is_real) *is_real = real_field;
    const auto d = j["dim"].get<Eigen::Index>();
    if (d <= 0) throw validation_error("vector JSON: dim must be positive");
    const Json& entries = j["entries"];
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != d)
        throw validation_error("vector JSON: entries must have length dim");
    CVec v(d);
    for (Eigen::Index i = 0; i < d; ++i)
        v(i) = scalar_from_json(entries[static_cast<size_t>(i)], !real_field);
    if (!v.allFinite()) throw validation_error("vector JSON: non-finite entries");
    return v;
}

Json basis_to_json(const LieBasis& basis) {
    Json elements = Json::array();
    for (const CMat& m : basis.elements) elements.push_back(mat_to_json(m, basis.real_field));
    return Json{{"ambientDim", basis.ambient_dim},
                {"field", basis.real_field ? "real" : "complex"},
                {"elements", elements}};
}

LieBasis basis_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ambientDim") || !j.contains("elements"))
        throw validation_error("basis JSON: expected {ambientDim, field, elements}");
    LieBasis basis;
    basis.ambient_dim = j["ambientDim"].get<Eigen::Index>();
    basis.real_field = parse_field(j);
    for (const Json& el : j["elements"]) basis.elements.push_back(mat_from_json(el));
    validate_basis(basis);
    return basis;
}

Json lattice_to_json(const LatticeBasis& basis) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < basis.rows.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < basis.rows.cols(); ++j) row.push_back(basis.rows(i, j));
        rows.push_back(std::move(row));
    }
    return Json{{"dim", basis.rows.rows()}, {"rows", rows}, {"covolume", basis.covolume()}};
}

LatticeBasis lattice_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows"))
        throw validation_error("lattice JSON: expected {dim, rows}");
    const auto d = j["dim"].get<Eigen::Index>();
    if (d <= 0) throw validation_error("lattice JSON: dim must be positive");
    const Json& rows = j["rows"];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d)
        throw validation_error("lattice JSON: rows must be a dim x dim array");
    LatticeBasis basis;
    basis.rows.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Json& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
            throw validation_error("lattice JSON: rows must be a dim x dim array");
        for (Eigen::Index c = 0; c < d; ++c) {
            const Json& cell = row[static_cast<size_t>(c)];
            if (!cell.is_number()) throw validation_error("lattice JSON: entries must be numbers");
            basis.rows(i, c) = cell.get<double>();
        }
    }
    validate_lattice(basis);
    return basis;
}

Json nak_to_json(const NAKDecomposition& nak) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < nak.a.size(); ++i) a.push_back(nak.a(i));
    return Json{{"n", mat_to_json(nak.n)}, {"a", a}, {"k", mat_to_json(nak.k)}};
}

}  // namespace liekit
