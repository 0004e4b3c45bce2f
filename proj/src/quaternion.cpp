#include "liekit/quaternion.hpp"

#include <algorithm>
#include <cmath>

namespace liekit {
namespace {

void require_same_field(const QuadExt& u, const QuadExt& v) {
    if (u.a != v.a) throw validation_error("QuadExt: mixed quadratic fields");
}

QuadExt qe(long long a, Rational p, Rational q) { return {p, q, a}; }

}  // namespace

double QuadExt::value() const {
    return boost::rational_cast<double>(p) +
           boost::rational_cast<double>(q) * std::sqrt(static_cast<double>(a));
}

QuadExt qe_add(const QuadExt& u, const QuadExt& v) {
    require_same_field(u, v);
    return {u.p + v.p, u.q + v.q, u.a};
}

QuadExt qe_sub(const QuadExt& u, const QuadExt& v) {
    require_same_field(u, v);
    return {u.p - v.p, u.q - v.q, u.a};
}

QuadExt qe_mul(const QuadExt& u, const QuadExt& v) {
    require_same_field(u, v);
    // (p1 + q1 s)(p2 + q2 s) = p1 p2 + a q1 q2 + (p1 q2 + q1 p2) s
    return {u.p * v.p + Rational(u.a) * u.q * v.q, u.p * v.q + u.q * v.p, u.a};
}

bool qe_eq(const QuadExt& u, const QuadExt& v) {
    return u.a == v.a && u.p == v.p && u.q == v.q;
}

QuadExt QMat2::det() const {
    return qe_sub(qe_mul(e[0][0], e[1][1]), qe_mul(e[0][1], e[1][0]));
}

RMat QMat2::embed() const {
    RMat out(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out(r, c) = e[r][c].value();
    return out;
}

QMat2 qm_add(const QMat2& u, const QMat2& v) {
    QMat2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.e[r][c] = qe_add(u.e[r][c], v.e[r][c]);
    return out;
}

QMat2 qm_mul(const QMat2& u, const QMat2& v) {
    QMat2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.e[r][c] = qe_add(qe_mul(u.e[r][0], v.e[0][c]), qe_mul(u.e[r][1], v.e[1][c]));
    return out;
}

QMat2 qm_scale(long long s, const QMat2& u) {
    QMat2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.e[r][c] = {Rational(s) * u.e[r][c].p, Rational(s) * u.e[r][c].q, u.e[r][c].a};
    return out;
}

QMat2 qm_identity(long long a) {
    QMat2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out.e[r][c] = qe(a, Rational(r == c ? 1 : 0), Rational(0));
    return out;
}

bool qm_eq(const QMat2& u, const QMat2& v) {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!qe_eq(u.e[r][c], v.e[r][c])) return false;
    return true;
}

QuatBasis quaternion_basis(long long a, long long b) {
    require(a >= 1 && b >= 1, "quaternion_basis: a, b must be positive integers");
    QuatBasis out;
    out.a = a;
    out.b = b;
    {
        const long long root = std::llround(std::sqrt(static_cast<double>(a)));
        out.degenerate_field = root * root == a;
    }
    // i = [[sqrt(a), 0], [0, -sqrt(a)]], j = [[0, 1], [b, 0]],
    // k = [[0, sqrt(a)], [-b sqrt(a), 0]].
    out.i.e[0][0] = qe(a, 0, 1);
    out.i.e[0][1] = qe(a, 0, 0);
    out.i.e[1][0] = qe(a, 0, 0);
    out.i.e[1][1] = qe(a, 0, -1);
    out.j.e[0][0] = qe(a, 0, 0);
    out.j.e[0][1] = qe(a, 1, 0);
    out.j.e[1][0] = qe(a, b, 0);
    out.j.e[1][1] = qe(a, 0, 0);
    out.k = qm_mul(out.i, out.j);

    const QMat2 id = qm_identity(a);
    if (!qm_eq(qm_mul(out.i, out.i), qm_scale(a, id)) ||
        !qm_eq(qm_mul(out.j, out.j), qm_scale(b, id)) ||
        !qm_eq(qm_mul(out.j, out.i), qm_scale(-1, out.k)))
        throw internal_error("quaternion_basis: relations failed");
    return out;
}

QMat2 quat_matrix(const QuatBasis& basis, long long w, long long x, long long y, long long z) {
    return qm_add(qm_add(qm_scale(w, qm_identity(basis.a)), qm_scale(x, basis.i)),
                  qm_add(qm_scale(y, basis.j), qm_scale(z, basis.k)));
}

std::vector<QuatElement> quaternion_lattice_elements(const QuatBasis& basis, long long height) {
    require(height >= 0, "quaternion_lattice_elements: negative height");
    const long long a = basis.a, b = basis.b;
    std::vector<QuatElement> out;
    for (long long w = -height; w <= height; ++w)
        for (long long x = -height; x <= height; ++x)
            for (long long y = -height; y <= height; ++y)
                for (long long z = -height; z <= height; ++z) {
                    if (w * w - a * x * x - b * y * y + a * b * z * z != 1) continue;
                    QuatElement el{w, x, y, z, quat_matrix(basis, w, x, y, z)};
                    if (!qe_eq(el.matrix.det(), {Rational(1), Rational(0), a}))
                        throw internal_error(
                            "quaternion_lattice_elements: determinant identity failed");
                    out.push_back(std::move(el));
                }
    // Lexicographic enumeration is already sorted; keep the contract explicit.
    std::sort(out.begin(), out.end(), [](const QuatElement& u, const QuatElement& v) {
        return std::tie(u.w, u.x, u.y, u.z) < std::tie(v.w, v.x, v.y, v.z);
    });
    return out;
}

double discreteness_margin(const std::vector<QuatElement>& elements) {
    require(elements.size() >= 2, "discreteness_margin: need at least two elements");
    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < elements.size(); ++i) {
        for (size_t j = i + 1; j < elements.size(); ++j) {
            const auto& u = elements[i];
            const auto& v = elements[j];
            if (u.w == v.w && u.x == v.x && u.y == v.y && u.z == v.z)
                throw internal_error("discreteness_margin: duplicate elements in input");
            margin = std::min(margin, (u.matrix.embed() - v.matrix.embed()).norm());
        }
    }
    return margin;
}

std::vector<QuatElement> congruence_filter(const std::vector<QuatElement>& elements,
                                           long long m) {
    require(m >= 2, "congruence_filter: modulus must be >= 2");
    const auto mod0 = [m](long long v) { return ((v % m) + m) % m == 0; };
    std::vector<QuatElement> out;
    for (const auto& el : elements)
        if (mod0(el.w - 1) && mod0(el.x) && mod0(el.y) && mod0(el.z)) out.push_back(el);
    return out;
}

std::vector<IMat> congruence_filter(const std::vector<IMat>& elements, long long m) {
    require(m >= 2, "congruence_filter: modulus must be >= 2");
    const auto mod0 = [m](long long v) { return ((v % m) + m) % m == 0; };
    std::vector<IMat> out;
    for (const auto& g : elements) {
        bool keep = true;
        for (Eigen::Index r = 0; r < g.rows() && keep; ++r)
            for (Eigen::Index c = 0; c < g.cols() && keep; ++c)
                keep = mod0(g(r, c) - (r == c ? 1 : 0));
        if (keep) out.push_back(g);
    }
    return out;
}

}  // namespace liekit
