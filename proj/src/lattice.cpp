#include "liekit/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

namespace liekit {
namespace {

constexpr Eigen::Index kMaxDim = 6;

void canonicalize_coeffs(std::vector<long long>& c) {
    for (long long x : c) {
        if (x > 0) return;
        if (x < 0) {
            for (long long& y : c) y = -y;
            return;
        }
    }
}

struct Enumerator {
    const RMat& rows;              // m x n basis rows
    Eigen::Index m;
    RMat gso;                      // Gram-Schmidt rows b_i^*
    RMat mu;                       // mu(i, j) = <b_i, b_j^*> / |b_j^*|^2, j < i
    RVec gso_norm2;

    explicit Enumerator(const RMat& r) : rows(r), m(r.rows()) {
        gso = rows;
        mu = RMat::Zero(m, m);
        gso_norm2 = RVec::Zero(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < i; ++j) {
                mu(i, j) = rows.row(i).dot(gso.row(j)) / gso_norm2(j);
                gso.row(i) -= mu(i, j) * gso.row(j);
            }
            gso_norm2(i) = gso.row(i).squaredNorm();
            if (gso_norm2(i) <= 0.0)
                throw validation_error("lattice: basis rows are linearly dependent");
        }
    }

    // Depth-first search over coefficient vectors with |v|^2 <= bound2.
    void search(double bound2, const std::function<void(const std::vector<long long>&, double)>& visit) const {
        std::vector<long long> x(static_cast<size_t>(m), 0);
        descend(m - 1, 0.0, bound2, x, visit);
    }

  private:
    void descend(Eigen::Index level, double partial, double bound2, std::vector<long long>& x,
                 const std::function<void(const std::vector<long long>&, double)>& visit) const {
        // c_level = x_level + sum_{k>level} mu(k, level) x_k must satisfy
        // c^2 * |b_level^*|^2 <= bound2 - partial.
        double s = 0.0;
        for (Eigen::Index k = level + 1; k < m; ++k)
            s += mu(k, level) * static_cast<double>(x[static_cast<size_t>(k)]);
        const double room = bound2 - partial;
        if (room < 0.0) return;
        const double half_width = std::sqrt(room / gso_norm2(level));
        const long long lo = static_cast<long long>(std::ceil(-half_width - s - 1e-12));
        const long long hi = static_cast<long long>(std::floor(half_width - s + 1e-12));
        for (long long xi = lo; xi <= hi; ++xi) {
            x[static_cast<size_t>(level)] = xi;
            const double c = static_cast<double>(xi) + s;
            const double next_partial = partial + c * c * gso_norm2(level);
            if (next_partial > bound2 * (1.0 + 1e-12)) continue;
            if (level == 0) {
                visit(x, next_partial);
            } else {
                descend(level - 1, next_partial, bound2, x, visit);
            }
        }
        x[static_cast<size_t>(level)] = 0;
    }
};

ShortestVectorResult shortest_impl(const RMat& rows, double radius_multiplier,
                                   const Tolerances&) {
    const Eigen::Index m = rows.rows();
    require(m >= 1 && m <= kMaxDim, "shortest_vector: dimension must be in 1..6");
    require(radius_multiplier >= 1.0, "shortest_vector: radius multiplier must be >= 1");

    double min_row = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) min_row = std::min(min_row, rows.row(i).norm());
    const double radius = min_row * radius_multiplier;

    Enumerator en(rows);
    double best2 = std::numeric_limits<double>::infinity();
    std::vector<std::vector<long long>> candidates;
    en.search(radius * radius, [&](const std::vector<long long>& x, double norm2) {
        if (std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; })) return;
        if (norm2 < best2 * (1.0 - 1e-12)) {
            best2 = norm2;
            candidates.clear();
            candidates.push_back(x);
        } else if (norm2 <= best2 * (1.0 + 1e-12)) {
            candidates.push_back(x);
        }
    });
    if (candidates.empty())
        throw internal_error("shortest_vector: enumeration produced no candidates");

    for (auto& c : candidates) canonicalize_coeffs(c);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    const std::vector<long long>& pick = candidates.front();

    ShortestVectorResult out;
    out.coeffs = pick;
    out.v = RVec::Zero(rows.cols());
    for (Eigen::Index i = 0; i < m; ++i)
        out.v += static_cast<double>(pick[static_cast<size_t>(i)]) * rows.row(i).transpose();
    out.norm = out.v.norm();
    return out;
}

IMat identity_imat(Eigen::Index m) {
    IMat id = IMat::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) id(i, i) = 1;
    return id;
}

struct ExtGcd {
    long long g, s, t;  // s*a + t*b = g
};

ExtGcd ext_gcd(long long a, long long b) {
    long long s0 = 1, t0 = 0, s1 = 0, t1 = 1;
    while (b != 0) {
        const long long q = a / b;
        long long tmp = a - q * b;
        a = b;
        b = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (a < 0) return {-a, -s0, -t0};
    return {a, s0, t0};
}

// Unimodular matrix whose last row is the primitive vector c.
IMat unimodular_completion(const std::vector<long long>& c) {
    const Eigen::Index m = static_cast<Eigen::Index>(c.size());
    std::vector<long long> work(c);
    // Elementary 2-column gcd steps give V with c * V = e_m; then U = V^-1
    // has c as its last row. Each step stores (i, vb, s, ua, t).
    std::vector<std::array<long long, 5>> ops;
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        const long long u = work[static_cast<size_t>(i)];
        const long long v = work[static_cast<size_t>(m - 1)];
        if (u == 0) continue;
        const ExtGcd eg = ext_gcd(u, v);
        const long long ua = u / eg.g, vb = v / eg.g;
        // Column op on (i, m-1): [u, v] * [[vb, s], [-ua, t]] = [0, g].
        ops.push_back({i, vb, eg.s, ua, eg.t});
        work[static_cast<size_t>(i)] = 0;
        work[static_cast<size_t>(m - 1)] = eg.g;
    }
    const long long g_final = work[static_cast<size_t>(m - 1)];
    if (g_final != 1 && g_final != -1)
        throw internal_error("unimodular_completion: coefficient vector is not primitive");

    // V = E_1 * ... * E_k * N, so U = N^-1 * E_k^-1 * ... * E_1^-1:
    // left-multiply the inverses in forward order, sign fix last.
    IMat u_mat = identity_imat(m);
    for (const auto& op : ops) {
        const Eigen::Index i = static_cast<Eigen::Index>(op[0]);
        const long long vb = op[1], s = op[2], ua = op[3], t = op[4];
        // E^-1 = [[t, -s], [ua, vb]] acting on rows (i, m-1).
        const auto row_i = u_mat.row(i).eval();
        const auto row_l = u_mat.row(m - 1).eval();
        u_mat.row(i) = t * row_i - s * row_l;
        u_mat.row(m - 1) = ua * row_i + vb * row_l;
    }
    if (g_final == -1) u_mat.row(m - 1) *= -1;
    return u_mat;
}

long long nearest_int_ties_to_zero(double mu) {
    long long q = std::llround(mu);
    const double r1 = std::abs(mu - static_cast<double>(q));
    const long long alt = (mu > static_cast<double>(q)) ? q + 1 : q - 1;
    const double r2 = std::abs(mu - static_cast<double>(alt));
    if (r2 < r1 || (r2 == r1 && std::llabs(alt) < std::llabs(q))) return alt;
    return q;
}

// Recursive reduction; rows is m x n with independent rows.
void reduce_rec(const RMat& rows, RMat& reduced, IMat& u, const Tolerances& tol) {
    const Eigen::Index m = rows.rows();
    if (m == 1) {
        reduced = rows;
        u = identity_imat(1);
        return;
    }

    const ShortestVectorResult sv = shortest_impl(rows, 1.5, tol);
    IMat u1 = unimodular_completion(sv.coeffs);
    RMat basis1 = RMat::Zero(m, rows.cols());
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            basis1.row(i) += static_cast<double>(u1(i, j)) * rows.row(j);
    const RVec w = basis1.row(m - 1).transpose();
    const double w2 = w.squaredNorm();

    // Orthonormal basis of the orthogonal complement of w inside the row span.
    RMat span(rows.cols(), m);
    span.col(0) = w;
    for (Eigen::Index i = 0; i + 1 < m; ++i) span.col(i + 1) = basis1.row(i).transpose();
    const Eigen::HouseholderQR<RMat> qr(span);
    RMat q = qr.householderQ();
    const RMat perp = q.middleCols(1, m - 1);  // rows.cols() x (m-1)

    const RMat proj = basis1.topRows(m - 1) * perp;  // (m-1) x (m-1)
    RMat red_proj;
    IMat u2;
    reduce_rec(proj, red_proj, u2, tol);

    RMat lifted = RMat::Zero(m - 1, rows.cols());
    for (Eigen::Index i = 0; i + 1 < m; ++i)
        for (Eigen::Index j = 0; j + 1 < m; ++j)
            lifted.row(i) += static_cast<double>(u2(i, j)) * basis1.row(j);

    IMat u_full = identity_imat(m);
    u_full.topLeftCorner(m - 1, m - 1) = u2;
    u = u_full * u1;

    // Minimal-norm lift in each coset v + Z w.
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        const double mu = lifted.row(i).dot(w) / w2;
        const long long q_i = nearest_int_ties_to_zero(mu);
        if (q_i != 0) {
            lifted.row(i) -= static_cast<double>(q_i) * w.transpose();
            u.row(i) -= q_i * u.row(m - 1);
        }
    }

    reduced = RMat::Zero(m, rows.cols());
    reduced.topRows(m - 1) = lifted;
    reduced.row(m - 1) = w.transpose();
}

}  // namespace

void validate_lattice(const LatticeBasis& basis, const Tolerances& tol) {
    require(basis.rows.rows() >= 1, "LatticeBasis: empty basis");
    require(basis.rows.rows() == basis.rows.cols(), "LatticeBasis: expected d row vectors in R^d");
    require(basis.rows.allFinite(), "LatticeBasis: non-finite entries");
    if (basis.covolume() <= tol.singularity)
        throw validation_error("LatticeBasis: rows are dependent (zero covolume)");
}

ShortestVectorResult shortest_vector(const LatticeBasis& basis, double radius_multiplier,
                                     const Tolerances& tol) {
    validate_lattice(basis, tol);
    return shortest_impl(basis.rows, radius_multiplier, tol);
}

ReducedBasis reduce_basis(const LatticeBasis& basis, const Tolerances& tol) {
    validate_lattice(basis, tol);
    require(basis.rows.rows() <= kMaxDim,
            "reduce_basis: dimensions above 6 are unsupported (enumeration cost)");

    ReducedBasis out;
    reduce_rec(basis.rows, out.reduced.rows, out.transform, tol);

    // Canonical orientation: positive determinant (negating a row keeps all
    // reduction conditions intact).
    if (out.reduced.rows.determinant() < 0.0) {
        out.reduced.rows.row(0) *= -1.0;
        out.transform.row(0) *= -1;
    }
    return out;
}

double mahler_margin(const std::vector<LatticeBasis>& family, const Tolerances& tol) {
    require(!family.empty(), "mahler_margin: empty family");
    double margin = std::numeric_limits<double>::infinity();
    for (const LatticeBasis& basis : family) {
        validate_lattice(basis, tol);
        if (std::abs(basis.covolume() - 1.0) > 1e-9)
            throw validation_error("mahler_margin: family member is not unimodular");
        margin = std::min(margin, shortest_vector(basis, 1.5, tol).norm);
    }
    return margin;
}

}  // namespace liekit
