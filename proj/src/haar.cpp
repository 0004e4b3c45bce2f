#include "liekit/haar.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace liekit {
namespace {

// NA coordinates for SL_d: n_ij (i < j, row-major) then b_i = a_i / a_{i-1}.
struct NACoords {
    int d;
    int n_count() const { return d * (d - 1) / 2; }
    int dim() const { return n_count() + (d - 1); }

    RMat to_matrix(const RVec& x) const {
        RMat n = RMat::Identity(d, d);
        int idx = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) n(i, j) = x(idx++);
        // a_i = a_1 * prod_{k<=i} b_k with prod a_i = 1.
        RVec a(d);
        double log_a1 = 0.0;
        for (int k = 2; k <= d; ++k)
            log_a1 -= (d - k + 1) * std::log(x(n_count() + k - 2));
        log_a1 /= d;
        a(0) = std::exp(log_a1);
        for (int i = 1; i < d; ++i) a(i) = a(i - 1) * x(n_count() + i - 1);
        return n * a.asDiagonal();
    }

    RVec from_matrix(const RMat& t) const {
        RVec x(dim());
        int idx = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) x(idx++) = t(i, j) / t(j, j);
        for (int i = 1; i < d; ++i) x(n_count() + i - 1) = t(i, i) / t(i - 1, i - 1);
        return x;
    }
};

}  // namespace

HaarExponents fit_haar_exponents(int d, std::uint64_t seed, const Tolerances&) {
    require(d >= 2 && d <= 4, "fit_haar_exponents: d must be in 2..4");
    const NACoords coords{d};
    const int p = coords.dim();
    const int unknowns = d - 1;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif_n(-0.8, 0.8);
    std::uniform_real_distribution<double> unif_b(0.6, 1.7);

    const auto random_point = [&]() {
        RVec x(p);
        for (int i = 0; i < coords.n_count(); ++i) x(i) = unif_n(rng);
        for (int i = 0; i < unknowns; ++i) x(coords.n_count() + i) = unif_b(rng);
        return x;
    };

    const int samples = 6 * unknowns;
    RMat lhs(samples, unknowns);
    RVec rhs(samples);
    const double h = 1e-5;
    for (int sample = 0; sample < samples; ++sample) {
        const RVec base = random_point();
        const RMat g0 = coords.to_matrix(random_point());
        const auto phi = [&](const RVec& x) { return coords.from_matrix(g0 * coords.to_matrix(x)); };

        RMat jac(p, p);
        for (int c = 0; c < p; ++c) {
            RVec xp = base, xm = base;
            xp(c) += h;
            xm(c) -= h;
            jac.col(c) = (phi(xp) - phi(xm)) / (2.0 * h);
        }
        const RVec image = phi(base);
        // Invariance balance: sum_k r_k (log b_k - log b'_k) = log |det J|.
        for (int k = 0; k < unknowns; ++k)
            lhs(sample, k) =
                std::log(base(coords.n_count() + k)) - std::log(image(coords.n_count() + k));
        rhs(sample) = std::log(std::abs(jac.determinant()));
    }

    const RVec fit = lhs.colPivHouseholderQr().solve(rhs);
    HaarExponents out;
    double residual = 0.0;
    for (int k = 0; k < unknowns; ++k) {
        const long rounded = std::lround(fit(k));
        residual = std::max(residual, std::abs(fit(k) - static_cast<double>(rounded)));
        out.exponents.push_back(rounded);
    }
    out.fit_residual = residual;
    if (residual > 1e-6)
        throw accuracy_error("fit_haar_exponents: non-integral fit, residual " +
                             std::to_string(residual));
    return out;
}

CoordChart sl2_nak_chart(long r2) {
    CoordChart chart;
    chart.dim = 3;
    chart.point = [](const RVec& x) {
        RMat n(2, 2), a(2, 2), k(2, 2);
        n << 1.0, x(0), 0.0, 1.0;
        const double sb = std::sqrt(x(1));
        a << 1.0 / sb, 0.0, 0.0, sb;
        k << std::cos(x(2)), std::sin(x(2)), -std::sin(x(2)), std::cos(x(2));
        return RMat(n * a * k);
    };
    chart.density = [r2](const RVec& x) {
        return std::pow(x(1), static_cast<double>(r2)) / (2.0 * std::numbers::pi);
    };
    chart.lo = RVec(3);
    chart.hi = RVec(3);
    chart.lo << -2.0, 0.3, -1.2;
    chart.hi << 2.0, 3.0, 1.2;
    return chart;
}

CoordChart sl2_abc_chart() {
    CoordChart chart;
    chart.dim = 3;
    chart.point = [](const RVec& x) {
        RMat g(2, 2);
        g << x(0), x(1), x(2), (1.0 + x(1) * x(2)) / x(0);
        return g;
    };
    chart.density = [](const RVec& x) { return 1.0 / std::abs(x(0)); };
    chart.lo = RVec(3);
    chart.hi = RVec(3);
    chart.lo << 0.35, -1.6, -1.6;
    chart.hi << 3.2, 1.6, 1.6;
    return chart;
}

std::function<double(const RMat&)> matrix_bump(const RMat& center, double radius) {
    return [center, radius](const RMat& g) {
        const double s = (g - center).squaredNorm() / (radius * radius);
        if (s >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - s)) * std::numbers::e;  // normalized to 1 at center
    };
}

namespace {

double midpoint_integral(const CoordChart& chart, const std::function<double(const RMat&)>& f,
                         const RMat* g0, int res) {
    const int dim = chart.dim;
    std::vector<int> idx(static_cast<size_t>(dim), 0);
    RVec x(dim);
    double cell = 1.0;
    for (int k = 0; k < dim; ++k) cell *= (chart.hi(k) - chart.lo(k)) / res;

    double total = 0.0;
    while (true) {
        for (int k = 0; k < dim; ++k) {
            const double step = (chart.hi(k) - chart.lo(k)) / res;
            x(k) = chart.lo(k) + (idx[static_cast<size_t>(k)] + 0.5) * step;
        }
        const RMat g = chart.point(x);
        const double fx = g0 ? f((*g0) * g) : f(g);
        if (fx != 0.0) total += fx * chart.density(x);
        int k = 0;
        while (k < dim && ++idx[static_cast<size_t>(k)] == res) idx[static_cast<size_t>(k++)] = 0;
        if (k == dim) break;
    }
    return total * cell;
}

// Largest |f * density| over the boundary faces of the patch box.
double boundary_magnitude(const CoordChart& chart, const std::function<double(const RMat&)>& f,
                          const RMat* g0, int res) {
    const int dim = chart.dim;
    double worst = 0.0;
    for (int face_dim = 0; face_dim < dim; ++face_dim) {
        for (int side = 0; side < 2; ++side) {
            std::vector<int> idx(static_cast<size_t>(dim), 0);
            RVec x(dim);
            while (true) {
                for (int k = 0; k < dim; ++k) {
                    const double step = (chart.hi(k) - chart.lo(k)) / res;
                    x(k) = chart.lo(k) + (idx[static_cast<size_t>(k)] + 0.5) * step;
                }
                x(face_dim) = side ? chart.hi(face_dim) : chart.lo(face_dim);
                const RMat g = chart.point(x);
                const double fx = g0 ? f((*g0) * g) : f(g);
                worst = std::max(worst, std::abs(fx * chart.density(x)));
                int k = 0;
                while (k < dim && ++idx[static_cast<size_t>(k)] == res)
                    idx[static_cast<size_t>(k++)] = 0;
                if (k == dim) break;
            }
        }
    }
    return worst;
}

}  // namespace

InvarianceCheck haar_invariance_check(const CoordChart& chart,
                                      const std::function<double(const RMat&)>& f,
                                      const RMat& g0, int resolution, const Tolerances&) {
    require(resolution >= 4, "haar_invariance_check: resolution must be at least 4");
    require_square(g0, "haar_invariance_check: g0");

    const double rhs_peak = boundary_magnitude(chart, f, nullptr, 16);
    const double lhs_peak = boundary_magnitude(chart, f, &g0, 16);
    const double rhs_c = midpoint_integral(chart, f, nullptr, resolution / 2);
    const double rhs_f = midpoint_integral(chart, f, nullptr, resolution);
    const double lhs_c = midpoint_integral(chart, f, &g0, resolution / 2);
    const double lhs_f = midpoint_integral(chart, f, &g0, resolution);

    const double scale = std::max({std::abs(rhs_f), std::abs(lhs_f), 1e-12});
    if (std::max(rhs_peak, lhs_peak) > 1e-9 * scale)
        throw out_of_domain_error(
            "haar_invariance_check: support escapes the coordinate patch");
    // A translate that leaves the patch entirely never touches the boundary;
    // it shows up as one side losing all its mass instead.
    if (std::abs(rhs_f) > 1e-12 && std::abs(lhs_f) < 1e-6 * std::abs(rhs_f))
        throw out_of_domain_error(
            "haar_invariance_check: translated support left the coordinate patch");

    InvarianceCheck out;
    out.lhs = lhs_f;
    out.rhs = rhs_f;
    out.quad_error = std::max(std::abs(lhs_f - lhs_c), std::abs(rhs_f - rhs_c)) + 1e-13 * scale;
    return out;
}

SiegelVolume siegel_volume(const SiegelParams& params, int d, int levels, const Tolerances& tol) {
    require(d == 2 || d == 3, "siegel_volume: d must be 2 or 3");
    require(params.s >= 0.5 && params.t >= 2.0 / std::sqrt(3.0) - 1e-12,
            "siegel_volume: parameters below the covering regime");
    require(levels >= 2 && levels <= 16, "siegel_volume: levels must be in 2..16");

    const HaarExponents fitted = fit_haar_exponents(d, 20110711, tol);
    SiegelVolume out;
    out.exponents = fitted.exponents;

    const int n_count = d * (d - 1) / 2;
    const double n_factor = std::pow(2.0 * params.s, n_count);

    // One b-integral per level: geometric grid on (cutoff, t], trapezoid per
    // cell; both the cell count per octave and the cutoff refine with level.
    const auto b_integral = [&](long r, int level, double& cutoff) {
        const int per_octave = 8 << level;
        cutoff = params.t / std::pow(2.0, 8 + level);
        const int octaves = 8 + level;
        double total = 0.0;
        double hi = params.t;
        for (int oct = 0; oct < octaves; ++oct) {
            const double lo = hi / 2.0;
            for (int cell = 0; cell < per_octave; ++cell) {
                const double x1 = hi - (hi - lo) * cell / per_octave;
                const double x0 = hi - (hi - lo) * (cell + 1) / per_octave;
                total += 0.5 * (std::pow(x0, static_cast<double>(r)) +
                                std::pow(x1, static_cast<double>(r))) * (x1 - x0);
            }
            hi = lo;
        }
        return total;
    };

    double prev = 0.0;
    for (int level = 0; level < levels; ++level) {
        double value = n_factor;
        double cutoff = 0.0;
        for (const long r : fitted.exponents) value *= b_integral(r, level, cutoff);
        out.levels.push_back(value);
        out.cutoff = cutoff;
        if (level >= 2) {
            const double d_new = std::abs(value - prev);
            const double d_old = std::abs(out.levels[out.levels.size() - 2] -
                                          out.levels[out.levels.size() - 3]);
            if (d_new > d_old + 1e-12 * std::abs(value))
                throw accuracy_error("siegel_volume: truncation sequence is not Cauchy");
        }
        prev = value;
    }
    out.value = out.levels.back();

    // Power-law tail below the cutoff, one factor per coordinate.
    double tail = 0.0;
    for (size_t i = 0; i < fitted.exponents.size(); ++i) {
        const long r = fitted.exponents[i];
        double others = n_factor;
        for (size_t j = 0; j < fitted.exponents.size(); ++j) {
            if (j == i) continue;
            others *= std::pow(params.t, static_cast<double>(fitted.exponents[j] + 1)) /
                      (fitted.exponents[j] + 1);
        }
        tail += others * std::pow(out.cutoff, static_cast<double>(r + 1)) / (r + 1);
    }
    out.tail_estimate = tail;
    return out;
}

}  // namespace liekit
