#include "liekit/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

namespace liekit {
namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2d require_sl2(const Eigen::Matrix2d& m, const char* who) {
    if (!m.allFinite()) throw validation_error(std::string(who) + ": non-finite entries");
    if (std::abs(m.determinant() - 1.0) > 1e-12)
        throw validation_error(std::string(who) + ": determinant must be 1");
    return m;
}

// R0 T_g = T_g' R0 with g' = diag(1,-1) g diag(1,-1).
Eigen::Matrix2d conj_flip(const Eigen::Matrix2d& g) {
    Eigen::Matrix2d out = g;
    out(0, 1) = -g(0, 1);
    out(1, 0) = -g(1, 0);
    return out;
}

}  // namespace

HPoint make_hpoint(double x, double y) {
    if (!(y > 1e-14)) throw validation_error("HPoint: y must be strictly positive");
    if (!std::isfinite(x) || !std::isfinite(y)) throw validation_error("HPoint: non-finite");
    return {x, y};
}

Motion identity_motion() { return {}; }

Motion motion_from_matrix(const Eigen::Matrix2d& m) {
    return {require_sl2(m, "motion_from_matrix"), false};
}

Motion compose(const Motion& a, const Motion& b) {
    Motion out;
    out.m = a.m * (a.reflect_first ? conj_flip(b.m) : b.m);
    out.reflect_first = a.reflect_first != b.reflect_first;
    return out;
}

Motion motion_inverse(const Motion& a) {
    Eigen::Matrix2d inv;
    inv << a.m(1, 1), -a.m(0, 1), -a.m(1, 0), a.m(0, 0);
    if (a.reflect_first) inv = conj_flip(inv);
    return {inv, a.reflect_first};
}

HPoint moebius_apply(const Motion& g, const HPoint& z) {
    Complex w = z.z();
    if (g.reflect_first) w = -std::conj(w);
    const Complex num = g.m(0, 0) * w + g.m(0, 1);
    const Complex den = g.m(1, 0) * w + g.m(1, 1);
    // den cannot vanish for Im w > 0 with a real matrix.
    const Complex image = num / den;
    return make_hpoint(image.real(), image.imag());
}

Geodesic geodesic_through(const HPoint& z1, const HPoint& z2) {
    const double dx = z2.x - z1.x;
    if (std::abs(dx) <= 1e-12 && std::abs(z2.y - z1.y) <= 1e-15)
        throw validation_error("geodesic_through: coincident points");
    Geodesic out;
    if (std::abs(dx) <= 1e-12) {
        out.kind = Geodesic::Kind::Vertical;
        out.c = z1.x;
        return out;
    }
    out.kind = Geodesic::Kind::Semicircle;
    out.c = (std::norm(z2.z()) - std::norm(z1.z())) / (2.0 * dx);
    out.r = std::abs(z1.z() - out.c);
    return out;
}

bool on_geodesic(const Geodesic& l, const HPoint& z, double tol) {
    if (l.kind == Geodesic::Kind::Vertical) return std::abs(z.x - l.c) <= tol;
    return std::abs(std::abs(z.z() - l.c) - l.r) <= tol;
}

Motion reflection_motion(const Geodesic& l) {
    Motion out;
    out.reflect_first = true;
    if (l.kind == Geodesic::Kind::Vertical) {
        // z -> 2c - conj(z)
        out.m << 1.0, 2.0 * l.c, 0.0, 1.0;
        return out;
    }
    // Inversion z -> c + r^2/(conj(z) - c), written as a Moebius map of -conj(z).
    Eigen::Matrix2d m;
    m << l.c / l.r, (l.c * l.c - l.r * l.r) / l.r, 1.0 / l.r, l.c / l.r;
    out.m = m;
    return out;
}

HPoint reflect(const Geodesic& l, const HPoint& z) {
    return moebius_apply(reflection_motion(l), z);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double hyperbolic_distance(const HPoint& z1, const HPoint& z2) {
    if (std::abs(z1.x - z2.x) <= 1e-14 && std::abs(z1.y - z2.y) <= 1e-14) return 0.0;
    const Geodesic l = geodesic_through(z1, z2);
    if (l.kind == Geodesic::Kind::Vertical) {
        const double y1 = z1.y, dy = z2.y - z1.y;
        const auto integrand = [&](double t) { return std::abs(dy) / (y1 + t * dy); };
        return integrate(integrand, 0.0, 1.0, 1e-13);
    }
    const double th1 = std::atan2(z1.y, z1.x - l.c);
    const double th2 = std::atan2(z2.y, z2.x - l.c);
    const auto integrand = [&](double th) { return 1.0 / std::sin(th); };
    return std::abs(integrate(integrand, std::min(th1, th2), std::max(th1, th2), 1e-13));
}

void validate_spec(const TriangleGroupSpec& spec) {
    require(spec.n1 >= 2 && spec.n2 >= 2 && spec.n3 >= 2,
            "TriangleGroupSpec: indices must be >= 2");
    const double sum = 1.0 / spec.n1 + 1.0 / spec.n2 + 1.0 / spec.n3;
    if (!(sum < 1.0))
        throw validation_error("TriangleGroupSpec: 1/n1 + 1/n2 + 1/n3 must be < 1");
}

namespace {

struct Ray {
    HPoint origin;
    Eigen::Vector2d dir;  // unit Euclidean tangent
};

Geodesic geodesic_from_ray(const Ray& ray) {
    Geodesic out;
    if (std::abs(ray.dir(0)) < 1e-14) {
        out.kind = Geodesic::Kind::Vertical;
        out.c = ray.origin.x;
        return out;
    }
    out.kind = Geodesic::Kind::Semicircle;
    out.c = ray.origin.x + ray.origin.y * ray.dir(1) / ray.dir(0);
    out.r = std::hypot(ray.origin.x - out.c, ray.origin.y);
    return out;
}

std::optional<HPoint> intersect(const Geodesic& a, const Geodesic& b) {
    double x, y2;
    if (a.kind == Geodesic::Kind::Vertical && b.kind == Geodesic::Kind::Vertical)
        return std::nullopt;
    if (a.kind == Geodesic::Kind::Vertical) {
        x = a.c;
        y2 = b.r * b.r - (x - b.c) * (x - b.c);
    } else if (b.kind == Geodesic::Kind::Vertical) {
        x = b.c;
        y2 = a.r * a.r - (x - a.c) * (x - a.c);
    } else {
        if (std::abs(a.c - b.c) < 1e-14) return std::nullopt;
        x = 0.5 * (a.c + b.c) + (a.r * a.r - b.r * b.r) / (2.0 * (b.c - a.c));
        y2 = a.r * a.r - (x - a.c) * (x - a.c);
    }
    if (y2 <= 1e-14) return std::nullopt;
    return HPoint{x, std::sqrt(y2)};
}

// Unit tangent of the geodesic at `at`, oriented toward `toward`.
Eigen::Vector2d tangent_toward(const Geodesic& l, const HPoint& at, const HPoint& toward) {
    if (l.kind == Geodesic::Kind::Vertical)
        return {0.0, toward.y > at.y ? 1.0 : -1.0};
    const double th_at = std::atan2(at.y, at.x - l.c);
    const double th_to = std::atan2(toward.y, toward.x - l.c);
    const double sign = th_to > th_at ? 1.0 : -1.0;
    return {-sign * std::sin(th_at), sign * std::cos(th_at)};
}

double angle_between(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    return std::acos(std::clamp(u.dot(v), -1.0, 1.0));
}

}  // namespace

BaseTriangle build_base_triangle(const TriangleGroupSpec& spec) {
    validate_spec(spec);
    const double alpha = kPi / spec.n1;
    const double beta = kPi / spec.n2;
    const double gamma = kPi / spec.n3;

    const HPoint v0 = make_hpoint(0.0, 1.0);
    const auto v1_at = [&](double s) { return make_hpoint(0.0, std::exp(s)); };

    // Rays into the x > 0 half, making the prescribed angles with the y-axis.
    const Eigen::Vector2d dir0(std::sin(alpha), std::cos(alpha));
    const auto third_angle = [&](double s) -> double {
        const HPoint v1 = v1_at(s);
        const Eigen::Vector2d dir1(std::sin(beta), -std::cos(beta));
        const Geodesic g0 = geodesic_from_ray({v0, dir0});
        const Geodesic g1 = geodesic_from_ray({v1, dir1});
        const auto meet = intersect(g0, g1);
        if (!meet) return 0.0;  // rays diverged: the angle has shrunk to zero
        const Eigen::Vector2d t0 = tangent_toward(g0, *meet, v0);
        const Eigen::Vector2d t1 = tangent_toward(g1, *meet, v1);
        return angle_between(t0, t1);
    };

    // gamma(s) decreases from pi - alpha - beta (> target) toward zero.
    double lo = 1e-6, hi = 1.0;
    while (third_angle(hi) > gamma) {
        hi *= 2.0;
        if (hi > 64.0) throw numeric_error("build_base_triangle: root bracketing failed");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (third_angle(mid) > gamma)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    const double s = 0.5 * (lo + hi);

    const HPoint v1 = v1_at(s);
    const Geodesic g0 = geodesic_from_ray({v0, dir0});
    const Geodesic g1 = geodesic_from_ray({v1, {std::sin(beta), -std::cos(beta)}});
    const auto meet = intersect(g0, g1);
    if (!meet) throw numeric_error("build_base_triangle: vertex intersection lost");

    BaseTriangle tri;
    tri.vertices = {v0, v1, *meet};
    tri.sides[0] = Geodesic{Geodesic::Kind::Vertical, 0.0, 0.0};
    tri.sides[1] = g1;
    tri.sides[2] = g0;

    for (int k = 0; k < 3; ++k) {
        const double want = k == 0 ? alpha : (k == 1 ? beta : gamma);
        if (std::abs(measure_angle(tri, k) - want) > 1e-9)
            throw numeric_error("build_base_triangle: angle verification failed at vertex " +
                                std::to_string(k));
    }
    return tri;
}

double measure_angle(const BaseTriangle& tri, int k) {
    require(k >= 0 && k < 3, "measure_angle: vertex index");
    const HPoint& v = tri.vertices[static_cast<size_t>(k)];
    const HPoint& prev = tri.vertices[static_cast<size_t>((k + 2) % 3)];
    const HPoint& next = tri.vertices[static_cast<size_t>((k + 1) % 3)];
    const Geodesic& side_prev = tri.sides[static_cast<size_t>((k + 2) % 3)];  // joins prev, v
    const Geodesic& side_next = tri.sides[static_cast<size_t>(k)];            // joins v, next
    const Eigen::Vector2d t1 = tangent_toward(side_prev, v, prev);
    const Eigen::Vector2d t2 = tangent_toward(side_next, v, next);
    return angle_between(t1, t2);
}

namespace {

// Canonical +/- representative: first significant entry positive.
Eigen::Matrix2d canonical_sign(const Eigen::Matrix2d& m) {
    const double maxabs = m.cwiseAbs().maxCoeff();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (std::abs(m(i, j)) >= 0.5 * maxabs) {
                return m(i, j) < 0.0 ? Eigen::Matrix2d(-m) : m;
            }
        }
    return m;
}

struct MotionSet {
    std::vector<std::pair<bool, Eigen::Matrix2d>> seen;

    bool insert(const Motion& mo) {
        const Eigen::Matrix2d canon = canonical_sign(mo.m);
        for (const auto& [flag, m] : seen)
            if (flag == mo.reflect_first && (m - canon).cwiseAbs().maxCoeff() <= 1e-9)
                return false;
        seen.emplace_back(mo.reflect_first, canon);
        return true;
    }
};

}  // namespace

std::vector<Tile> generate_tiling(const TriangleGroupSpec& spec, int depth,
                                  std::size_t max_tiles) {
    require(depth >= 0, "generate_tiling: depth must be >= 0");
    const BaseTriangle base = build_base_triangle(spec);
    std::array<Motion, 3> refl;
    for (int i = 0; i < 3; ++i) refl[static_cast<size_t>(i)] = reflection_motion(base.sides[static_cast<size_t>(i)]);

    std::vector<Tile> tiles;
    MotionSet seen;
    std::deque<Tile> frontier;

    Tile root;
    root.motion = identity_motion();
    root.vertices = base.vertices;
    seen.insert(root.motion);
    tiles.push_back(root);
    frontier.push_back(root);

    while (!frontier.empty()) {
        const Tile tile = frontier.front();
        frontier.pop_front();
        if (static_cast<int>(tile.word.size()) >= depth) continue;
        for (int i = 0; i < 3; ++i) {
            Tile child;
            child.word = tile.word;
            child.word.push_back(i + 1);
            child.motion = compose(tile.motion, refl[static_cast<size_t>(i)]);
            if (!seen.insert(child.motion)) continue;
            for (int k = 0; k < 3; ++k)
                child.vertices[static_cast<size_t>(k)] =
                    moebius_apply(child.motion, base.vertices[static_cast<size_t>(k)]);
            if (tiles.size() >= max_tiles)
                throw resource_error("generate_tiling: tile budget exceeded");
            tiles.push_back(child);
            frontier.push_back(child);
        }
    }

    std::sort(tiles.begin(), tiles.end(), [](const Tile& a, const Tile& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });
    return tiles;
}

std::vector<Eigen::Matrix2d> even_subgroup_generators(const TriangleGroupSpec& spec) {
    const BaseTriangle base = build_base_triangle(spec);
    std::array<Motion, 3> refl;
    for (int i = 0; i < 3; ++i) refl[static_cast<size_t>(i)] = reflection_motion(base.sides[static_cast<size_t>(i)]);
    std::vector<Eigen::Matrix2d> out;
    for (int i = 0; i < 3; ++i) {
        const Motion rot = compose(refl[static_cast<size_t>(i)], refl[static_cast<size_t>((i + 1) % 3)]);
        if (rot.reflect_first)
            throw internal_error("even_subgroup_generators: reflection flags did not cancel");
        out.push_back(rot.m);
    }
    return out;
}

std::vector<Eigen::Matrix2d> even_subgroup_elements(const TriangleGroupSpec& spec,
                                                    int max_word_length,
                                                    std::size_t max_elements) {
    require(max_word_length >= 0, "even_subgroup_elements: negative word length");
    const std::vector<Eigen::Matrix2d> gens = even_subgroup_generators(spec);
    std::vector<Eigen::Matrix2d> step;
    for (const auto& g : gens) {
        step.push_back(g);
        Eigen::Matrix2d inv;
        inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
        step.push_back(inv);
    }

    MotionSet seen;
    std::vector<Eigen::Matrix2d> out;
    std::deque<std::pair<int, Eigen::Matrix2d>> frontier;
    seen.insert(identity_motion());
    out.push_back(Eigen::Matrix2d::Identity());
    frontier.emplace_back(0, Eigen::Matrix2d::Identity());

    while (!frontier.empty()) {
        const auto [len, m] = frontier.front();
        frontier.pop_front();
        if (len >= max_word_length) continue;
        for (const auto& g : step) {
            const Eigen::Matrix2d next = m * g;
            if (!seen.insert({next, false})) continue;
            if (out.size() >= max_elements)
                throw resource_error("even_subgroup_elements: element budget exceeded");
            out.push_back(next);
            frontier.emplace_back(len + 1, next);
        }
    }
    return out;
}

std::vector<Eigen::Matrix2d> even_elements_by_reflection_length(const TriangleGroupSpec& spec,
                                                                int max_word_length,
                                                                std::size_t max_elements) {
    require(max_word_length >= 0, "even_elements_by_reflection_length: negative word length");
    const BaseTriangle base = build_base_triangle(spec);
    std::array<Motion, 3> refl;
    for (int i = 0; i < 3; ++i)
        refl[static_cast<size_t>(i)] = reflection_motion(base.sides[static_cast<size_t>(i)]);

    MotionSet seen;
    std::vector<Eigen::Matrix2d> out;
    std::deque<std::pair<int, Motion>> frontier;
    seen.insert(identity_motion());
    out.push_back(Eigen::Matrix2d::Identity());
    frontier.emplace_back(0, identity_motion());

    while (!frontier.empty()) {
        const auto [len, motion] = frontier.front();
        frontier.pop_front();
        if (len >= max_word_length) continue;
        for (int i = 0; i < 3; ++i) {
            const Motion next = compose(motion, refl[static_cast<size_t>(i)]);
            if (!seen.insert(next)) continue;
            if (seen.seen.size() >= max_elements)
                throw resource_error("even_elements_by_reflection_length: element budget exceeded");
            if (!next.reflect_first) out.push_back(next.m);
            frontier.emplace_back(len + 1, next);
        }
    }
    return out;
}

long discreteness_check(const std::vector<Eigen::Matrix2d>& elements, double box_radius) {
    require(box_radius > 0.0, "discreteness_check: box radius must be positive");
    long count = 0;
    for (const auto& m : elements)
        if (m.cwiseAbs().maxCoeff() <= box_radius + 1e-12) ++count;
    return count;
}

Complex to_disk(const HPoint& z) {
    const Complex w = z.z();
    return (w - Complex(0.0, 1.0)) / (w + Complex(0.0, 1.0));
}

namespace {

// Sample the geodesic segment between two points (inclusive endpoints).
std::vector<HPoint> sample_edge(const HPoint& a, const HPoint& b, int samples) {
    std::vector<HPoint> pts;
    if (std::abs(a.x - b.x) <= 1e-13 && std::abs(a.y - b.y) <= 1e-13) {
        pts.push_back(a);
        return pts;
    }
    const Geodesic l = geodesic_through(a, b);
    for (int k = 0; k <= samples; ++k) {
        const double t = static_cast<double>(k) / samples;
        if (l.kind == Geodesic::Kind::Vertical) {
            const double y = a.y * std::pow(b.y / a.y, t);
            pts.push_back({a.x, y});
        } else {
            const double th1 = std::atan2(a.y, a.x - l.c);
            const double th2 = std::atan2(b.y, b.x - l.c);
            const double th = th1 + t * (th2 - th1);
            pts.push_back({l.c + l.r * std::cos(th), l.r * std::sin(th)});
        }
    }
    return pts;
}

}  // namespace

std::string tiling_svg(const std::vector<Tile>& tiles, int samples_per_edge) {
    require(samples_per_edge >= 1, "tiling_svg: samples_per_edge must be >= 1");
    std::ostringstream svg;
    const double size = 512.0, half = size / 2.0;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
        << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
        << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << half
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (const Tile& tile : tiles) {
        svg << "<path d=\"";
        bool first = true;
        for (int e = 0; e < 3; ++e) {
            const auto pts = sample_edge(tile.vertices[static_cast<size_t>(e)],
                                         tile.vertices[static_cast<size_t>((e + 1) % 3)],
                                         samples_per_edge);
            for (size_t k = first ? 0 : 1; k < pts.size(); ++k) {
                const Complex w = to_disk(pts[k]);
                svg << (first ? "M" : "L") << half + half * w.real() << " "
                    << half - half * w.imag() << " ";
                first = false;
            }
        }
        const bool even = tile.word.size() % 2 == 0;
        svg << "Z\" fill=\"" << (even ? "#7aa6c2" : "#e8c27a")
            << "\" stroke=\"#222\" stroke-width=\"0.5\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace liekit
