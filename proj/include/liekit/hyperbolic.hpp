#pragma once

#include <array>
#include <vector>

#include "liekit/common.hpp"

namespace liekit {

struct resource_error : validation_error {
    explicit resource_error(const std::string& what) : validation_error(what) {}
};

/// Point of the upper half-plane (y > 0).
struct HPoint {
    double x = 0.0;
    double y = 1.0;

    Complex z() const { return {x, y}; }
};

HPoint make_hpoint(double x, double y);

/// Isometry of the half-plane: optionally the reflection z -> -conj(z),
/// followed by the Moebius action of an SL2(R) matrix.
struct Motion {
    Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
    bool reflect_first = false;
};

Motion identity_motion();
Motion motion_from_matrix(const Eigen::Matrix2d& m);
/// apply(compose(a, b), z) == apply(a, apply(b, z)).
Motion compose(const Motion& a, const Motion& b);
Motion motion_inverse(const Motion& a);
HPoint moebius_apply(const Motion& g, const HPoint& z);

/// Geodesic of the half-plane: a vertical line or a semicircle centered on
/// the real axis.
struct Geodesic {
    enum class Kind { Vertical, Semicircle };
    Kind kind = Kind::Vertical;
    double c = 0.0;  // x-position (vertical) or center (semicircle)
    double r = 0.0;  // radius (semicircle only)
};

Geodesic geodesic_through(const HPoint& z1, const HPoint& z2);
bool on_geodesic(const Geodesic& l, const HPoint& z, double tol = 1e-9);

/// Reflection across a geodesic, as a Motion (reflect_first is set).
Motion reflection_motion(const Geodesic& l);
HPoint reflect(const Geodesic& l, const HPoint& z);

/// Arc length of the geodesic segment between the two points, by adaptive
/// quadrature of the hyperbolic length functional along the connecting
/// geodesic.
double hyperbolic_distance(const HPoint& z1, const HPoint& z2);

struct TriangleGroupSpec {
    int n1 = 2;
    int n2 = 3;
    int n3 = 7;
};

void validate_spec(const TriangleGroupSpec& spec);

struct BaseTriangle {
    std::array<HPoint, 3> vertices;  // angles pi/n1, pi/n2, pi/n3
    std::array<Geodesic, 3> sides;   // sides[i] joins vertices i and (i+1)%3
};

/// Canonical geodesic triangle with the prescribed angles: first vertex at i,
/// first side along the y-axis, third vertex by 1-D root finding on the
/// remaining angle.
BaseTriangle build_base_triangle(const TriangleGroupSpec& spec);

/// Interior angle of the triangle at vertex k, re-measured from tangents.
double measure_angle(const BaseTriangle& tri, int k);

struct Tile {
    std::vector<int> word;  // reflection indices 1|2|3
    Motion motion;
    std::array<HPoint, 3> vertices;
};

/// Closure of words of length <= depth in the three side reflections,
/// deduplicated by motion equality in PSL2 (matrices identified up to sign).
/// Tiles are ordered by (word length, lexicographic word).
std::vector<Tile> generate_tiling(const TriangleGroupSpec& spec, int depth,
                                  std::size_t max_tiles = 50000);

/// The rotations R1R2, R2R3, R3R1 as SL2(R) matrices; their orders around
/// the shared vertices are n2, n3, n1 respectively.
std::vector<Eigen::Matrix2d> even_subgroup_generators(const TriangleGroupSpec& spec);

/// Words of length <= max_word_length in the rotation generators and their
/// inverses, deduplicated up to sign.
std::vector<Eigen::Matrix2d> even_subgroup_elements(const TriangleGroupSpec& spec,
                                                    int max_word_length,
                                                    std::size_t max_elements = 200000);

/// Even elements of the reflection group with reflection word length
/// <= max_word_length (the natural triangle-group metric), up to sign.
std::vector<Eigen::Matrix2d> even_elements_by_reflection_length(const TriangleGroupSpec& spec,
                                                                int max_word_length,
                                                                std::size_t max_elements = 200000);

/// Number of elements whose entries all lie in [-box_radius, box_radius].
long discreteness_check(const std::vector<Eigen::Matrix2d>& elements, double box_radius);

/// Conformal map of the half-plane onto the unit disk, z -> (z - i)/(z + i);
/// used by the SVG rendering.
Complex to_disk(const HPoint& z);

/// SVG 1.1 document for a tiling; tiles are filled by word-length parity.
std::string tiling_svg(const std::vector<Tile>& tiles, int samples_per_edge = 24);

}  // namespace liekit
