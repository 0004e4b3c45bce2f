#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liekit/dynamics.hpp"
#include "liekit/expm.hpp"
#include "liekit/haar.hpp"
#include "liekit/hyperbolic.hpp"
#include "liekit/invariant_form.hpp"
#include "liekit/iwasawa.hpp"
#include "liekit/lattice.hpp"
#include "liekit/lie_algebra.hpp"
#include "liekit/quadratic_form.hpp"
#include "liekit/quaternion.hpp"

namespace py = pybind11;
using namespace liekit;

namespace {

LieBasis basis_from_list(const std::vector<CMat>& elements, Eigen::Index d) {
    LieBasis basis;
    basis.ambient_dim = d;
    basis.elements = elements;
    return basis;
}

QuadraticForm form_from_fractions(const std::vector<std::vector<std::pair<long long, long long>>>& cells) {
    const Eigen::Index d = static_cast<Eigen::Index>(cells.size());
    std::vector<Rational> gram;
    for (const auto& row : cells) {
        if (static_cast<Eigen::Index>(row.size()) != d)
            throw validation_error("so_q_algebra: gram must be square");
        for (const auto& [num, den] : row) gram.emplace_back(num, den);
    }
    return make_quadratic_form(d, std::move(gram));
}

}  // namespace

PYBIND11_MODULE(_liekit, m) {
    m.doc() = "Matrix Lie groups, lattices, and tilings toolkit";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

    // --- dense kernel ---------------------------------------------------
    m.def("mat_exp", [](const CMat& a) { return mat_exp(a); }, py::arg("a"),
          "Matrix exponential (scaling and squaring)");
    m.def("mat_log", [](const CMat& g) { return mat_log(g); }, py::arg("g"),
          "Principal matrix logarithm (inverse scaling and squaring)");
    m.def("jordan_split", [](const CMat& g) {
        const JordanSplit js = jordan_split(g);
        return py::make_tuple(js.semisimple, js.unipotent, js.eigenvector_condition);
    }, py::arg("g"), "Multiplicative Jordan decomposition (semisimple, unipotent, cond)");
    m.def("classify_element", [](const CMat& g) { return std::string(to_string(classify_element(g))); },
          py::arg("g"));
    m.def("one_param_recover", [](const std::vector<std::pair<double, CMat>>& samples) {
        return one_param_recover(samples);
    }, py::arg("samples"), "Generator of a one-parameter group from (t, exp(tA)) samples");

    // --- Lie algebra ------------------------------------------------------
    m.def("bracket", [](const CMat& x, const CMat& y) { return bracket(x, y); });
    m.def("bch_truncated", [](const CMat& a, const CMat& b, int order) {
        const BCHResult res = bch_truncated(a, b, order);
        return py::make_tuple(res.value, res.order, res.input_scale);
    }, py::arg("a"), py::arg("b"), py::arg("order"));
    m.def("group_commutator_limit_check", [](const CMat& a, const CMat& b, long n) {
        return group_commutator_limit_check(a, b, n);
    });
    m.def("sl_constraints", &sl_constraints, py::arg("d"));
    m.def("orthogonal_constraints", &orthogonal_constraints, py::arg("d"));
    m.def("tangent_algebra", [](const std::vector<CMat>& grads, Eigen::Index d) {
        const TangentAlgebraResult res = tangent_algebra(grads, d);
        return py::make_tuple(res.basis.elements, res.dependent_constraints);
    }, py::arg("constraint_gradients"), py::arg("d"));
    m.def("closure_check", [](const std::vector<CMat>& elements, Eigen::Index d) {
        const ClosureResult res = closure_check(basis_from_list(elements, d));
        py::dict out;
        out["closed"] = res.closed;
        if (res.closed) out["structure_constants"] = res.structure_constants;
        if (res.witness)
            out["witness"] = py::make_tuple(res.witness->i, res.witness->j, res.witness->value);
        return out;
    }, py::arg("elements"), py::arg("d"));
    m.def("derived_series", [](const std::vector<CMat>& elements, Eigen::Index d) {
        return derived_series(basis_from_list(elements, d));
    }, py::arg("elements"), py::arg("d"));
    m.def("lie_kolchin_triangularize", [](const std::vector<CMat>& elements, Eigen::Index d) {
        return lie_kolchin_triangularize(basis_from_list(elements, d));
    }, py::arg("elements"), py::arg("d"));

    // --- averaging ---------------------------------------------------------
    m.def("so2_quadrature", [](int n) {
        std::vector<std::pair<double, CMat>> nodes;
        for (const auto& node : so2_quadrature(n)) nodes.emplace_back(node.weight, node.g);
        return nodes;
    }, py::arg("n"));
    m.def("invariant_hermitian_form",
          [](const std::vector<std::pair<double, CMat>>& nodes,
             const std::function<CMat(const CMat&)>& rep) {
              std::vector<QuadratureNode> qnodes;
              for (const auto& [w, g] : nodes) qnodes.push_back({w, g});
              return invariant_hermitian_form(qnodes, rep).gram;
          },
          py::arg("quadrature"), py::arg("rep"));
    m.def("invariant_complement", [](const CMat& gram, const std::vector<CVec>& subspace) {
        return invariant_complement(HermitianForm{gram}, subspace);
    }, py::arg("gram"), py::arg("subspace"));

    // --- homogeneous ----------------------------------------------------------
    m.def("iwasawa", [](const RMat& g, bool rescale) {
        const NAKDecomposition nak = iwasawa(g, rescale);
        return py::make_tuple(nak.n, nak.a, nak.k);
    }, py::arg("g"), py::arg("rescale") = false, "NAK decomposition (n, a, k)");
    m.def("fit_haar_exponents", [](int d) {
        const HaarExponents he = fit_haar_exponents(d);
        return py::make_tuple(he.exponents, he.fit_residual);
    }, py::arg("d"));
    m.def("siegel_volume", [](double s, double t, int d, int levels) {
        const SiegelVolume vol = siegel_volume({s, t}, d, levels);
        py::dict out;
        out["value"] = vol.value;
        out["levels"] = vol.levels;
        out["tail_estimate"] = vol.tail_estimate;
        out["cutoff"] = vol.cutoff;
        out["exponents"] = vol.exponents;
        return out;
    }, py::arg("s") = 0.5, py::arg("t") = 2.0 / std::sqrt(3.0), py::arg("d") = 2,
       py::arg("levels") = 6);
    m.def("shortest_vector", [](const RMat& rows, double multiplier) {
        const ShortestVectorResult sv = shortest_vector(LatticeBasis{rows}, multiplier);
        return py::make_tuple(sv.v, sv.coeffs, sv.norm);
    }, py::arg("rows"), py::arg("radius_multiplier") = 1.5);
    m.def("reduce_basis", [](const RMat& rows) {
        const ReducedBasis red = reduce_basis(LatticeBasis{rows});
        return py::make_tuple(red.reduced.rows, red.transform);
    }, py::arg("rows"), "Siegel-reduced basis and the unimodular transform");
    m.def("mahler_margin", [](const std::vector<RMat>& family) {
        std::vector<LatticeBasis> bases;
        for (const RMat& rows : family) bases.push_back({rows});
        return mahler_margin(bases);
    }, py::arg("family"));

    // --- hyperbolic plane --------------------------------------------------------
    m.def("hyperbolic_distance", [](std::pair<double, double> z1, std::pair<double, double> z2) {
        return hyperbolic_distance(make_hpoint(z1.first, z1.second),
                                   make_hpoint(z2.first, z2.second));
    }, py::arg("z1"), py::arg("z2"));
    m.def("moebius_apply", [](const Eigen::Matrix2d& g, bool reflect_first,
                              std::pair<double, double> z) {
        Motion motion{g, reflect_first};
        const HPoint image = moebius_apply(motion, make_hpoint(z.first, z.second));
        return std::make_pair(image.x, image.y);
    }, py::arg("g"), py::arg("reflect_first"), py::arg("z"));
    m.def("build_base_triangle", [](int n1, int n2, int n3) {
        const BaseTriangle tri = build_base_triangle({n1, n2, n3});
        std::vector<std::pair<double, double>> vertices;
        for (const HPoint& v : tri.vertices) vertices.emplace_back(v.x, v.y);
        return vertices;
    }, py::arg("n1"), py::arg("n2"), py::arg("n3"));
    m.def("generate_tiling", [](int n1, int n2, int n3, int depth) {
        py::list out;
        for (const Tile& tile : generate_tiling({n1, n2, n3}, depth)) {
            py::dict item;
            item["word"] = tile.word;
            item["matrix"] = Eigen::Matrix2d(tile.motion.m);
            item["reflect"] = tile.motion.reflect_first;
            std::vector<std::pair<double, double>> vertices;
            for (const HPoint& v : tile.vertices) vertices.emplace_back(v.x, v.y);
            item["vertices"] = vertices;
            out.append(item);
        }
        return out;
    }, py::arg("n1"), py::arg("n2"), py::arg("n3"), py::arg("depth"));
    m.def("even_subgroup_generators", [](int n1, int n2, int n3) {
        return even_subgroup_generators({n1, n2, n3});
    });
    m.def("even_subgroup_elements", [](int n1, int n2, int n3, int max_len) {
        return even_subgroup_elements({n1, n2, n3}, max_len);
    });
    m.def("discreteness_check", &discreteness_check, py::arg("elements"), py::arg("box_radius"));
    m.def("tiling_svg", [](int n1, int n2, int n3, int depth) {
        return tiling_svg(generate_tiling({n1, n2, n3}, depth));
    });

    // --- arithmetic ------------------------------------------------------------------
    m.def("quaternion_lattice_elements", [](long long a, long long b, long long height) {
        const QuatBasis basis = quaternion_basis(a, b);
        py::list out;
        for (const auto& el : quaternion_lattice_elements(basis, height)) {
            py::dict item;
            item["w"] = el.w;
            item["x"] = el.x;
            item["y"] = el.y;
            item["z"] = el.z;
            item["embedding"] = el.matrix.embed();
            out.append(item);
        }
        return out;
    }, py::arg("a"), py::arg("b"), py::arg("height"));
    m.def("quaternion_discreteness_margin", [](long long a, long long b, long long height) {
        const QuatBasis basis = quaternion_basis(a, b);
        return discreteness_margin(quaternion_lattice_elements(basis, height));
    });
    m.def("congruence_filter",
          [](long long a, long long b, long long height, long long modulus) {
              const QuatBasis basis = quaternion_basis(a, b);
              const auto filtered =
                  congruence_filter(quaternion_lattice_elements(basis, height), modulus);
              std::vector<std::array<long long, 4>> out;
              for (const auto& el : filtered) out.push_back({el.w, el.x, el.y, el.z});
              return out;
          },
          py::arg("a"), py::arg("b"), py::arg("height"), py::arg("modulus"));
    m.def("so_q_algebra",
          [](const std::vector<std::vector<std::pair<long long, long long>>>& gram) {
              return so_q_algebra(form_from_fractions(gram)).elements;
          },
          py::arg("gram"), "Basis of {X : X M + M X^T = 0}; cells are (num, den) pairs");
    m.def("isotropic_search", [](int dim, const std::vector<long long>& coeffs, long long height)
              -> std::optional<std::vector<long long>> {
        return isotropic_search(make_int_quad_form(dim, coeffs), height);
    }, py::arg("dim"), py::arg("upper_coeffs"), py::arg("height"));

    // --- dynamics -----------------------------------------------------------------------
    m.def("projective_orbit", [](const CMat& t, const CVec& v0, long n_max) {
        const Trajectory traj = projective_orbit(t, canonicalize(v0), n_max);
        std::vector<CVec> points;
        for (const ProjPoint& p : traj.points) points.push_back(p.v);
        return py::make_tuple(points, traj.times);
    }, py::arg("t"), py::arg("v0"), py::arg("n_max"));
    m.def("recurrence_detect", [](const CMat& t, const CVec& v0, double eps, long n_max) {
        return recurrence_detect(projective_orbit(t, canonicalize(v0), n_max), eps);
    }, py::arg("t"), py::arg("v0"), py::arg("eps"), py::arg("n_max"));
    m.def("unipotent_rigidity_check", [](const CMat& t, const CVec& v0, double eps, long n_max) {
        return std::string(to_string(unipotent_rigidity_check(t, canonicalize(v0), eps, n_max)));
    }, py::arg("t"), py::arg("v0"), py::arg("eps"), py::arg("n_max"));
    m.def("borel_density_experiment",
          [](const std::vector<std::pair<CMat, CMat>>& generators,
             const std::vector<CMat>& unipotents, const CVec& v, double eps, long n_max) {
              const BorelReport report =
                  borel_density_experiment(generators, unipotents, v, eps, n_max);
              py::dict out;
              py::list entries;
              for (const auto& entry : report.entries) {
                  py::dict item;
                  item["index"] = entry.index;
                  item["outcome"] = std::string(to_string(entry.outcome));
                  entries.append(item);
              }
              out["entries"] = entries;
              out["all_fixed"] = report.all_fixed;
              out["certifies"] = report.certifies;
              return out;
          },
          py::arg("generators"), py::arg("unipotents"), py::arg("v"), py::arg("eps"),
          py::arg("n_max"));
    m.def("symmetric_square", [](const CMat& g) { return symmetric_square(g); }, py::arg("g"));

    m.attr("__version__") = "0.1.0";
}
