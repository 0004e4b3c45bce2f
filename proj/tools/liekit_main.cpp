// liekit: batch CLI over the matrix Lie group toolkit. One command per
// process; JSON in, JSON/SVG out; deterministic for fixed inputs.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "liekit/dynamics.hpp"
#include "liekit/expm.hpp"
#include "liekit/haar.hpp"
#include "liekit/hyperbolic.hpp"
#include "liekit/invariant_form.hpp"
#include "liekit/iwasawa.hpp"
#include "liekit/json_io.hpp"
#include "liekit/lattice.hpp"
#include "liekit/lie_algebra.hpp"
#include "liekit/quadratic_form.hpp"
#include "liekit/quaternion.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using liekit::Json;

struct CommonArgs {
    std::string out;
    std::uint64_t seed = 0;
    liekit::Tolerances tol;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--out", args.out, "Output file (stdout when omitted)");
    cmd->add_option("--seed", args.seed, "Seed recorded in the output and used by samplers");
    cmd->add_option("--tol-singularity", args.tol.singularity);
    cmd->add_option("--tol-roundtrip", args.tol.roundtrip);
    cmd->add_option("--tol-clustering", args.tol.clustering);
    cmd->add_option("--tol-span", args.tol.span);
}

Json meta(const std::string& command, const CommonArgs& args) {
    return Json{{"tool", "liekit"},
                {"version", kVersion},
                {"command", command},
                {"seed", args.seed},
                {"tolerances",
                 Json{{"singularity", args.tol.singularity},
                      {"roundtrip", args.tol.roundtrip},
                      {"clustering", args.tol.clustering},
                      {"span", args.tol.span}}}};
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw liekit::validation_error("cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw liekit::validation_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void emit(const std::string& out_path, const Json& payload) {
    const std::string text = payload.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw liekit::validation_error("cannot open output file: " + out_path);
    out << text;
}

void emit_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw liekit::validation_error("cannot open output file: " + out_path);
    out << text;
}

liekit::Rational rational_from_json(const Json& cell) {
    if (cell.is_number_integer()) return liekit::Rational(cell.get<long long>());
    if (cell.is_array() && cell.size() == 2 && cell[0].is_number_integer() &&
        cell[1].is_number_integer())
        return {cell[0].get<long long>(), cell[1].get<long long>()};
    throw liekit::validation_error("rational entries must be integers or [num, den] pairs");
}

Json hpoint_to_json(const liekit::HPoint& z) { return Json::array({z.x, z.y}); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liekit: matrix Lie groups, lattices, and tilings toolkit"};
    app.require_subcommand(1);

    // ---- exp / log -------------------------------------------------------
    struct {
        CommonArgs common;
        std::string in;
    } exp_args, log_args, iwasawa_args, reduce_args, shortest_args;
    bool iwasawa_rescale = false;
    double shortest_multiplier = 1.5;

    CLI::App* cmd_exp = app.add_subcommand("exp", "Matrix exponential");
    cmd_exp->add_option("--in", exp_args.in, "Matrix JSON")->required();
    add_common(cmd_exp, exp_args.common);

    CLI::App* cmd_log = app.add_subcommand("log", "Principal matrix logarithm");
    cmd_log->add_option("--in", log_args.in, "Matrix JSON")->required();
    add_common(cmd_log, log_args.common);

    // ---- bch -------------------------------------------------------------
    struct {
        CommonArgs common;
        std::string a, b;
        int order = 2;
    } bch_args;
    CLI::App* cmd_bch = app.add_subcommand("bch", "Truncated Baker-Campbell-Hausdorff series");
    cmd_bch->add_option("--a", bch_args.a)->required();
    cmd_bch->add_option("--b", bch_args.b)->required();
    cmd_bch->add_option("--order", bch_args.order, "Truncation order 1..4");
    add_common(cmd_bch, bch_args.common);

    // ---- one-param -------------------------------------------------------
    struct {
        CommonArgs common;
        std::string samples;
    } oneparam_args;
    CLI::App* cmd_oneparam =
        app.add_subcommand("one-param", "Recover the generator of a one-parameter group");
    cmd_oneparam->add_option("--samples", oneparam_args.samples, "JSON [{t, g}, ...]")->required();
    add_common(cmd_oneparam, oneparam_args.common);

    // ---- kolchin ---------------------------------------------------------
    struct {
        CommonArgs common;
        std::string basis;
    } kolchin_args;
    CLI::App* cmd_kolchin =
        app.add_subcommand("kolchin", "Simultaneously triangularize a solvable algebra");
    cmd_kolchin->add_option("--basis", kolchin_args.basis, "LieBasis JSON")->required();
    add_common(cmd_kolchin, kolchin_args.common);

    // ---- invariant-form --------------------------------------------------
    struct {
        CommonArgs common;
        std::string conjugator;
        int nodes = 256;
    } form_args;
    CLI::App* cmd_form = app.add_subcommand(
        "invariant-form", "Average the standard form over SO(2), optionally conjugated");
    cmd_form->add_option("--nodes", form_args.nodes, "Quadrature node count");
    cmd_form->add_option("--conjugator", form_args.conjugator,
                         "Matrix JSON S; the representation is k -> S k S^-1");
    add_common(cmd_form, form_args.common);

    // ---- iwasawa / reduce / shortest --------------------------------------
    CLI::App* cmd_iwasawa = app.add_subcommand("iwasawa", "NAK decomposition");
    cmd_iwasawa->add_option("--in", iwasawa_args.in, "Matrix JSON")->required();
    cmd_iwasawa->add_flag("--rescale", iwasawa_rescale, "Rescale det to 1 first");
    add_common(cmd_iwasawa, iwasawa_args.common);

    CLI::App* cmd_reduce = app.add_subcommand("reduce", "Siegel-reduce a lattice basis");
    cmd_reduce->add_option("--in", reduce_args.in, "LatticeBasis JSON")->required();
    add_common(cmd_reduce, reduce_args.common);

    CLI::App* cmd_shortest = app.add_subcommand("shortest", "Shortest nonzero lattice vector");
    cmd_shortest->add_option("--in", shortest_args.in, "LatticeBasis JSON")->required();
    cmd_shortest->add_option("--multiplier", shortest_multiplier, "Search radius multiplier");
    add_common(cmd_shortest, shortest_args.common);

    // ---- siegel-volume ----------------------------------------------------
    struct {
        CommonArgs common;
        int d = 2;
        double s = 0.5;
        double t = 2.0 / std::sqrt(3.0);
        int levels = 6;
    } siegel_args;
    CLI::App* cmd_siegel = app.add_subcommand("siegel-volume", "Volume of a Siegel set");
    cmd_siegel->add_option("--d", siegel_args.d, "Dimension (2 or 3)");
    cmd_siegel->add_option("--s", siegel_args.s);
    cmd_siegel->add_option("--t", siegel_args.t);
    cmd_siegel->add_option("--levels", siegel_args.levels, "Truncation refinement levels");
    add_common(cmd_siegel, siegel_args.common);

    // ---- haar-check --------------------------------------------------------
    struct {
        CommonArgs common;
        std::string chart = "nak";
        std::string g0;
        int resolution = 48;
        double bump_radius = 0.35;
    } haar_args;
    CLI::App* cmd_haar =
        app.add_subcommand("haar-check", "Left-invariance check of the SL2 Haar density");
    cmd_haar->add_option("--chart", haar_args.chart, "Coordinate chart: nak | abc");
    cmd_haar->add_option("--g0", haar_args.g0, "Matrix JSON of the translation")->required();
    cmd_haar->add_option("--resolution", haar_args.resolution, "Quadrature resolution");
    cmd_haar->add_option("--bump-radius", haar_args.bump_radius);
    add_common(cmd_haar, haar_args.common);

    // ---- tiling ------------------------------------------------------------
    struct {
        CommonArgs common;
        std::vector<int> signature{2, 3, 7};
        int depth = 3;
        std::string svg;
        std::string json;
    } tiling_args;
    CLI::App* cmd_tiling = app.add_subcommand("tiling", "Hyperbolic triangle-group tiling");
    cmd_tiling->add_option("--signature", tiling_args.signature, "n1,n2,n3")
        ->delimiter(',')
        ->expected(3);
    cmd_tiling->add_option("--depth", tiling_args.depth, "Reflection word depth");
    cmd_tiling->add_option("--svg", tiling_args.svg, "SVG output path");
    cmd_tiling->add_option("--json", tiling_args.json, "JSON output path");
    add_common(cmd_tiling, tiling_args.common);

    // ---- quat-lattice -------------------------------------------------------
    struct {
        CommonArgs common;
        long long a = 2, b = 3, height = 10;
    } quat_args;
    CLI::App* cmd_quat = app.add_subcommand("quat-lattice", "Enumerate a quaternion lattice");
    cmd_quat->add_option("--a", quat_args.a)->required();
    cmd_quat->add_option("--b", quat_args.b)->required();
    cmd_quat->add_option("--height", quat_args.height)->required();
    add_common(cmd_quat, quat_args.common);

    // ---- so-q ----------------------------------------------------------------
    struct {
        CommonArgs common;
        std::string in;
    } soq_args;
    CLI::App* cmd_soq = app.add_subcommand("so-q", "Lie algebra of SO(Q) for a rational form");
    cmd_soq->add_option("--in", soq_args.in, "Gram JSON {dim, entries} with rational cells")
        ->required();
    add_common(cmd_soq, soq_args.common);

    // ---- isotropic -------------------------------------------------------------
    struct {
        CommonArgs common;
        int dim = 3;
        std::vector<long long> coeffs;
        long long height = 50;
    } iso_args;
    CLI::App* cmd_iso = app.add_subcommand("isotropic", "Search for integer zeros of a form");
    cmd_iso->add_option("--dim", iso_args.dim, "Number of variables (<= 4)");
    cmd_iso->add_option("--coeffs", iso_args.coeffs,
                        "Upper-triangle coefficients c_ij, row-major")
        ->delimiter(',')
        ->required();
    cmd_iso->add_option("--height", iso_args.height);
    add_common(cmd_iso, iso_args.common);

    // ---- recurrence ---------------------------------------------------------------
    struct {
        CommonArgs common;
        std::string matrix;
        std::string start;
        double eps = 1e-3;
        long nmax = 100000;
    } rec_args;
    CLI::App* cmd_rec = app.add_subcommand("recurrence", "Projective orbit recurrence report");
    cmd_rec->add_option("--matrix", rec_args.matrix)->required();
    cmd_rec->add_option("--start", rec_args.start)->required();
    cmd_rec->add_option("--eps", rec_args.eps);
    cmd_rec->add_option("--nmax", rec_args.nmax);
    add_common(cmd_rec, rec_args.common);

    // ---- borel ----------------------------------------------------------------------
    struct {
        CommonArgs common;
        std::string in;
        double eps = 1e-3;
        long nmax = 100000;
    } borel_args;
    CLI::App* cmd_borel =
        app.add_subcommand("borel", "Per-element fixing experiment for a lattice-fixed vector");
    cmd_borel->add_option("--in", borel_args.in,
                          "JSON {generators: [{gamma, rho}], unipotents: [...], v}")
        ->required();
    cmd_borel->add_option("--eps", borel_args.eps);
    cmd_borel->add_option("--nmax", borel_args.nmax);
    add_common(cmd_borel, borel_args.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // unknown command / bad usage
    }

    try {
        if (*cmd_exp) {
            bool real_field = false;
            const liekit::CMat a = liekit::mat_from_json(load_json(exp_args.in), &real_field);
            Json out = meta("exp", exp_args.common);
            out["result"] = liekit::mat_to_json(liekit::mat_exp(a, exp_args.common.tol), real_field);
            emit(exp_args.common.out, out);
        } else if (*cmd_log) {
            bool real_field = false;
            const liekit::CMat g = liekit::mat_from_json(load_json(log_args.in), &real_field);
            Json out = meta("log", log_args.common);
            out["result"] = liekit::mat_to_json(liekit::mat_log(g, log_args.common.tol), real_field);
            emit(log_args.common.out, out);
        } else if (*cmd_bch) {
            bool real_a = false, real_b = false;
            const liekit::CMat a = liekit::mat_from_json(load_json(bch_args.a), &real_a);
            const liekit::CMat b = liekit::mat_from_json(load_json(bch_args.b), &real_b);
            const liekit::BCHResult res = liekit::bch_truncated(a, b, bch_args.order);
            Json out = meta("bch", bch_args.common);
            out["result"] = liekit::mat_to_json(res.value, real_a && real_b);
            out["order"] = res.order;
            out["inputScale"] = res.input_scale;
            if (res.input_scale > 0.5) out["warning"] = "input scale above 0.5";
            emit(bch_args.common.out, out);
        } else if (*cmd_oneparam) {
            const Json samples_json = load_json(oneparam_args.samples);
            if (!samples_json.is_array() || samples_json.empty())
                throw liekit::validation_error("one-param: samples must be a nonempty array");
            std::vector<std::pair<double, liekit::CMat>> samples;
            bool all_real = true;
            for (const Json& item : samples_json) {
                if (!item.contains("t") || !item.contains("g"))
                    throw liekit::validation_error("one-param: each sample needs {t, g}");
                bool real_field = false;
                samples.emplace_back(item["t"].get<double>(),
                                     liekit::mat_from_json(item["g"], &real_field));
                all_real = all_real && real_field;
            }
            Json out = meta("one-param", oneparam_args.common);
            out["result"] = liekit::mat_to_json(
                liekit::one_param_recover(samples, oneparam_args.common.tol), all_real);
            emit(oneparam_args.common.out, out);
        } else if (*cmd_kolchin) {
            const liekit::LieBasis basis = liekit::basis_from_json(load_json(kolchin_args.basis));
            const liekit::CMat g = liekit::lie_kolchin_triangularize(basis, kolchin_args.common.tol);
            const liekit::CMat ginv = g.inverse();
            double residual = 0.0;
            for (const liekit::CMat& x : basis.elements) {
                const liekit::CMat conj = g * x * ginv;
                for (Eigen::Index i = 0; i < conj.rows(); ++i)
                    for (Eigen::Index j = 0; j < i; ++j)
                        residual = std::max(residual, std::abs(conj(i, j)));
            }
            Json out = meta("kolchin", kolchin_args.common);
            out["conjugator"] = liekit::mat_to_json(g, false);
            out["subDiagonalResidual"] = residual;
            emit(kolchin_args.common.out, out);
        } else if (*cmd_form) {
            std::function<liekit::CMat(const liekit::CMat&)> rep =
                [](const liekit::CMat& k) { return k; };
            if (!form_args.conjugator.empty()) {
                const liekit::CMat s = liekit::mat_from_json(load_json(form_args.conjugator));
                const liekit::CMat sinv = s.inverse();
                rep = [s, sinv](const liekit::CMat& k) { return liekit::CMat(s * k * sinv); };
            }
            const liekit::HermitianForm form = liekit::invariant_hermitian_form(
                liekit::so2_quadrature(form_args.nodes), rep, form_args.common.tol);
            Json out = meta("invariant-form", form_args.common);
            out["gram"] = liekit::mat_to_json(form.gram, false);
            out["nodes"] = form_args.nodes;
            emit(form_args.common.out, out);
        } else if (*cmd_iwasawa) {
            const liekit::RMat g = liekit::rmat_from_json(load_json(iwasawa_args.in));
            const liekit::NAKDecomposition nak =
                liekit::iwasawa(g, iwasawa_rescale, iwasawa_args.common.tol);
            Json out = meta("iwasawa", iwasawa_args.common);
            out["result"] = liekit::nak_to_json(nak);
            emit(iwasawa_args.common.out, out);
        } else if (*cmd_reduce) {
            const liekit::LatticeBasis basis = liekit::lattice_from_json(load_json(reduce_args.in));
            const liekit::ReducedBasis red = liekit::reduce_basis(basis, reduce_args.common.tol);
            Json transform = Json::array();
            for (Eigen::Index i = 0; i < red.transform.rows(); ++i) {
                Json row = Json::array();
                for (Eigen::Index j = 0; j < red.transform.cols(); ++j)
                    row.push_back(red.transform(i, j));
                transform.push_back(std::move(row));
            }
            Json out = meta("reduce", reduce_args.common);
            out["reduced"] = liekit::lattice_to_json(red.reduced);
            out["transform"] = transform;
            emit(reduce_args.common.out, out);
        } else if (*cmd_shortest) {
            const liekit::LatticeBasis basis =
                liekit::lattice_from_json(load_json(shortest_args.in));
            const liekit::ShortestVectorResult sv =
                liekit::shortest_vector(basis, shortest_multiplier, shortest_args.common.tol);
            Json out = meta("shortest", shortest_args.common);
            Json v = Json::array(), coeffs = Json::array();
            for (Eigen::Index i = 0; i < sv.v.size(); ++i) v.push_back(sv.v(i));
            for (const long long c : sv.coeffs) coeffs.push_back(c);
            out["vector"] = v;
            out["coefficients"] = coeffs;
            out["norm"] = sv.norm;
            emit(shortest_args.common.out, out);
        } else if (*cmd_siegel) {
            const liekit::SiegelVolume vol =
                liekit::siegel_volume({siegel_args.s, siegel_args.t}, siegel_args.d,
                                      siegel_args.levels, siegel_args.common.tol);
            Json out = meta("siegel-volume", siegel_args.common);
            out["value"] = vol.value;
            out["levels"] = vol.levels;
            out["tailEstimate"] = vol.tail_estimate;
            out["cutoff"] = vol.cutoff;
            out["exponents"] = vol.exponents;
            emit(siegel_args.common.out, out);
        } else if (*cmd_haar) {
            liekit::CoordChart chart;
            if (haar_args.chart == "nak")
                chart = liekit::sl2_nak_chart(
                    liekit::fit_haar_exponents(2, haar_args.common.seed + 20110711).exponents[0]);
            else if (haar_args.chart == "abc")
                chart = liekit::sl2_abc_chart();
            else
                throw liekit::validation_error("haar-check: chart must be nak or abc");
            liekit::RVec center(3);
            if (haar_args.chart == "nak")
                center << 0.0, 1.0, 0.0;
            else
                center << 1.2, 0.0, 0.0;
            const auto f = liekit::matrix_bump(chart.point(center), haar_args.bump_radius);
            const liekit::RMat g0 = liekit::rmat_from_json(load_json(haar_args.g0));
            const liekit::InvarianceCheck check = liekit::haar_invariance_check(
                chart, f, g0, haar_args.resolution, haar_args.common.tol);
            Json out = meta("haar-check", haar_args.common);
            out["lhs"] = check.lhs;
            out["rhs"] = check.rhs;
            out["quadError"] = check.quad_error;
            out["withinTwiceError"] = std::abs(check.lhs - check.rhs) <= 2.0 * check.quad_error;
            emit(haar_args.common.out, out);
        } else if (*cmd_tiling) {
            const liekit::TriangleGroupSpec spec{tiling_args.signature[0],
                                                 tiling_args.signature[1],
                                                 tiling_args.signature[2]};
            const std::vector<liekit::Tile> tiles =
                liekit::generate_tiling(spec, tiling_args.depth);
            Json tiles_json = Json::array();
            for (const liekit::Tile& tile : tiles) {
                Json vertices = Json::array();
                for (const liekit::HPoint& v : tile.vertices) vertices.push_back(hpoint_to_json(v));
                liekit::RMat m(2, 2);
                m = tile.motion.m;
                tiles_json.push_back(Json{{"word", tile.word},
                                          {"reflect", tile.motion.reflect_first},
                                          {"matrix", liekit::mat_to_json(m)},
                                          {"vertices", vertices}});
            }
            Json out = meta("tiling", tiling_args.common);
            out["signature"] = tiling_args.signature;
            out["depth"] = tiling_args.depth;
            out["tileCount"] = tiles.size();
            out["tiles"] = tiles_json;
            if (!tiling_args.json.empty() || tiling_args.svg.empty())
                emit(tiling_args.json.empty() ? tiling_args.common.out : tiling_args.json, out);
            if (!tiling_args.svg.empty()) {
                std::string svg = liekit::tiling_svg(tiles);
                const std::string comment = "<!-- liekit " + std::string(kVersion) + " tiling " +
                                            std::to_string(tiles.size()) + " tiles -->\n";
                const size_t pos = svg.find('\n');
                svg.insert(pos + 1, comment);
                emit_text(tiling_args.svg, svg);
            }
        } else if (*cmd_quat) {
            const liekit::QuatBasis basis = liekit::quaternion_basis(quat_args.a, quat_args.b);
            const auto elements = liekit::quaternion_lattice_elements(basis, quat_args.height);
            Json items = Json::array();
            for (const auto& el : elements) {
                items.push_back(Json{{"w", el.w},
                                     {"x", el.x},
                                     {"y", el.y},
                                     {"z", el.z},
                                     {"embedding", liekit::mat_to_json(el.matrix.embed())}});
            }
            Json out = meta("quat-lattice", quat_args.common);
            out["a"] = quat_args.a;
            out["b"] = quat_args.b;
            out["height"] = quat_args.height;
            out["degenerateField"] = basis.degenerate_field;
            out["count"] = elements.size();
            out["elements"] = items;
            if (elements.size() >= 2)
                out["discretenessMargin"] = liekit::discreteness_margin(elements);
            emit(quat_args.common.out, out);
        } else if (*cmd_soq) {
            const Json j = load_json(soq_args.in);
            if (!j.contains("dim") || !j.contains("entries"))
                throw liekit::validation_error("so-q: expected {dim, entries}");
            const auto d = j["dim"].get<Eigen::Index>();
            std::vector<liekit::Rational> gram;
            for (const Json& row : j["entries"])
                for (const Json& cell : row) gram.push_back(rational_from_json(cell));
            const liekit::QuadraticForm q = liekit::make_quadratic_form(d, std::move(gram));
            const liekit::LieBasis basis = liekit::so_q_algebra(q, soq_args.common.tol);
            const liekit::ClosureResult closure = liekit::closure_check(basis, soq_args.common.tol);
            Json out = meta("so-q", soq_args.common);
            out["basis"] = liekit::basis_to_json(basis);
            out["dimension"] = basis.dim();
            out["closed"] = closure.closed;
            emit(soq_args.common.out, out);
        } else if (*cmd_iso) {
            const liekit::IntQuadForm form =
                liekit::make_int_quad_form(iso_args.dim, iso_args.coeffs);
            const auto hit = liekit::isotropic_search(form, iso_args.height);
            Json out = meta("isotropic", iso_args.common);
            out["height"] = iso_args.height;
            if (hit) {
                out["found"] = true;
                out["vector"] = *hit;
            } else {
                out["found"] = false;
                out["note"] = "no isotropic vector with height <= " +
                              std::to_string(iso_args.height) + "; not a proof of anisotropy";
            }
            emit(iso_args.common.out, out);
        } else if (*cmd_rec) {
            const liekit::CMat t = liekit::mat_from_json(load_json(rec_args.matrix));
            const liekit::CVec v0 = liekit::vec_from_json(load_json(rec_args.start));
            const liekit::ProjPoint p0 = liekit::canonicalize(v0);
            const liekit::Trajectory traj =
                liekit::projective_orbit(t, p0, rec_args.nmax, rec_args.common.tol);
            const std::vector<long> returns = liekit::recurrence_detect(traj, rec_args.eps);
            const liekit::ElementClass cls = liekit::classify_element(t, rec_args.common.tol);
            Json out = meta("recurrence", rec_args.common);
            out["eps"] = rec_args.eps;
            out["nmax"] = rec_args.nmax;
            out["classification"] = liekit::to_string(cls);
            out["returnCount"] = returns.size();
            Json first_returns = Json::array();
            for (size_t i = 0; i < returns.size() && i < 32; ++i) first_returns.push_back(returns[i]);
            out["firstReturns"] = first_returns;
            if (cls == liekit::ElementClass::Unipotent)
                out["rigidity"] = liekit::to_string(liekit::unipotent_rigidity_check(
                    t, p0, rec_args.eps, rec_args.nmax, rec_args.common.tol));
            emit(rec_args.common.out, out);
        } else if (*cmd_borel) {
            const Json j = load_json(borel_args.in);
            if (!j.contains("generators") || !j.contains("unipotents") || !j.contains("v"))
                throw liekit::validation_error("borel: expected {generators, unipotents, v}");
            std::vector<std::pair<liekit::CMat, liekit::CMat>> generators;
            for (const Json& item : j["generators"])
                generators.emplace_back(liekit::mat_from_json(item.at("gamma")),
                                        liekit::mat_from_json(item.at("rho")));
            std::vector<liekit::CMat> unipotents;
            for (const Json& item : j["unipotents"]) unipotents.push_back(liekit::mat_from_json(item));
            const liekit::CVec v = liekit::vec_from_json(j["v"]);
            const liekit::BorelReport report = liekit::borel_density_experiment(
                generators, unipotents, v, borel_args.eps, borel_args.nmax, borel_args.common.tol);
            Json entries = Json::array();
            for (const auto& entry : report.entries)
                entries.push_back(
                    Json{{"index", entry.index}, {"outcome", liekit::to_string(entry.outcome)}});
            Json out = meta("borel", borel_args.common);
            out["entries"] = entries;
            out["allFixed"] = report.all_fixed;
            out["certifies"] = report.certifies;
            emit(borel_args.common.out, out);
        }
    } catch (const liekit::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const liekit::numeric_error& e) {
        std::cerr << "numerical-domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
