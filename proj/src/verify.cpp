#include "orient/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "orient/spectral.hpp"

namespace orient {

namespace {

CheckResult check_close(const std::string& name, double computed, double reference,
                        double tolerance) {
    return {name, computed, reference, tolerance,
            std::abs(computed - reference) <= tolerance};
}

CheckResult check_count(const std::string& name, int computed, int reference) {
    return {name, static_cast<double>(computed), static_cast<double>(reference), 0.0,
            computed == reference};
}

}  // namespace

Verdict verify_eigenvalues(const VerifyOptions& opts) {
    Verdict verdict;
    verdict.suite = "eigenvalues";
    for (int n = 1; n <= 20; ++n) {
        verdict.checks.push_back(check_close(
            "lambda_" + std::to_string(n) + "_quadrature_vs_closed_form",
            lambda_from_integrals(n, opts.quadrature), lambda_closed_form(n),
            opts.tol_eigen));
    }
    return verdict;
}

Verdict verify_quadrature(const VerifyOptions& opts) {
    Verdict verdict;
    verdict.suite = "quadrature";
    const double grid[] = {-0.9, -0.5, 0.0, 0.3, 0.7, 0.9};
    for (int k = 0; k < 3; ++k) {
        for (double t : grid) {
            const Complex v = integral_generating(k, t, opts.quadrature);
            verdict.checks.push_back(check_close(
                "integral_I" + std::to_string(k) + "_at_t_" + std::to_string(t),
                v.real(), integral_generating_closed_form(k, t), opts.tol_quad));
        }
    }
    verdict.checks.push_back(check_close("quadrature_doubling_self_consistency",
                                         quadrature_self_check(opts.quadrature), 0.0,
                                         1e-12));
    // Partial sums of the Legendre generating series against the closed form
    // on a 10 x 10 grid; |t| <= 0.405 keeps the 31-term tail below 3e-13.
    double worst = 0.0;
    for (int ti = 0; ti < 10; ++ti) {
        const double t = -0.405 + 0.09 * ti;
        for (int hi = 0; hi < 10; ++hi) {
            const double theta = M_PI * (hi + 0.5) / 10.0;
            const double c = std::cos(theta);
            double sum = 0.0, tn = 1.0;
            for (int n = 0; n <= 30; ++n) {
                sum += legendre_p(n, c) * tn;
                tn *= t;
            }
            worst = std::max(worst, std::abs(sum - generating_functions(theta, t).g.real()));
        }
    }
    verdict.checks.push_back(
        check_close("legendre_generating_identity_grid_max_dev", worst, 0.0,
                    opts.tol_generating));
    return verdict;
}

Verdict verify_clusters(const VerifyOptions& opts) {
    Verdict verdict;
    verdict.suite = "clusters";
    const DirectionSet ds = sample_uniform(opts.n, opts.seed);
    for (BlockKind kind : {BlockKind::Common, BlockKind::Transport}) {
        const Spectrum spec = eigendecompose(assemble(ds, kind));
        const auto rows = cluster_spectrum(spec, kind, 3, opts.cluster_window);
        for (const ClusterRow& row : rows) {
            verdict.checks.push_back(check_count(
                to_string(kind) + "_cluster_n" + std::to_string(row.n) + "_count",
                row.count, row.multiplicity_predicted));
        }
    }
    return verdict;
}

Verdict verify_isometry(const VerifyOptions& opts) {
    Verdict verdict;
    verdict.suite = "isometry";
    verdict.checks.push_back(check_close("trace_identity_m1000",
                                         trace_isometry_check(1000, opts.seed), 3.0,
                                         opts.tol_trace));
    verdict.checks.push_back(check_close("trace_identity_m1",
                                         trace_isometry_check(1, opts.seed), 3.0,
                                         opts.tol_trace));
    // Canonical sections are near-eigenvectors of C_N at eigenvalue 1/2.
    const DirectionSet ds = sample_uniform(500, opts.seed);
    const BlockOperator op = assemble(ds, BlockKind::Common);
    RandomStream rng(derive_seed(opts.seed, 17));
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const Eigen::VectorXd s = canonical_section(ds, rng.unit_vector().v);
        worst = std::max(worst, (op.m * s - 0.5 * s).norm() / s.norm());
    }
    verdict.checks.push_back(
        check_close("canonical_embedding_residual_n500_max", worst, 0.0, opts.tol_embed));
    return verdict;
}

Verdict verify_kernel_identities(const VerifyOptions& opts) {
    Verdict verdict;
    verdict.suite = "kernel-identities";
    RandomStream rng(opts.seed);
    const double pair_limit = std::cos(kMinPairSeparation);

    double worst_decomposition = 0.0;
    double worst_transpose = 0.0;
    double worst_common_sign = 0.0;
    double worst_ortho_sign = 0.0;
    double worst_orthogonality = 0.0;
    for (int k = 0; k < 10000; ++k) {
        UnitVector3 x = rng.unit_vector();
        UnitVector3 y = rng.unit_vector();
        while (std::abs(x.dot(y)) >= pair_limit) y = rng.unit_vector();
        const PlaneBasis px = canonical_frame(x);
        const PlaneBasis py = canonical_frame(y);

        const LinePair lp = common_line_directions(px, py);
        const Mat2 c = common_block(lp.c_xy, lp.c_yx);
        const Mat2 o = orthographic_block(px, py);
        const Mat2 t = transport_block(px, py);
        worst_decomposition = std::max(worst_decomposition,
                                       (t - (c - o)).cwiseAbs().maxCoeff());

        const LinePair lp_rev = common_line_directions(py, px);
        const Mat2 c_rev = common_block(lp_rev.c_xy, lp_rev.c_yx);
        worst_transpose = std::max(
            worst_transpose, (c_rev - c.transpose()).cwiseAbs().maxCoeff());
        worst_transpose = std::max(
            worst_transpose,
            (orthographic_block(py, px) - o.transpose()).cwiseAbs().maxCoeff());
        worst_transpose = std::max(
            worst_transpose,
            (transport_block(py, px) - t.transpose()).cwiseAbs().maxCoeff());

        // Negate y and rebuild its frame; the same plane gets new coordinates,
        // related by the 2x2 change of basis R.
        const PlaneBasis py_neg = canonical_frame(UnitVector3{-y.v});
        Mat2 r;
        r.col(0) = py.project(py_neg.b1);
        r.col(1) = py.project(py_neg.b2);
        const LinePair lp_neg = common_line_directions(px, py_neg);
        const Mat2 c_neg = common_block(lp_neg.c_xy, lp_neg.c_yx);
        worst_common_sign =
            std::max(worst_common_sign, (c_neg - c * r).cwiseAbs().maxCoeff());
        const Mat2 o_neg = orthographic_block(px, py_neg);
        worst_ortho_sign =
            std::max(worst_ortho_sign, (o_neg + o * r).cwiseAbs().maxCoeff());

        // Orthographic directions are orthogonal to the common line.
        const Vec3 u = px.normal.cross(py.normal).normalized();
        const Vec3 o_lift = px.lift(px.project(py.normal).normalized());
        worst_orthogonality = std::max(worst_orthogonality, std::abs(o_lift.dot(u)));
    }
    verdict.checks.push_back(check_close("transport_equals_common_minus_orthographic",
                                         worst_decomposition, 0.0, opts.tol_kernel));
    verdict.checks.push_back(
        check_close("block_transpose_symmetry", worst_transpose, 0.0, 1e-12));
    verdict.checks.push_back(
        check_close("common_sign_law_negated_normal", worst_common_sign, 0.0, 1e-12));
    verdict.checks.push_back(
        check_close("orthographic_sign_law_negated_normal", worst_ortho_sign, 0.0, 1e-12));
    verdict.checks.push_back(check_close("orthographic_perpendicular_to_common_line",
                                         worst_orthogonality, 0.0, 1e-12));
    return verdict;
}

std::vector<std::string> verify_suite_names() {
    return {"eigenvalues", "quadrature", "clusters", "isometry", "kernel-identities"};
}

Verdict run_verify_suite(const std::string& suite, const VerifyOptions& opts) {
    if (suite == "eigenvalues") return verify_eigenvalues(opts);
    if (suite == "quadrature") return verify_quadrature(opts);
    if (suite == "clusters") return verify_clusters(opts);
    if (suite == "isometry") return verify_isometry(opts);
    if (suite == "kernel-identities") return verify_kernel_identities(opts);
    throw std::invalid_argument("unknown verification suite: " + suite);
}

}  // namespace orient
