#include "orient/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "orient/errors.hpp"
#include "orient/theory.hpp"

namespace orient {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void place_block(Eigen::MatrixXd& m, int i, int j, const Mat2& block) {
    m.block<2, 2>(2 * i, 2 * j) = block;
    m.block<2, 2>(2 * j, 2 * i) = block.transpose();
}

}  // namespace

BlockOperator assemble(const CommonLinesDatum& datum, BlockKind kind) {
    if (kind != BlockKind::Common) {
        throw std::invalid_argument(
            "assemble: a bare datum only supports the common-lines kind; "
            "orthographic/transport need the direction set");
    }
    datum.validate();
    const int n = datum.n;
    BlockOperator op;
    op.n = n;
    op.kind = kind;
    op.m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    const double scale = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const CommonLinesDatum::Pair* p = datum.find(i, j);
            if (p == nullptr) {
                throw MalformedDatumError(
                    "assemble: datum is missing pair {" + std::to_string(i) + ", " +
                        std::to_string(j) + "}",
                    i, j);
            }
            place_block(op.m, i, j, scale * common_block(p->c_ij, p->c_ji));
        }
    }
    return op;
}

BlockOperator assemble(const DirectionSet& ds, BlockKind kind) {
    const int n = ds.size();
    if (n < 2) throw std::invalid_argument("assemble: need at least two nodes");
    BlockOperator op;
    op.n = n;
    op.kind = kind;
    op.m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    const double scale = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const PlaneBasis& pi = ds.frames[i];
            const PlaneBasis& pj = ds.frames[j];
            Mat2 block;
            switch (kind) {
                case BlockKind::Common: {
                    const LinePair lp = common_line_directions(pi, pj);
                    block = common_block(lp.c_xy, lp.c_yx);
                    break;
                }
                case BlockKind::Orthographic:
                    block = orthographic_block(pi, pj);
                    break;
                case BlockKind::Transport:
                    block = transport_block(pi, pj);
                    break;
            }
            place_block(op.m, i, j, scale * block);
        }
    }
    return op;
}

Spectrum eigendecompose(const BlockOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose: solver did not converge");
    }
    const int dim = static_cast<int>(op.m.rows());
    Spectrum spec;
    spec.eigenvalues = solver.eigenvalues().reverse();
    spec.eigenvectors.resize(dim, dim);
    for (int k = 0; k < dim; ++k) {
        spec.eigenvectors.col(k) = solver.eigenvectors().col(dim - 1 - k);
    }
    return spec;
}

IntrinsicModel extract_intrinsic(const Spectrum& spec) {
    const int total = static_cast<int>(spec.eigenvalues.size());
    if (total % 2 != 0) throw std::invalid_argument("extract_intrinsic: odd spectrum size");
    const double threshold = 1.0 / 3.0;
    int dim = 0;
    while (dim < total && spec.eigenvalues[dim] > threshold) ++dim;

    IntrinsicModel model;
    model.n = total / 2;
    model.dim = dim;
    model.basis = spec.eigenvectors.leftCols(dim);
    model.eigenvalues = spec.eigenvalues.head(dim);
    model.dim_warning = (dim != 3);
    if (model.dim_warning) {
        const int lo = std::max(0, dim - 3);
        const int hi = std::min(total, dim + 3);
        for (int k = lo; k < hi; ++k) {
            model.eigenvalues_near_threshold.push_back(spec.eigenvalues[k]);
        }
    }
    const double scale = std::sqrt(2.0 / 3.0);
    model.phi_maps.reserve(static_cast<std::size_t>(model.n));
    for (int x = 0; x < model.n; ++x) {
        model.phi_maps.push_back(scale * model.basis.middleRows(2 * x, 2).transpose());
    }
    return model;
}

RegistrationResult register_model(const IntrinsicModel& model, const DirectionSet& truth) {
    if (model.dim != 3) {
        throw DimMismatchError("register_model: intrinsic dimension is " +
                               std::to_string(model.dim) + ", need 3");
    }
    if (model.n != truth.size()) {
        throw DimMismatchError("register_model: node count mismatch");
    }
    const int n = model.n;

    Mat3 cross = Mat3::Zero();
    for (int x = 0; x < n; ++x) {
        cross += model.phi_maps[x] * truth.frames[x].embedding().transpose();
    }
    Eigen::JacobiSVD<Mat3> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // Fit over the full orthogonal group; det -1 is a legitimate hand.
    const Mat3 q = svd.matrixU() * svd.matrixV().transpose();

    RegistrationResult reg;
    reg.q = q;
    reg.det_q = q.determinant();
    reg.frame_residuals.reserve(static_cast<std::size_t>(n));

    std::vector<double> errors(static_cast<std::size_t>(n));
    double sq_sum = 0.0;
    for (int x = 0; x < n; ++x) {
        const Eigen::Matrix<double, 3, 2> aligned = q.transpose() * model.phi_maps[x];
        const Vec3 est = aligned.col(0).cross(aligned.col(1));
        const double est_norm = est.norm();
        double err = M_PI;  // a collapsed map counts as maximally wrong
        if (est_norm > 1e-300) {
            err = angular_distance(est / est_norm, truth.points[x].v);
        }
        errors[static_cast<std::size_t>(x)] = err;
        const double res =
            (q * truth.frames[x].embedding() - model.phi_maps[x]).norm();
        reg.frame_residuals.push_back(res);
        sq_sum += res * res;
    }
    reg.residual_total = std::sqrt(sq_sum);

    std::vector<double> sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    double acc = 0.0;
    for (double e : errors) acc += e;
    reg.mean_angular_error = acc / n;
    reg.median_angular_error = (n % 2 == 1)
        ? sorted[static_cast<std::size_t>(n / 2)]
        : 0.5 * (sorted[static_cast<std::size_t>(n / 2) - 1] + sorted[static_cast<std::size_t>(n / 2)]);
    reg.max_angular_error = sorted.back();
    return reg;
}

ReconstructionReport make_report(const Spectrum& spec, const IntrinsicModel& model,
                                 const DirectionSet* truth) {
    ReconstructionReport report;
    report.n = model.n;
    report.dim_intrinsic = model.dim;
    report.dim_warning = model.dim_warning;
    const int top = std::min<int>(30, static_cast<int>(spec.eigenvalues.size()));
    report.top_eigenvalues.assign(spec.eigenvalues.data(), spec.eigenvalues.data() + top);
    if (spec.eigenvalues.size() >= 4) {
        report.spectral_gap_empirical = spec.eigenvalues[2] - spec.eigenvalues[3];
    }
    if (truth != nullptr && model.dim == 3) {
        report.registration = register_model(model, *truth);
    }
    return report;
}

PipelineResult reconstruct(const CommonLinesDatum& datum, const DirectionSet* truth) {
    StageTimings timings;
    auto t0 = std::chrono::steady_clock::now();
    const BlockOperator op = assemble(datum);
    timings.assemble_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    PipelineResult result;
    result.spectrum = eigendecompose(op);
    timings.eigendecompose_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const IntrinsicModel model = extract_intrinsic(result.spectrum);
    timings.extract_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    result.report = make_report(result.spectrum, model, truth);
    timings.register_s = seconds_since(t0);
    result.report.timings = timings;
    return result;
}

std::vector<ClusterRow> cluster_spectrum(const Spectrum& spec, BlockKind kind,
                                         int n_max, double window) {
    if (n_max < 1) throw std::invalid_argument("cluster_spectrum: n_max must be >= 1");
    const int n_points = static_cast<int>(spec.eigenvalues.size()) / 2;
    if (n_max > max_resolvable_cluster(n_points)) {
        throw std::invalid_argument(
            "cluster_spectrum: n_max " + std::to_string(n_max) +
            " exceeds what a spectrum of " + std::to_string(2 * n_points) +
            " eigenvalues can resolve");
    }
    std::vector<ClusterRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        ClusterRow row;
        row.n = n;
        row.predicted = predicted_center(kind, n);
        row.multiplicity_predicted = predicted_multiplicity(kind, n);
        if (window > 0.0) {
            row.window = window;
        } else {
            // Half the distance to the nearest other predicted value. The
            // predictions alternate in sign, so the nearest neighbor of
            // lambda_n is lambda_{n+2} (or the accumulation point 0), not
            // lambda_{n+1}.
            double nearest = std::abs(row.predicted);  // distance to 0
            for (int m = 1; m <= n_max + 4; ++m) {
                if (m == n) continue;
                nearest = std::min(nearest,
                                   std::abs(row.predicted - predicted_center(kind, m)));
            }
            row.window = 0.5 * nearest;
        }
        double dev = 0.0;
        for (int k = 0; k < spec.eigenvalues.size(); ++k) {
            const double d = std::abs(spec.eigenvalues[k] - row.predicted);
            if (d <= row.window) {
                ++row.count;
                dev += d;
            }
        }
        row.mean_abs_dev = row.count > 0 ? dev / row.count : 0.0;
        rows.push_back(row);
    }
    return rows;
}

Eigen::VectorXd canonical_section(const DirectionSet& ds, const Vec3& v) {
    const int n = ds.size();
    Eigen::VectorXd s(2 * n);
    const double scale = std::sqrt(1.5);
    for (int x = 0; x < n; ++x) {
        const Vec2 pr = ds.frames[x].project(v);
        s[2 * x] = scale * pr.x();
        s[2 * x + 1] = scale * pr.y();
    }
    return s;
}

}  // namespace orient
