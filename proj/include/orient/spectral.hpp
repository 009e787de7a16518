#pragma once

#include <optional>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/kernels.hpp"

namespace orient {

// Symmetric 2N x 2N operator laid out as an N x N grid of 2x2 blocks, one
// per ordered node pair. Diagonal blocks are zero; off-diagonal block (i, j)
// is the pairwise kernel scaled by 1/N.
struct BlockOperator {
    int n = 0;
    BlockKind kind = BlockKind::Common;
    Eigen::MatrixXd m;
};

// Assemble from an abstract datum. Only the Common kind is available here:
// the other kernels need the normals, which the datum deliberately lacks.
// Throws MalformedDatumError (with the pair id) when a pair is missing.
BlockOperator assemble(const CommonLinesDatum& datum, BlockKind kind = BlockKind::Common);

// Assemble any kind from known geometry.
BlockOperator assemble(const DirectionSet& ds, BlockKind kind);

// Full eigendecomposition, eigenvalues descending, eigenvectors orthonormal
// columns in matching order.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

Spectrum eigendecompose(const BlockOperator& op);

// Eigenpairs above the 1/3 threshold, reshaped into the per-node maps
// phi_x : P_x -> V_N (each a dim x 2 matrix, sqrt(2/3) times the transposed
// node rows of the eigenbasis).
struct IntrinsicModel {
    int n = 0;              // node count
    int dim = 0;            // eigenvalues above 1/3
    Eigen::MatrixXd basis;  // 2n x dim, orthonormal columns
    Eigen::VectorXd eigenvalues;
    std::vector<Eigen::MatrixXd> phi_maps;  // n entries, each dim x 2
    bool dim_warning = false;               // dim != 3
    std::vector<double> eigenvalues_near_threshold;  // context for the warning
};

IntrinsicModel extract_intrinsic(const Spectrum& spec);

struct StageTimings {
    double assemble_s = 0.0;
    double eigendecompose_s = 0.0;
    double extract_s = 0.0;
    double register_s = 0.0;
};

struct RegistrationResult {
    Mat3 q;              // orthogonal alignment fitted over O(3)
    double det_q = 0.0;  // +1 or -1; chirality is not identifiable from lines
    double mean_angular_error = 0.0;    // radians
    double median_angular_error = 0.0;  // radians
    double max_angular_error = 0.0;     // radians
    std::vector<double> frame_residuals;  // per node, ||Q i_x - phi_x||_F
    double residual_total = 0.0;          // sqrt(sum of squares)
};

struct ReconstructionReport {
    int n = 0;
    int dim_intrinsic = 0;
    bool dim_warning = false;
    std::vector<double> top_eigenvalues;  // first 30 (or fewer)
    double spectral_gap_empirical = 0.0;  // 3rd minus 4th largest
    std::optional<RegistrationResult> registration;
    StageTimings timings;
};

// Orthogonal Procrustes fit of the intrinsic maps against ground truth:
// minimizes sum_x ||Q i_x - phi_x||_F^2 over the full orthogonal group,
// then recovers per-node viewing directions from Q^T phi_x and reports
// angular errors. Requires model.dim == 3 (DimMismatchError otherwise).
RegistrationResult register_model(const IntrinsicModel& model, const DirectionSet& truth);

// Report assembled from the spectrum, the model and (optionally) a
// registration against truth.
ReconstructionReport make_report(const Spectrum& spec, const IntrinsicModel& model,
                                 const DirectionSet* truth);

// Full pipeline: assemble C_N, eigendecompose, extract, register when truth
// is provided and dim == 3. Fills stage timings; keeps the spectrum for
// export.
struct PipelineResult {
    ReconstructionReport report;
    Spectrum spectrum;
};
PipelineResult reconstruct(const CommonLinesDatum& datum, const DirectionSet* truth);

// Empirical eigenvalue clusters against the predicted discrete spectrum.
struct ClusterRow {
    int n = 0;
    double predicted = 0.0;
    int multiplicity_predicted = 0;
    int count = 0;             // empirical eigenvalues within the window
    double mean_abs_dev = 0.0; // over the eigenvalues inside the window
    double window = 0.0;
};

// window <= 0 selects the default: for each cluster, half the distance from
// its predicted value to the nearest other predicted value (the accumulation
// point 0 included). Guards against asking for more clusters than a spectrum
// of this size can resolve.
std::vector<ClusterRow> cluster_spectrum(const Spectrum& spec, BlockKind kind,
                                         int n_max, double window = 0.0);

// The stacked section s_v(x) = sqrt(3/2) Pr_x(v) in frame coordinates; an
// approximate eigenvector of the Common operator with eigenvalue 1/2.
Eigen::VectorXd canonical_section(const DirectionSet& ds, const Vec3& v);

}  // namespace orient
