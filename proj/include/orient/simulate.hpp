#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/kernels.hpp"

namespace orient {

// Gaussian-mixture density standing in for the imaged particle. Its Fourier
// transform is available in closed form, so slices carry no gridding error.
struct GaussianComponent {
    Vec3 center;
    double amplitude = 1.0;
    double sigma = 0.1;
};

struct Phantom {
    std::vector<GaussianComponent> components;
};

inline constexpr double kMinPhantomSigma = 0.05;

// At least 3 components, centers not all collinear, all sigmas above the
// configured minimum.
bool phantom_is_generic(const Phantom& phantom, double min_sigma = kMinPhantomSigma);

// 8 components, centers uniform in the ball of radius 0.6, amplitudes in
// [0.5, 2], sigmas in [0.08, 0.2]; redrawn until generic. Deterministic per
// seed.
Phantom default_phantom(std::uint64_t seed);

// Closed-form Fourier transform of the mixture at frequency xi.
std::complex<double> phantom_fourier(const Phantom& phantom, const Vec3& xi);

// The plane restriction of the 3D Fourier transform, sampled on polar rays:
// values(a, b) at xi = r_b (cos(theta_a) b1 + sin(theta_a) b2), with
// theta_a = 2 pi a / n_theta and r_b = r_max (b+1) / n_r (r = 0 excluded).
struct PolarSlice {
    int node = -1;
    int n_theta = 0;
    int n_r = 0;
    double r_max = 0.0;
    PlaneBasis frame;
    Eigen::MatrixXcd values;  // n_theta x n_r

    double theta_of(int a) const { return 2.0 * M_PI * a / n_theta; }
};

// Requires n_theta even (so opposite rays pair exactly) and n_r >= 4.
PolarSlice fourier_slice(const Phantom& phantom, const PlaneBasis& frame,
                         int n_theta, int n_r, double r_max, int node = -1);

// Mean signal power of a slice, area-weighted over the sampled frequency
// disc (the polar grid oversamples low frequencies; the area weighting makes
// this the image-domain power, via Parseval).
double mean_signal_power(const PolarSlice& slice);

// Complex Gaussian noise with per-sample variance mean_signal_power/snr.
// Drawn on half the rays and mirror-conjugated to the other half, so the
// Hermitian ray symmetry of a real density survives. Deterministic per seed.
// snr = +infinity returns the slice unchanged; snr <= 0 is rejected.
PolarSlice add_noise(const PolarSlice& slice, double snr, std::uint64_t seed);

struct PairDetection {
    int i = 0;
    int j = 0;
    double alpha = 0.0;  // detected angle in slice i, canonicalized to [0, pi)
    double beta = 0.0;   // detected angle in slice j, in [0, 2 pi)
    double score = 0.0;  // normalized correlation in [-1, 1]
    bool degenerate = false;
};

struct DetectionResult {
    int n_theta = 0;
    std::vector<PairDetection> pairs;   // all pairs, including degenerate ones
    int degenerate_count = 0;
};

// Radial-line correlation matching over all pairs: maximizes the weighted
// normalized correlation Re<ray_i(alpha), ray_j(beta)> over the angular
// grid, weight w(r) = r. Degenerate pairs (zero ray, or same-plane slices
// where every angle matches) are flagged and left out of the datum.
// threads = 0 picks the hardware count.
std::pair<CommonLinesDatum, DetectionResult> detect_common_lines(
    const std::vector<PolarSlice>& slices, int threads = 0);

struct DetectionErrorSummary {
    double mean_error = 0.0;    // radians
    double median_error = 0.0;  // radians
    double max_error = 0.0;     // radians
    double fraction_within_one_bin = 0.0;
    double fraction_within_two_bins = 0.0;
    std::vector<int> histogram;     // counts per bin-width bucket
    double histogram_bin_width = 0.0;
};

// Angular error of each detected pair against the oracle datum, modulo the
// simultaneous (alpha, beta) -> (alpha + pi, beta + pi) flip. Degenerate
// pairs are skipped.
DetectionErrorSummary compare_to_oracle(const DetectionResult& result,
                                        const DirectionSet& truth);

}  // namespace orient
