#include "orient/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace orient {

bool phantom_is_generic(const Phantom& phantom, double min_sigma) {
    const std::size_t k = phantom.components.size();
    if (k < 3) return false;
    Vec3 mean = Vec3::Zero();
    for (const GaussianComponent& g : phantom.components) {
        if (g.sigma < min_sigma) return false;
        mean += g.center;
    }
    mean /= static_cast<double>(k);
    Eigen::MatrixXd centered(3, static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        centered.col(static_cast<Eigen::Index>(i)) = phantom.components[i].center - mean;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
    // Collinear centers have at most one nonzero singular value.
    return svd.singularValues()(1) > 1e-9;
}

Phantom default_phantom(std::uint64_t seed) {
    RandomStream rng(seed);
    for (;;) {
        Phantom phantom;
        phantom.components.reserve(8);
        for (int i = 0; i < 8; ++i) {
            GaussianComponent g;
            // Uniform in the ball of radius 0.6 by rejection from the cube.
            for (;;) {
                const Vec3 c(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6),
                             rng.uniform(-0.6, 0.6));
                if (c.norm() <= 0.6) {
                    g.center = c;
                    break;
                }
            }
            g.amplitude = rng.uniform(0.5, 2.0);
            g.sigma = rng.uniform(0.08, 0.2);
            phantom.components.push_back(g);
        }
        if (phantom_is_generic(phantom)) return phantom;
    }
}

std::complex<double> phantom_fourier(const Phantom& phantom, const Vec3& xi) {
    const double norm_sq = xi.squaredNorm();
    std::complex<double> acc(0.0, 0.0);
    const double two_pi_cubed_sqrt = std::pow(2.0 * M_PI, 1.5);
    for (const GaussianComponent& g : phantom.components) {
        const double envelope = g.amplitude * two_pi_cubed_sqrt * g.sigma * g.sigma *
                                g.sigma * std::exp(-0.5 * g.sigma * g.sigma * norm_sq);
        const double phase = -g.center.dot(xi);
        acc += envelope * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
}

double mean_signal_power(const PolarSlice& slice) {
    // Area-weighted over the sampled frequency disc (weight proportional to
    // r), matching the image-domain power via Parseval; a plain per-sample
    // mean would overcount the oversampled low-frequency rings.
    double num = 0.0, den = 0.0;
    for (int b = 0; b < slice.n_r; ++b) {
        const double r = slice.r_max * (b + 1) / slice.n_r;
        for (int a = 0; a < slice.n_theta; ++a) {
            num += r * std::norm(slice.values(a, b));
        }
        den += r * slice.n_theta;
    }
    return num / den;
}

PolarSlice fourier_slice(const Phantom& phantom, const PlaneBasis& frame,
                         int n_theta, int n_r, double r_max, int node) {
    if (n_theta < 2 || n_theta % 2 != 0) {
        throw std::invalid_argument("fourier_slice: n_theta must be even and >= 2");
    }
    if (n_r < 4) throw std::invalid_argument("fourier_slice: n_r must be >= 4");
    if (!(r_max > 0.0)) throw std::invalid_argument("fourier_slice: r_max must be positive");

    PolarSlice slice;
    slice.node = node;
    slice.n_theta = n_theta;
    slice.n_r = n_r;
    slice.r_max = r_max;
    slice.frame = frame;
    slice.values.resize(n_theta, n_r);
    for (int a = 0; a < n_theta; ++a) {
        const double theta = slice.theta_of(a);
        const Vec3 dir = std::cos(theta) * frame.b1 + std::sin(theta) * frame.b2;
        for (int b = 0; b < n_r; ++b) {
            const double r = r_max * (b + 1) / n_r;
            slice.values(a, b) = phantom_fourier(phantom, r * dir);
        }
    }
    return slice;
}

PolarSlice add_noise(const PolarSlice& slice, double snr, std::uint64_t seed) {
    if (std::isinf(snr) && snr > 0.0) return slice;
    if (!(snr > 0.0)) throw std::invalid_argument("add_noise: snr must be positive");

    const double power = mean_signal_power(slice);
    const double sigma = std::sqrt(0.5 * power / snr);  // per real component

    PolarSlice out = slice;
    RandomStream rng(seed);
    const int half = slice.n_theta / 2;
    for (int a = 0; a < half; ++a) {
        for (int b = 0; b < slice.n_r; ++b) {
            const std::complex<double> z(sigma * rng.gaussian(), sigma * rng.gaussian());
            out.values(a, b) += z;
            out.values(a + half, b) += std::conj(z);
        }
    }
    return out;
}

namespace {

double circ_dist(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
    return std::min(d, 2.0 * M_PI - d);
}

// Rays packed as real vectors [Re * w; Im * w], normalized, one row per
// angle; correlation of two rays is then a plain dot product.
struct PackedSlice {
    Eigen::MatrixXd rows;  // n_theta x 2 n_r
    bool has_zero_ray = false;
};

PackedSlice pack_slice(const PolarSlice& slice) {
    PackedSlice packed;
    packed.rows.resize(slice.n_theta, 2 * slice.n_r);
    for (int a = 0; a < slice.n_theta; ++a) {
        for (int b = 0; b < slice.n_r; ++b) {
            // sqrt so that the correlation products carry weight w(r) = r.
            const double w = std::sqrt(slice.r_max * (b + 1) / slice.n_r);
            packed.rows(a, b) = w * slice.values(a, b).real();
            packed.rows(a, slice.n_r + b) = w * slice.values(a, b).imag();
        }
        const double norm = packed.rows.row(a).norm();
        if (norm < 1e-150) {
            packed.has_zero_ray = true;
        } else {
            packed.rows.row(a) /= norm;
        }
    }
    return packed;
}

}  // namespace

std::pair<CommonLinesDatum, DetectionResult> detect_common_lines(
    const std::vector<PolarSlice>& slices, int threads) {
    const int n = static_cast<int>(slices.size());
    if (n < 2) throw std::invalid_argument("detect_common_lines: need at least two slices");
    const int n_theta = slices[0].n_theta;
    const int n_r = slices[0].n_r;
    const double r_max = slices[0].r_max;
    for (const PolarSlice& s : slices) {
        if (s.n_theta != n_theta || s.n_r != n_r || s.r_max != r_max) {
            throw std::invalid_argument("detect_common_lines: slices disagree on grid");
        }
    }
    const int half = n_theta / 2;
    // A unique common line lights up one angular bin; a whole row of
    // near-ties means the planes coincide.
    const int tie_limit = std::max(4, n_theta / 8);

    std::vector<PackedSlice> packed(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) packed[static_cast<std::size_t>(i)] = pack_slice(slices[i]);

    std::vector<std::pair<int, int>> index;
    index.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) index.emplace_back(i, j);
    }

    std::vector<PairDetection> detections(index.size());
    const auto work = [&](std::size_t begin, std::size_t end) {
        Eigen::MatrixXd corr(half, n_theta);
        for (std::size_t p = begin; p < end; ++p) {
            const auto [i, j] = index[p];
            PairDetection det;
            det.i = i;
            det.j = j;
            if (packed[static_cast<std::size_t>(i)].has_zero_ray ||
                packed[static_cast<std::size_t>(j)].has_zero_ray) {
                det.degenerate = true;
                detections[p] = det;
                continue;
            }
            corr.noalias() = packed[static_cast<std::size_t>(i)].rows.topRows(half) *
                             packed[static_cast<std::size_t>(j)].rows.transpose();
            Eigen::Index best_a = 0, best_b = 0;
            det.score = corr.maxCoeff(&best_a, &best_b);
            det.alpha = 2.0 * M_PI * static_cast<double>(best_a) / n_theta;
            det.beta = 2.0 * M_PI * static_cast<double>(best_b) / n_theta;

            int tied_rows = 0;
            for (Eigen::Index a = 0; a < half; ++a) {
                if (corr.row(a).maxCoeff() >= det.score - 1e-9) ++tied_rows;
            }
            if (tied_rows >= tie_limit) det.degenerate = true;
            detections[p] = det;
        }
    };

    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min<int>(n_threads, static_cast<int>(index.size()));
    if (n_threads <= 1) {
        work(0, index.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        const std::size_t chunk = (index.size() + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const std::size_t begin = static_cast<std::size_t>(t) * chunk;
            const std::size_t end = std::min(index.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (std::thread& t : pool) t.join();
    }

    DetectionResult result;
    result.n_theta = n_theta;
    result.pairs = std::move(detections);

    CommonLinesDatum datum;
    datum.n = n;
    datum.provenance = Provenance::Detected;
    datum.pairs.reserve(result.pairs.size());
    for (const PairDetection& det : result.pairs) {
        if (det.degenerate) {
            ++result.degenerate_count;
            continue;
        }
        datum.pairs.push_back({det.i, det.j,
                               Vec2(std::cos(det.alpha), std::sin(det.alpha)),
                               Vec2(std::cos(det.beta), std::sin(det.beta))});
    }
    return {std::move(datum), std::move(result)};
}

DetectionErrorSummary compare_to_oracle(const DetectionResult& result,
                                        const DirectionSet& truth) {
    const CommonLinesDatum oracle = oracle_datum(truth);
    DetectionErrorSummary summary;
    const double bin = 2.0 * M_PI / result.n_theta;
    summary.histogram_bin_width = bin;
    summary.histogram.assign(21, 0);  // last bucket collects everything larger

    std::vector<double> errors;
    errors.reserve(result.pairs.size());
    int within_one = 0;
    int within_two = 0;
    for (const PairDetection& det : result.pairs) {
        if (det.degenerate) continue;
        const CommonLinesDatum::Pair* ref = oracle.find(det.i, det.j);
        if (ref == nullptr) continue;
        const double alpha_ref = std::atan2(ref->c_ij.y(), ref->c_ij.x());
        const double beta_ref = std::atan2(ref->c_ji.y(), ref->c_ji.x());
        // The simultaneous flip of both angles identifies the same line.
        double err = std::numeric_limits<double>::infinity();
        for (double flip : {0.0, M_PI}) {
            err = std::min(err, std::max(circ_dist(det.alpha, alpha_ref + flip),
                                         circ_dist(det.beta, beta_ref + flip)));
        }
        errors.push_back(err);
        if (err <= bin + 1e-12) ++within_one;
        if (err <= 2.0 * bin + 1e-12) ++within_two;
        const std::size_t bucket =
            std::min<std::size_t>(static_cast<std::size_t>(err / bin), 20);
        ++summary.histogram[bucket];
    }
    if (errors.empty()) return summary;

    std::vector<double> sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    double acc = 0.0;
    for (double e : errors) acc += e;
    summary.mean_error = acc / static_cast<double>(errors.size());
    summary.median_error = sorted[sorted.size() / 2];
    summary.max_error = sorted.back();
    summary.fraction_within_one_bin =
        static_cast<double>(within_one) / static_cast<double>(errors.size());
    summary.fraction_within_two_bins =
        static_cast<double>(within_two) / static_cast<double>(errors.size());
    return summary;
}

}  // namespace orient
