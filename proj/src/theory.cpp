#include "orient/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace orient {

double lambda_closed_form(int n) {
    if (n < 1) throw std::invalid_argument("lambda_closed_form: n must be >= 1");
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return sign / (static_cast<double>(n) * (n + 1));
}

double predicted_center(BlockKind kind, int n) {
    const double l = lambda_closed_form(n);
    return kind == BlockKind::Orthographic ? -l : l;
}

int predicted_multiplicity(BlockKind kind, int n) {
    if (n < 1) throw std::invalid_argument("predicted_multiplicity: n must be >= 1");
    const int base = 2 * n + 1;
    return kind == BlockKind::Transport ? 2 * base : base;
}

std::vector<PredictedLevel> predicted_spectrum(int n_max) {
    if (n_max < 1) throw std::invalid_argument("predicted_spectrum: n_max must be >= 1");
    std::vector<PredictedLevel> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        out.push_back({n, lambda_closed_form(n), 2 * n + 1, 2 * (2 * n + 1)});
    }
    return out;
}

int max_resolvable_cluster(int n_points) {
    // sum_{n<=m} 2(2n+1) = 2m^2 + 4m must fit in 2*n_points.
    int m = 0;
    while ((m + 1) * (m + 1) + 2 * (m + 1) <= n_points) ++m;
    return m;
}

double legendre_p(int n, double c) {
    if (n < 0) throw std::invalid_argument("legendre_p: n must be >= 0");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = c;
    for (int k = 1; k < n; ++k) {
        const double pk1 = ((2.0 * k + 1.0) * c * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = pk1;
    }
    return p;
}

LegendreDerivs legendre_derivs(int n, double c) {
    if (n < 0) throw std::invalid_argument("legendre_derivs: n must be >= 0");
    // P'_{k+1} = P'_{k-1} + (2k+1) P_k and its c-derivative.
    double p = 1.0, dp = 0.0, d2p = 0.0;
    double pm1 = 0.0, dpm1 = 0.0, d2pm1 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double pk1 = (k == 0) ? c : ((2.0 * k + 1.0) * c * p - k * pm1) / (k + 1.0);
        const double dpk1 = dpm1 + (2.0 * k + 1.0) * p;
        const double d2pk1 = d2pm1 + (2.0 * k + 1.0) * dp;
        pm1 = p; dpm1 = dp; d2pm1 = d2p;
        p = pk1; dp = dpk1; d2p = d2pk1;
    }
    return {p, dp, d2p};
}

QuadratureRule gauss_legendre(int points) {
    if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
    QuadratureRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    const int half = (points + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (points + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // P_m(x) and P'_m(x) by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < points; ++k) {
                const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = points * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[points - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[points - 1 - i] = w;
    }
    return rule;
}

QuadratureRule quadrature_rule(const QuadratureConfig& cfg) {
    if (cfg.points_per_panel < 2 || cfg.panels < 1) {
        throw std::invalid_argument("quadrature_rule: bad configuration");
    }
    const QuadratureRule base = gauss_legendre(cfg.points_per_panel);
    QuadratureRule rule;
    const std::size_t total =
        static_cast<std::size_t>(cfg.points_per_panel) * cfg.panels;
    rule.nodes.reserve(total);
    rule.weights.reserve(total);
    const double width = M_PI / cfg.panels;
    for (int p = 0; p < cfg.panels; ++p) {
        const double a = p * width;
        for (int i = 0; i < cfg.points_per_panel; ++i) {
            rule.nodes.push_back(a + 0.5 * width * (base.nodes[i] + 1.0));
            rule.weights.push_back(0.5 * width * base.weights[i]);
        }
    }
    return rule;
}

GeneratingValues generating_functions(double theta, double t) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double d = 1.0 - 2.0 * t * c + t * t;
    GeneratingValues gv;
    gv.g = Complex(1.0 / std::sqrt(d), 0.0);
    gv.eg = Complex(0.0, t * s * std::pow(d, -1.5));
    gv.e2g = Complex(-3.0 * t * t * s * s * std::pow(d, -2.5), 0.0);
    return gv;
}

namespace {

// Generating function values at complex t (principal branch; analytic for
// |t| < 1 since both factors of 1 - 2 t cos(theta) + t^2 stay in the right
// half plane).
Complex gen_complex(int k, double theta, Complex t) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex d = 1.0 - 2.0 * t * c + t * t;
    switch (k) {
        case 0: return std::pow(d, -0.5);
        case 1: return Complex(0.0, 1.0) * t * s * std::pow(d, -1.5);
        case 2: return -3.0 * t * t * s * s * std::pow(d, -2.5);
        default: throw std::invalid_argument("generating function: k must be 0, 1 or 2");
    }
}

}  // namespace

Complex j_profile(int k, double theta) {
    switch (k) {
        case 0: return Complex(std::cos(theta) + 1.0, 0.0);
        case 1: return Complex(0.0, 2.0 * std::sin(theta));
        case 2: return Complex(2.0 * std::cos(theta) - 2.0, 0.0);
        default: throw std::invalid_argument("j_profile: k must be 0, 1 or 2");
    }
}

Complex raised_legendre(int k, int n, double theta) {
    if (n < 1) throw std::invalid_argument("raised_legendre: n must be >= 1");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const LegendreDerivs d = legendre_derivs(n - 1, c);
    switch (k) {
        case 0: return Complex(d.p, 0.0);
        case 1: return Complex(0.0, s * d.dp);
        case 2: return Complex(-s * s * d.d2p, 0.0);
        default: throw std::invalid_argument("raised_legendre: k must be 0, 1 or 2");
    }
}

std::vector<double> taylor_coefficients(const std::function<Complex(Complex)>& f,
                                        int n_max, double radius, int samples) {
    if (n_max < 0 || radius <= 0.0 || samples <= n_max) {
        throw std::invalid_argument("taylor_coefficients: bad arguments");
    }
    // Sample on the circle |t| = radius at Chebyshev-Gauss angles; for a
    // function with real Taylor coefficients, Re f(r e^{i phi}) is the cosine
    // series sum a_m r^m cos(m phi).
    std::vector<double> re(samples);
    std::vector<double> phi(samples);
    for (int j = 0; j < samples; ++j) {
        phi[j] = M_PI * (j + 0.5) / samples;
        re[j] = f(radius * Complex(std::cos(phi[j]), std::sin(phi[j]))).real();
    }
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    double rn = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        double acc = 0.0;
        for (int j = 0; j < samples; ++j) acc += re[j] * std::cos(n * phi[j]);
        out[n] = (n == 0 ? 1.0 : 2.0) * acc / (samples * rn);
        rn *= radius;
    }
    return out;
}

Complex raised_legendre_via_generating(int k, int n, double theta) {
    if (n < 1) throw std::invalid_argument("raised_legendre_via_generating: n must be >= 1");
    // E^1 G has purely imaginary coefficients; divide out the phase so the
    // extraction sees a real-coefficient series.
    const Complex phase = (k == 1) ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    const auto f = [&](Complex t) { return gen_complex(k, theta, t) / phase; };
    const std::vector<double> a = taylor_coefficients(f, n - 1, 0.5, 64);
    return phase * a[static_cast<std::size_t>(n) - 1];
}

Complex integral_generating_at(int k, Complex t, const QuadratureConfig& cfg) {
    const QuadratureRule rule = quadrature_rule(cfg);
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double theta = rule.nodes[i];
        const double mu = 0.5 * std::sin(theta);
        acc += rule.weights[i] * mu * gen_complex(k, theta, t) * j_profile(k, theta);
    }
    return 0.5 * acc;
}

Complex integral_generating(int k, double t, const QuadratureConfig& cfg) {
    return integral_generating_at(k, Complex(t, 0.0), cfg);
}

double integral_generating_closed_form(int k, double t) {
    switch (k) {
        case 0: return 0.5 * (1.0 + t / 3.0);
        case 1: return 0.5 * (-4.0 / 3.0 * t);
        // Equals 2 t^2 / (1 + t), the sum of the series 2 sum_{n>=2} (-t)^n.
        case 2: return 0.5 * (4.0 / (1.0 + t) + 4.0 * t - 4.0);
        default: throw std::invalid_argument("integral closed form: k must be 0, 1 or 2");
    }
}

IntegralTriple integral_coefficients(int n, const QuadratureConfig& cfg) {
    if (n < 1) throw std::invalid_argument("integral_coefficients: n must be >= 1");
    const QuadratureRule rule = quadrature_rule(cfg);
    double acc[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double theta = rule.nodes[i];
        const double mu = 0.5 * std::sin(theta);
        for (int k = 0; k < 3; ++k) {
            const Complex term = raised_legendre(k, n, theta) * j_profile(k, theta);
            acc[k] += rule.weights[i] * mu * term.real();
        }
    }
    return {0.5 * acc[0], 0.5 * acc[1], 0.5 * acc[2]};
}

double lambda_from_integrals(int n, const QuadratureConfig& cfg) {
    const IntegralTriple t = integral_coefficients(n, cfg);
    const double nn = n;
    return t.i0 + t.i1 / nn + t.i2 / (2.0 * nn * (nn + 1.0));
}

double quadrature_self_check(const QuadratureConfig& cfg) {
    QuadratureConfig doubled = cfg;
    doubled.points_per_panel *= 2;
    const double probe_t[] = {-0.9, -0.5, 0.0, 0.3, 0.7, 0.9};
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        for (double t : probe_t) {
            const double delta =
                std::abs(integral_generating(k, t, cfg) - integral_generating(k, t, doubled));
            worst = std::max(worst, delta);
        }
    }
    return worst;
}

double trace_isometry_estimate(std::span<const PlaneBasis> frames) {
    if (frames.empty()) {
        throw std::invalid_argument("trace_isometry_estimate: no frames");
    }
    double acc = 0.0;
    for (const PlaneBasis& f : frames) {
        const Eigen::Matrix<double, 3, 2> e = f.embedding();
        acc += (e.transpose() * e).trace();
    }
    return 1.5 * acc / static_cast<double>(frames.size());
}

double trace_isometry_check(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("trace_isometry_check: m must be >= 1");
    RandomStream rng(seed);
    std::vector<PlaneBasis> frames;
    frames.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) frames.push_back(canonical_frame(rng.unit_vector()));
    return trace_isometry_estimate(frames);
}

}  // namespace orient
