#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/kernels.hpp"

namespace orient {

using Complex = std::complex<double>;

// lambda_n = (-1)^(n-1) / (n (n+1)), n >= 1.
double lambda_closed_form(int n);

// Predicted eigenvalue cluster center for an assembled operator of the given
// kind: lambda_n for Common and Transport, -lambda_n for Orthographic.
double predicted_center(BlockKind kind, int n);

// Predicted cluster multiplicity: 2n+1 for Common and Orthographic,
// 2(2n+1) for Transport (both parity copies).
int predicted_multiplicity(BlockKind kind, int n);

struct PredictedLevel {
    int n;
    double lambda;
    int multiplicity_common;     // 2n+1
    int multiplicity_transport;  // 2(2n+1)
};

std::vector<PredictedLevel> predicted_spectrum(int n_max);

// Largest n_max whose cumulative transport multiplicity fits in a spectrum
// of 2*n_points eigenvalues: sum_{n<=m} 2(2n+1) <= 2 n_points.
int max_resolvable_cluster(int n_points);

// Classical Legendre polynomial P_n(c), three-term recurrence, P_n(1) = 1.
double legendre_p(int n, double c);

// P_n, P_n', P_n'' at c via the derivative recurrences
// P'_{k+1} = (2k+1) P_k + P'_{k-1} and its derivative.
struct LegendreDerivs {
    double p;
    double dp;
    double d2p;
};
LegendreDerivs legendre_derivs(int n, double c);

// Composite Gauss-Legendre rule on (0, pi).
struct QuadratureConfig {
    int points_per_panel = 64;
    int panels = 8;
};

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights for the composite rule on (0, pi).
QuadratureRule quadrature_rule(const QuadratureConfig& cfg);

// Gauss-Legendre nodes/weights on (-1, 1) by Newton iteration.
QuadratureRule gauss_legendre(int points);

// Closed-form generating function values at azimuth 0:
//   G    = (1 - 2 t cos(theta) + t^2)^(-1/2)
//   EG   = i t sin(theta) (1 - 2 t cos(theta) + t^2)^(-3/2)
//   E2G  = -3 t^2 sin^2(theta) (1 - 2 t cos(theta) + t^2)^(-5/2)
struct GeneratingValues {
    Complex g;
    Complex eg;
    Complex e2g;
};
GeneratingValues generating_functions(double theta, double t);

// j^0 = cos(theta) + 1, j^1 = 2 i sin(theta), j^2 = 2 cos(theta) - 2.
Complex j_profile(int k, double theta);

// The raised spherical function E^k P_{n-1} at azimuth 0:
//   k=0: P_{n-1}(cos theta)
//   k=1: i sin(theta) P'_{n-1}(cos theta)
//   k=2: -sin^2(theta) P''_{n-1}(cos theta)
Complex raised_legendre(int k, int n, double theta);

// Same value extracted as the t^(n-1) Taylor coefficient of
// E^k G(0, theta, t) sampled on a Chebyshev-Gauss grid — the independent
// route; agrees with raised_legendre to ~1e-9.
Complex raised_legendre_via_generating(int k, int n, double theta);

// I^k(t) = 1/2 * integral_0^pi mu(theta) E^k G(0,theta,t) j^k(theta) dtheta,
// mu(theta) = sin(theta)/2. Matches the closed forms
//   I^0 = (1 + t/3)/2,  I^1 = -2t/3,  I^2 = 2(1+t)^(-1) - 2t - 2.
Complex integral_generating(int k, double t, const QuadratureConfig& cfg);

// Closed forms of the three I^k(t), for verification.
double integral_generating_closed_form(int k, double t);

// The coefficient integrals (I_n^0, I_n^1, I_n^2); all three are real.
struct IntegralTriple {
    double i0;
    double i1;
    double i2;
};
IntegralTriple integral_coefficients(int n, const QuadratureConfig& cfg);

// lambda_n = I_n^0 + I_n^1 / n + I_n^2 / (2 n (n+1)); agrees with
// lambda_closed_form to ~1e-9 at the default quadrature.
double lambda_from_integrals(int n, const QuadratureConfig& cfg);

// Max change of the I^k(t) probe grid when the node count doubles; the
// self-consistency figure stored alongside verification results.
double quadrature_self_check(const QuadratureConfig& cfg);

// Taylor coefficients a_0..a_n_max of an analytic f with real Taylor
// coefficients, from samples of f on the circle |t| = radius taken at
// Chebyshev-Gauss angles.
std::vector<double> taylor_coefficients(const std::function<Complex(Complex)>& f,
                                        int n_max, double radius, int samples);

// integral_generating at complex t (same quadrature); used for Taylor
// coefficient extraction.
Complex integral_generating_at(int k, Complex t, const QuadratureConfig& cfg);

// Monte-Carlo estimate of (3/2) * integral Tr(i_x^T i_x) dx over given
// frames; every integrand term is exactly 2, so the estimate is 3 up to
// floating error whenever the frame plumbing is correct.
double trace_isometry_estimate(std::span<const PlaneBasis> frames);

// As above with m uniform random frames. Requires m >= 1.
double trace_isometry_check(int m, std::uint64_t seed);

}  // namespace orient
