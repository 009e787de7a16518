#include <doctest.h>

#include <cmath>

#include "orient/theory.hpp"

using namespace orient;

TEST_CASE("closed-form eigenvalues") {
    CHECK(lambda_closed_form(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lambda_closed_form(2) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(lambda_closed_form(3) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    // The spectral gap separating the top eigenvalue.
    CHECK(lambda_closed_form(1) - lambda_closed_form(3) ==
          doctest::Approx(5.0 / 12.0).epsilon(1e-15));
    CHECK_THROWS_AS(lambda_closed_form(0), std::invalid_argument);

    // |lambda_n| strictly decreasing toward zero.
    for (int n = 1; n < 40; ++n) {
        CHECK(std::abs(lambda_closed_form(n)) > std::abs(lambda_closed_form(n + 1)));
    }
}

TEST_CASE("predicted multiplicities") {
    CHECK(predicted_multiplicity(BlockKind::Common, 1) == 3);
    CHECK(predicted_multiplicity(BlockKind::Orthographic, 2) == 5);
    CHECK(predicted_multiplicity(BlockKind::Transport, 3) == 14);
    CHECK(predicted_center(BlockKind::Orthographic, 2) == doctest::Approx(1.0 / 6.0));
    const auto levels = predicted_spectrum(4);
    REQUIRE(levels.size() == 4);
    CHECK(levels[3].lambda == doctest::Approx(-1.0 / 20.0));
    CHECK(levels[3].multiplicity_transport == 18);
}

TEST_CASE("max resolvable cluster bound") {
    // sum_{n<=m} 2(2n+1) = 2m^2 + 4m <= 2N  <=>  m^2 + 2m <= N.
    CHECK(max_resolvable_cluster(3) == 1);
    CHECK(max_resolvable_cluster(7) == 1);
    CHECK(max_resolvable_cluster(8) == 2);
    CHECK(max_resolvable_cluster(400) == 19);
}

TEST_CASE("legendre recurrence basics") {
    CHECK(legendre_p(0, 0.37) == doctest::Approx(1.0));
    CHECK(legendre_p(1, 0.37) == doctest::Approx(0.37));
    CHECK(legendre_p(2, 0.0) == doctest::Approx(-0.5).epsilon(1e-15));
    for (int n = 0; n <= 25; ++n) {
        CHECK(legendre_p(n, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("legendre generating identity") {
    // Partial sums against (1 - 2 t cos(theta) + t^2)^(-1/2).
    const double t = 0.3, theta = 1.0;
    double sum = 0.0, tn = 1.0;
    for (int n = 0; n <= 30; ++n) {
        sum += legendre_p(n, std::cos(theta)) * tn;
        tn *= t;
    }
    CHECK(std::abs(sum - generating_functions(theta, t).g.real()) < 1e-10);

    // Full 10 x 10 grid; |t| <= 0.405 keeps the 31-term tail below 3e-13.
    for (int ti = 0; ti < 10; ++ti) {
        const double tv = -0.405 + 0.09 * ti;
        for (int hi = 0; hi < 10; ++hi) {
            const double th = M_PI * (hi + 0.5) / 10.0;
            double acc = 0.0, power = 1.0;
            for (int n = 0; n <= 30; ++n) {
                acc += legendre_p(n, std::cos(th)) * power;
                power *= tv;
            }
            CHECK(std::abs(acc - generating_functions(th, tv).g.real()) < 1e-10);
        }
    }
}

TEST_CASE("legendre derivative recurrences against finite differences") {
    const double h = 1e-6;
    for (int n : {1, 2, 3, 5, 8, 12}) {
        for (double c : {-0.7, -0.2, 0.1, 0.5, 0.9}) {
            const LegendreDerivs d = legendre_derivs(n, c);
            CHECK(d.p == doctest::Approx(legendre_p(n, c)).epsilon(1e-14));
            const double fd1 = (legendre_p(n, c + h) - legendre_p(n, c - h)) / (2.0 * h);
            CHECK(d.dp == doctest::Approx(fd1).epsilon(1e-6));
            const double fd2 =
                (legendre_p(n, c + h) - 2.0 * legendre_p(n, c) + legendre_p(n, c - h)) /
                (h * h);
            CHECK(d.d2p == doctest::Approx(fd2).epsilon(2e-3));
        }
    }
}

TEST_CASE("generating function values") {
    // theta -> 0 limit: G(0, 0, t) = 1/(1 - t).
    const GeneratingValues near_pole = generating_functions(1e-8, 0.4);
    CHECK(std::abs(near_pole.g.real() - 1.0 / 0.6) < 1e-6);

    // EG at theta = pi/2, t = 0.5: i * 0.5 * 1.25^(-3/2).
    const GeneratingValues mid = generating_functions(M_PI / 2.0, 0.5);
    CHECK(mid.eg.real() == doctest::Approx(0.0));
    CHECK(mid.eg.imag() == doctest::Approx(0.5 * std::pow(1.25, -1.5)).epsilon(1e-14));

    // E2G vanishes at t = 0 for every theta.
    for (double theta : {0.3, 1.0, 2.5}) {
        CHECK(std::abs(generating_functions(theta, 0.0).e2g) < 1e-15);
    }
}

TEST_CASE("j profiles") {
    CHECK(j_profile(0, 0.0).real() == doctest::Approx(2.0));
    CHECK(j_profile(1, M_PI / 2.0).imag() == doctest::Approx(2.0));
    CHECK(std::abs(j_profile(2, 0.0)) < 1e-15);
    CHECK_THROWS_AS(j_profile(3, 0.0), std::invalid_argument);
}

TEST_CASE("quadrature rule integrates exactly") {
    const QuadratureConfig cfg;
    const QuadratureRule rule = quadrature_rule(cfg);
    REQUIRE(rule.nodes.size() == 64 * 8);
    double length = 0.0, sine = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        length += rule.weights[i];
        sine += rule.weights[i] * std::sin(rule.nodes[i]);
    }
    CHECK(length == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(sine == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("quadrature self-consistency under doubling") {
    CHECK(quadrature_self_check(QuadratureConfig{}) < 1e-12);
}

TEST_CASE("integral generating functions match closed forms") {
    const QuadratureConfig cfg;
    CHECK(std::abs(integral_generating(0, 0.0, cfg).real() - 0.5) < 1e-12);
    CHECK(std::abs(integral_generating(1, 0.5, cfg).real() - (-1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(integral_generating(2, 0.0, cfg)) < 1e-12);

    for (int k = 0; k < 3; ++k) {
        for (double t : {-0.9, -0.5, 0.0, 0.3, 0.7, 0.9}) {
            const Complex v = integral_generating(k, t, cfg);
            CHECK(std::abs(v.imag()) < 1e-14);
            CHECK(std::abs(v.real() - integral_generating_closed_form(k, t)) < 1e-10);
        }
    }
}

TEST_CASE("coefficient integrals match the worked rows") {
    const QuadratureConfig cfg;
    // n = 1: the generating function I^0(t) = (1 + t/3)/2 forces I_1^0 = 1/2.
    const IntegralTriple n1 = integral_coefficients(1, cfg);
    CHECK(n1.i0 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(n1.i1) < 1e-12);
    CHECK(std::abs(n1.i2) < 1e-12);

    const IntegralTriple n2 = integral_coefficients(2, cfg);
    CHECK(n2.i0 == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(n2.i1 == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(n2.i2) < 1e-12);

    const IntegralTriple n3 = integral_coefficients(3, cfg);
    CHECK(std::abs(n3.i0) < 1e-12);
    CHECK(std::abs(n3.i1) < 1e-12);
    CHECK(n3.i2 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("eigenvalues from integrals agree with the closed form") {
    const QuadratureConfig cfg;
    for (int n = 1; n <= 20; ++n) {
        CHECK(std::abs(lambda_from_integrals(n, cfg) - lambda_closed_form(n)) < 1e-9);
    }
}

TEST_CASE("raised legendre: recurrence route vs generating-function route") {
    for (int k = 0; k < 3; ++k) {
        for (int n = 1; n <= 12; ++n) {
            for (double theta : {0.3, 0.9, 1.7, 2.6}) {
                const Complex a = raised_legendre(k, n, theta);
                const Complex b = raised_legendre_via_generating(k, n, theta);
                CHECK(std::abs(a - b) < 1e-9);
            }
        }
    }
}

TEST_CASE("chebyshev extraction of I^k coefficients matches direct integrals") {
    // The I^k(t) all have real Taylor coefficients, so no phase handling here.
    const QuadratureConfig cfg;
    for (int k = 0; k < 3; ++k) {
        const auto f = [&](Complex t) { return integral_generating_at(k, t, cfg); };
        const std::vector<double> coeffs = taylor_coefficients(f, 12, 0.5, 64);
        for (int n = 1; n <= 12; ++n) {
            const IntegralTriple direct = integral_coefficients(n, cfg);
            const double want = k == 0 ? direct.i0 : (k == 1 ? direct.i1 : direct.i2);
            // I^k(t) = sum I_{n+1}^k t^n, so index n-1 holds I_n^k.
            CHECK(std::abs(coeffs[static_cast<std::size_t>(n) - 1] - want) < 1e-8);
        }
    }
}

TEST_CASE("trace identity") {
    CHECK(std::abs(trace_isometry_check(1000, 3) - 3.0) < 1e-12);
    CHECK(std::abs(trace_isometry_check(1, 99) - 3.0) < 1e-12);
    CHECK(std::abs(trace_isometry_check(100, 12345) - 3.0) < 1e-12);
    CHECK_THROWS_AS(trace_isometry_check(0, 1), std::invalid_argument);
}

TEST_CASE("trace identity detects a corrupted projector") {
    RandomStream rng(5);
    std::vector<PlaneBasis> frames;
    for (int i = 0; i < 100; ++i) frames.push_back(canonical_frame(rng.unit_vector()));
    frames[17].b1 *= 1.001;  // no longer an isometric embedding
    CHECK(std::abs(trace_isometry_estimate(frames) - 3.0) > 1e-6);
}
