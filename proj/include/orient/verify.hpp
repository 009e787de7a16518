#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orient/io.hpp"
#include "orient/theory.hpp"

namespace orient {

// Named tolerances for the verification suites; each one is overridable
// from the command line.
struct VerifyOptions {
    int n = 400;
    std::uint64_t seed = 1;
    double tol_eigen = 1e-9;        // closed form vs quadrature eigenvalues
    double tol_quad = 1e-10;        // I^k(t) vs closed forms
    double tol_generating = 1e-10;  // Legendre generating identity
    double cluster_window = 0.0;    // 0 picks the predicted-gap rule
    double tol_trace = 1e-12;       // trace identity
    double tol_kernel = 1e-10;      // T = C - O and kernel laws
    double tol_embed = 0.05;        // canonical-embedding residual
    QuadratureConfig quadrature;
};

Verdict verify_eigenvalues(const VerifyOptions& opts);
Verdict verify_quadrature(const VerifyOptions& opts);
Verdict verify_clusters(const VerifyOptions& opts);
Verdict verify_isometry(const VerifyOptions& opts);
Verdict verify_kernel_identities(const VerifyOptions& opts);

std::vector<std::string> verify_suite_names();

// Throws std::invalid_argument for an unknown suite name.
Verdict run_verify_suite(const std::string& suite, const VerifyOptions& opts);

}  // namespace orient
