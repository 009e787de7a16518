// Command-line front end wiring the library into reproducible experiments.
// Exit codes: 0 success, 1 verification failure, 2 usage/IO error,
// 3 malformed input data.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "orient/errors.hpp"
#include "orient/io.hpp"
#include "orient/simulate.hpp"
#include "orient/spectral.hpp"
#include "orient/verify.hpp"

namespace fs = std::filesystem;
using orient::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMalformedInput = 3;

void warn_dim(const orient::ReconstructionReport& report) {
    if (!report.dim_warning) return;
    std::cerr << "warning: intrinsic dimension is " << report.dim_intrinsic
              << " (expected 3); eigenvalues near the 1/3 threshold:";
    const std::size_t lo = report.dim_intrinsic > 3 ? report.dim_intrinsic - 3 : 0;
    for (std::size_t k = lo;
         k < report.top_eigenvalues.size() && k < lo + 6; ++k) {
        std::cerr << ' ' << report.top_eigenvalues[k];
    }
    std::cerr << '\n';
}

int cmd_oracle_datum(int n, std::uint64_t seed, const fs::path& out_datum,
                     const fs::path& out_truth) {
    const Json config = {{"command", "oracle-datum"}, {"n", n}, {"seed", seed}};
    const orient::DirectionSet ds = orient::sample_uniform(n, seed);
    const orient::CommonLinesDatum datum = orient::oracle_datum(ds);
    orient::write_json_file(out_datum, orient::datum_to_json(datum, config));
    orient::write_json_file(out_truth, orient::truth_to_json(ds, config));
    return kExitOk;
}

struct SimulateArgs {
    int n = 50;
    std::uint64_t seed = 1;
    double snr = 0.0;  // 0 = no noise
    int n_theta = 360;
    int n_r = 64;
    double r_max = 32.0;
    int threads = 0;
    std::string phantom_path;
    std::string out_slices, out_sidecar, out_datum, out_truth, out_detection;
};

int cmd_simulate(const SimulateArgs& args) {
    const Json config = {{"command", "simulate"},
                         {"n", args.n},
                         {"seed", args.seed},
                         {"snr", args.snr},
                         {"n_theta", args.n_theta},
                         {"n_r", args.n_r},
                         {"r_max", args.r_max},
                         {"phantom", args.phantom_path}};

    // Resolve every input before creating any output.
    orient::Phantom phantom;
    if (!args.phantom_path.empty()) {
        phantom = orient::phantom_from_json(orient::read_json_file(args.phantom_path));
        if (!orient::phantom_is_generic(phantom)) {
            throw std::runtime_error("phantom file fails the genericity guard");
        }
    } else {
        phantom = orient::default_phantom(orient::derive_seed(args.seed, 1));
    }

    const orient::DirectionSet ds = orient::sample_uniform(args.n, args.seed);
    std::vector<orient::PolarSlice> slices;
    slices.reserve(static_cast<std::size_t>(args.n));
    for (int i = 0; i < args.n; ++i) {
        orient::PolarSlice slice = orient::fourier_slice(
            phantom, ds.frames[static_cast<std::size_t>(i)], args.n_theta, args.n_r,
            args.r_max, i);
        if (args.snr > 0.0) {
            slice = orient::add_noise(slice, args.snr,
                                      orient::derive_seed(args.seed, 100 + static_cast<std::uint64_t>(i)));
        }
        slices.push_back(std::move(slice));
    }

    auto [datum, detection] = orient::detect_common_lines(slices, args.threads);
    const orient::DetectionErrorSummary summary = orient::compare_to_oracle(detection, ds);

    orient::write_slices(args.out_slices, slices);
    orient::write_json_file(args.out_sidecar, orient::slices_sidecar_to_json(slices, config));
    orient::write_json_file(args.out_datum, orient::datum_to_json(datum, config));
    orient::write_json_file(args.out_truth, orient::truth_to_json(ds, config));
    orient::write_json_file(args.out_detection,
                            orient::detection_to_json(detection, &summary, config));
    if (detection.degenerate_count > 0) {
        std::cerr << "warning: " << detection.degenerate_count
                  << " degenerate pair(s) excluded from the datum\n";
    }
    return kExitOk;
}

int cmd_reconstruct(const std::string& datum_path, const std::string& truth_path,
                    const fs::path& out_report, const fs::path& out_spectrum) {
    const Json config = {{"command", "reconstruct"},
                         {"datum", datum_path},
                         {"truth", truth_path}};
    const orient::CommonLinesDatum datum =
        orient::datum_from_json(orient::read_json_file(datum_path));
    std::optional<orient::DirectionSet> truth;
    if (!truth_path.empty()) {
        truth = orient::truth_from_json(orient::read_json_file(truth_path));
    }
    const orient::PipelineResult result =
        orient::reconstruct(datum, truth ? &*truth : nullptr);
    warn_dim(result.report);
    orient::write_json_file(out_report, orient::report_to_json(result.report, config));
    orient::write_spectrum_csv(out_spectrum, result.spectrum.eigenvalues);
    return kExitOk;
}

int cmd_verify(const std::string& suite, const orient::VerifyOptions& opts,
               const fs::path& out_verdict) {
    const Json config = {{"command", "verify"},
                         {"suite", suite},
                         {"n", opts.n},
                         {"seed", opts.seed}};
    const orient::Verdict verdict = orient::run_verify_suite(suite, opts);
    if (!out_verdict.empty()) {
        orient::write_json_file(out_verdict, orient::verdict_to_json(verdict, config));
    }
    for (const orient::CheckResult& c : verdict.checks) {
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name
                  << "  computed=" << c.computed << " reference=" << c.reference
                  << " tolerance=" << c.tolerance << '\n';
    }
    return verdict.all_passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_spectrum(const std::string& datum_path, const std::string& truth_path,
                 const std::string& kind_name, const fs::path& out_csv) {
    orient::BlockOperator op;
    if (!datum_path.empty()) {
        if (kind_name != "common") {
            throw std::runtime_error(
                "a datum only supports --kind common; use --truth for the others");
        }
        op = orient::assemble(orient::datum_from_json(orient::read_json_file(datum_path)));
    } else if (!truth_path.empty()) {
        orient::BlockKind kind;
        if (kind_name == "common") {
            kind = orient::BlockKind::Common;
        } else if (kind_name == "orthographic") {
            kind = orient::BlockKind::Orthographic;
        } else if (kind_name == "transport") {
            kind = orient::BlockKind::Transport;
        } else {
            throw std::runtime_error("unknown kind: " + kind_name);
        }
        op = orient::assemble(orient::truth_from_json(orient::read_json_file(truth_path)),
                              kind);
    } else {
        throw std::runtime_error("spectrum needs --datum or --truth");
    }
    orient::write_spectrum_csv(out_csv, orient::eigendecompose(op).eigenvalues);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Viewing-direction recovery from common-lines data"};
    app.require_subcommand(1);

    // oracle-datum
    auto* oracle = app.add_subcommand(
        "oracle-datum", "Sample directions and write the exact common-lines datum");
    int od_n = 100;
    std::uint64_t od_seed = 1;
    std::string od_datum, od_truth;
    oracle->add_option("--n", od_n, "node count (>= 4)")->required()
        ->check(CLI::Range(4, 1000000));
    oracle->add_option("--seed", od_seed, "random seed")->required();
    oracle->add_option("--out-datum", od_datum, "datum JSON path")->required();
    oracle->add_option("--out-truth", od_truth, "ground-truth JSON path")->required();

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "Forward model: phantom, Fourier slices, noise, detection");
    SimulateArgs sim;
    simulate->add_option("--n", sim.n, "node count (>= 4)")->required()
        ->check(CLI::Range(4, 1000000));
    simulate->add_option("--seed", sim.seed, "random seed")->required();
    simulate->add_option("--snr", sim.snr, "signal-to-noise ratio; 0 disables noise");
    simulate->add_option("--n-theta", sim.n_theta, "angular bins (even)");
    simulate->add_option("--n-r", sim.n_r, "radial samples");
    simulate->add_option("--r-max", sim.r_max, "radial cutoff frequency");
    simulate->add_option("--threads", sim.threads, "detection worker threads (0 = auto)");
    simulate->add_option("--phantom", sim.phantom_path, "phantom JSON to load");
    simulate->add_option("--out-slices", sim.out_slices, "binary slice container path")
        ->required();
    simulate->add_option("--out-sidecar", sim.out_sidecar, "slice sidecar JSON path")
        ->required();
    simulate->add_option("--out-datum", sim.out_datum, "detected datum JSON path")
        ->required();
    simulate->add_option("--out-truth", sim.out_truth, "ground-truth JSON path")
        ->required();
    simulate->add_option("--out-detection", sim.out_detection, "detection report path")
        ->required();

    // reconstruct
    auto* reconstruct =
        app.add_subcommand("reconstruct", "Spectral reconstruction from a datum");
    std::string rc_datum, rc_truth, rc_report, rc_spectrum;
    reconstruct->add_option("--datum", rc_datum, "datum JSON path")->required();
    reconstruct->add_option("--truth", rc_truth, "optional ground-truth JSON path");
    reconstruct->add_option("--out-report", rc_report, "report JSON path")->required();
    reconstruct->add_option("--out-spectrum", rc_spectrum, "spectrum CSV path")
        ->required();

    // verify
    auto* verify = app.add_subcommand("verify", "Run a named verification suite");
    std::string vf_suite, vf_verdict;
    orient::VerifyOptions vf_opts;
    verify->add_option("--suite", vf_suite, "one of: eigenvalues, quadrature, clusters, isometry, kernel-identities")
        ->required();
    verify->add_option("--n", vf_opts.n, "node count for empirical suites");
    verify->add_option("--seed", vf_opts.seed, "random seed");
    verify->add_option("--out-verdict", vf_verdict, "verdict JSON path");
    verify->add_option("--tol-eigen", vf_opts.tol_eigen, "eigenvalue-law tolerance");
    verify->add_option("--tol-quad", vf_opts.tol_quad, "integral-identity tolerance");
    verify->add_option("--tol-generating", vf_opts.tol_generating,
                       "generating-identity tolerance");
    verify->add_option("--tol-cluster-window", vf_opts.cluster_window,
                       "cluster window (0 = predicted-gap rule)");
    verify->add_option("--tol-trace", vf_opts.tol_trace, "trace-identity tolerance");
    verify->add_option("--tol-kernel", vf_opts.tol_kernel, "kernel-identity tolerance");
    verify->add_option("--tol-embed", vf_opts.tol_embed,
                       "canonical-embedding residual bound");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Dump operator eigenvalues as CSV");
    std::string sp_datum, sp_truth, sp_kind = "common", sp_out;
    spectrum->add_option("--datum", sp_datum, "datum JSON path (common kind only)");
    spectrum->add_option("--truth", sp_truth, "ground-truth JSON path");
    spectrum->add_option("--kind", sp_kind, "common | orthographic | transport");
    spectrum->add_option("--out", sp_out, "CSV path")->required();

    try {
        app.parse(argc, argv);
        if (*oracle) return cmd_oracle_datum(od_n, od_seed, od_datum, od_truth);
        if (*simulate) return cmd_simulate(sim);
        if (*reconstruct) return cmd_reconstruct(rc_datum, rc_truth, rc_report, rc_spectrum);
        if (*verify) return cmd_verify(vf_suite, vf_opts, vf_verdict);
        if (*spectrum) return cmd_spectrum(sp_datum, sp_truth, sp_kind, sp_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const orient::MalformedDatumError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformedInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
