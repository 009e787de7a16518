#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "orient/kernels.hpp"
#include "orient/simulate.hpp"
#include "orient/spectral.hpp"

namespace orient {

inline constexpr const char* kFormatVersion = "1";

using Json = nlohmann::json;

// Every artifact carries format_version and, when supplied, the resolved
// run configuration under "config".

Json datum_to_json(const CommonLinesDatum& datum, const Json& config = Json());
CommonLinesDatum datum_from_json(const Json& j);  // throws MalformedDatumError

Json truth_to_json(const DirectionSet& ds, const Json& config = Json());
DirectionSet truth_from_json(const Json& j);

Json report_to_json(const ReconstructionReport& report, const Json& config = Json());
ReconstructionReport report_from_json(const Json& j);

// One verification check: computed value against its reference at a named
// tolerance.
struct CheckResult {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Verdict {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

Json verdict_to_json(const Verdict& verdict, const Json& config = Json());
Verdict verdict_from_json(const Json& j);

void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

// Spectrum CSV: one "index,eigenvalue" line per eigenvalue, no header.
void write_spectrum_csv(const std::filesystem::path& path, const Eigen::VectorXd& eigenvalues);

Json detection_to_json(const DetectionResult& result, const DetectionErrorSummary* summary,
                       const Json& config = Json());

Json phantom_to_json(const Phantom& phantom, const Json& config = Json());
Phantom phantom_from_json(const Json& j);

// Binary slice container. Header (little-endian 64-bit words): n_slices,
// n_theta, n_r as unsigned integers, then r_max as a double. Payload: per
// slice, row-major n_theta x n_r complex doubles (re, im). Frames and node
// indices travel in the JSON sidecar.
void write_slices(const std::filesystem::path& path, const std::vector<PolarSlice>& slices);
std::vector<PolarSlice> read_slices(const std::filesystem::path& path);

Json slices_sidecar_to_json(const std::vector<PolarSlice>& slices, const Json& config = Json());
// Restores node indices and frames onto slices read from the container.
void apply_sidecar(const Json& sidecar, std::vector<PolarSlice>& slices);

}  // namespace orient
