#include "orient/io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "orient/errors.hpp"

namespace orient {

namespace {

Json vec2_to_json(const Vec2& v) { return Json::array({v.x(), v.y()}); }
Json vec3_to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Vec2 vec2_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw std::runtime_error("expected a 2-vector");
    return Vec2(j[0].get<double>(), j[1].get<double>());
}

Vec3 vec3_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) throw std::runtime_error("expected a 3-vector");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

void embed_common(Json& j, const Json& config) {
    j["format_version"] = kFormatVersion;
    if (!config.is_null()) j["config"] = config;
}

}  // namespace

Json datum_to_json(const CommonLinesDatum& datum, const Json& config) {
    Json j;
    embed_common(j, config);
    j["n"] = datum.n;
    j["provenance"] = datum.provenance == Provenance::Oracle ? "oracle" : "detected";
    Json pairs = Json::array();
    for (const CommonLinesDatum::Pair& p : datum.pairs) {
        pairs.push_back({{"i", p.i},
                         {"j", p.j},
                         {"c_ij", vec2_to_json(p.c_ij)},
                         {"c_ji", vec2_to_json(p.c_ji)}});
    }
    j["pairs"] = std::move(pairs);
    return j;
}

CommonLinesDatum datum_from_json(const Json& j) {
    try {
        CommonLinesDatum datum;
        datum.n = j.at("n").get<int>();
        const std::string prov = j.at("provenance").get<std::string>();
        if (prov == "oracle") {
            datum.provenance = Provenance::Oracle;
        } else if (prov == "detected") {
            datum.provenance = Provenance::Detected;
        } else {
            throw MalformedDatumError("datum: unknown provenance '" + prov + "'");
        }
        for (const Json& p : j.at("pairs")) {
            datum.pairs.push_back({p.at("i").get<int>(), p.at("j").get<int>(),
                                   vec2_from_json(p.at("c_ij")),
                                   vec2_from_json(p.at("c_ji"))});
        }
        datum.validate();
        return datum;
    } catch (const MalformedDatumError&) {
        throw;
    } catch (const std::exception& e) {
        throw MalformedDatumError(std::string("datum: ") + e.what());
    }
}

Json truth_to_json(const DirectionSet& ds, const Json& config) {
    Json j;
    embed_common(j, config);
    j["n"] = ds.size();
    j["seed"] = ds.seed;
    Json nodes = Json::array();
    for (int k = 0; k < ds.size(); ++k) {
        nodes.push_back({{"x", vec3_to_json(ds.points[static_cast<std::size_t>(k)].v)},
                         {"b1", vec3_to_json(ds.frames[static_cast<std::size_t>(k)].b1)},
                         {"b2", vec3_to_json(ds.frames[static_cast<std::size_t>(k)].b2)}});
    }
    j["nodes"] = std::move(nodes);
    return j;
}

DirectionSet truth_from_json(const Json& j) {
    DirectionSet ds;
    ds.seed = j.at("seed").get<std::uint64_t>();
    const int n = j.at("n").get<int>();
    for (const Json& node : j.at("nodes")) {
        const Vec3 x = vec3_from_json(node.at("x"));
        PlaneBasis frame;
        frame.b1 = vec3_from_json(node.at("b1"));
        frame.b2 = vec3_from_json(node.at("b2"));
        frame.normal = x;
        ds.points.push_back(UnitVector3{x});
        ds.frames.push_back(frame);
    }
    if (ds.size() != n) throw std::runtime_error("truth: node count mismatch");
    return ds;
}

namespace {

Json registration_to_json(const RegistrationResult& reg) {
    Json j;
    Json rows = Json::array();
    for (int r = 0; r < 3; ++r) {
        rows.push_back(Json::array({reg.q(r, 0), reg.q(r, 1), reg.q(r, 2)}));
    }
    j["matrix"] = std::move(rows);
    j["det"] = reg.det_q;
    j["mean_angular_error"] = reg.mean_angular_error;
    j["median_angular_error"] = reg.median_angular_error;
    j["max_angular_error"] = reg.max_angular_error;
    j["mean_angular_error_deg"] = reg.mean_angular_error * 180.0 / M_PI;
    j["median_angular_error_deg"] = reg.median_angular_error * 180.0 / M_PI;
    j["max_angular_error_deg"] = reg.max_angular_error * 180.0 / M_PI;
    j["frame_residuals"] = reg.frame_residuals;
    j["residual_total"] = reg.residual_total;
    return j;
}

RegistrationResult registration_from_json(const Json& j) {
    RegistrationResult reg;
    const Json& rows = j.at("matrix");
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) reg.q(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
    }
    reg.det_q = j.at("det").get<double>();
    reg.mean_angular_error = j.at("mean_angular_error").get<double>();
    reg.median_angular_error = j.at("median_angular_error").get<double>();
    reg.max_angular_error = j.at("max_angular_error").get<double>();
    reg.frame_residuals = j.at("frame_residuals").get<std::vector<double>>();
    reg.residual_total = j.at("residual_total").get<double>();
    return reg;
}

}  // namespace

Json report_to_json(const ReconstructionReport& report, const Json& config) {
    Json j;
    embed_common(j, config);
    j["n"] = report.n;
    j["dim_intrinsic"] = report.dim_intrinsic;
    j["dim_warning"] = report.dim_warning;
    j["top_eigenvalues"] = report.top_eigenvalues;
    j["spectral_gap_empirical"] = report.spectral_gap_empirical;
    j["registration"] = report.registration ? registration_to_json(*report.registration)
                                            : Json();
    j["timings"] = {{"assemble_s", report.timings.assemble_s},
                    {"eigendecompose_s", report.timings.eigendecompose_s},
                    {"extract_s", report.timings.extract_s},
                    {"register_s", report.timings.register_s}};
    return j;
}

ReconstructionReport report_from_json(const Json& j) {
    ReconstructionReport report;
    report.n = j.at("n").get<int>();
    report.dim_intrinsic = j.at("dim_intrinsic").get<int>();
    report.dim_warning = j.at("dim_warning").get<bool>();
    report.top_eigenvalues = j.at("top_eigenvalues").get<std::vector<double>>();
    report.spectral_gap_empirical = j.at("spectral_gap_empirical").get<double>();
    if (!j.at("registration").is_null()) {
        report.registration = registration_from_json(j.at("registration"));
    }
    const Json& t = j.at("timings");
    report.timings.assemble_s = t.at("assemble_s").get<double>();
    report.timings.eigendecompose_s = t.at("eigendecompose_s").get<double>();
    report.timings.extract_s = t.at("extract_s").get<double>();
    report.timings.register_s = t.at("register_s").get<double>();
    return report;
}

bool Verdict::all_passed() const {
    for (const CheckResult& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

Json verdict_to_json(const Verdict& verdict, const Json& config) {
    Json j;
    embed_common(j, config);
    j["suite"] = verdict.suite;
    Json checks = Json::array();
    for (const CheckResult& c : verdict.checks) {
        checks.push_back({{"name", c.name},
                          {"computed", c.computed},
                          {"reference", c.reference},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    j["checks"] = std::move(checks);
    j["all_passed"] = verdict.all_passed();
    return j;
}

Verdict verdict_from_json(const Json& j) {
    Verdict verdict;
    verdict.suite = j.at("suite").get<std::string>();
    for (const Json& c : j.at("checks")) {
        verdict.checks.push_back({c.at("name").get<std::string>(),
                                  c.at("computed").get<double>(),
                                  c.at("reference").get<double>(),
                                  c.at("tolerance").get<double>(),
                                  c.at("pass").get<bool>()});
    }
    return verdict;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    Json j;
    in >> j;
    return j;
}

void write_spectrum_csv(const std::filesystem::path& path, const Eigen::VectorXd& eigenvalues) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.precision(17);
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
        out << k << ',' << eigenvalues[k] << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Json detection_to_json(const DetectionResult& result, const DetectionErrorSummary* summary,
                       const Json& config) {
    Json j;
    embed_common(j, config);
    j["n_theta"] = result.n_theta;
    j["degenerate_count"] = result.degenerate_count;
    Json pairs = Json::array();
    for (const PairDetection& p : result.pairs) {
        pairs.push_back({{"i", p.i},
                         {"j", p.j},
                         {"alpha", p.alpha},
                         {"beta", p.beta},
                         {"score", p.score},
                         {"degenerate", p.degenerate}});
    }
    j["pairs"] = std::move(pairs);
    if (summary != nullptr) {
        j["summary"] = {{"mean_error", summary->mean_error},
                        {"median_error", summary->median_error},
                        {"max_error", summary->max_error},
                        {"mean_error_deg", summary->mean_error * 180.0 / M_PI},
                        {"fraction_within_one_bin", summary->fraction_within_one_bin},
                        {"fraction_within_two_bins", summary->fraction_within_two_bins},
                        {"histogram", summary->histogram},
                        {"histogram_bin_width", summary->histogram_bin_width}};
    }
    return j;
}

Json phantom_to_json(const Phantom& phantom, const Json& config) {
    Json j;
    embed_common(j, config);
    Json comps = Json::array();
    for (const GaussianComponent& g : phantom.components) {
        comps.push_back({{"center", vec3_to_json(g.center)},
                         {"amplitude", g.amplitude},
                         {"sigma", g.sigma}});
    }
    j["components"] = std::move(comps);
    return j;
}

Phantom phantom_from_json(const Json& j) {
    Phantom phantom;
    for (const Json& c : j.at("components")) {
        phantom.components.push_back({vec3_from_json(c.at("center")),
                                      c.at("amplitude").get<double>(),
                                      c.at("sigma").get<double>()});
    }
    return phantom;
}

namespace {

void write_u64(std::ofstream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::ifstream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

double read_f64(std::ifstream& in) {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

}  // namespace

void write_slices(const std::filesystem::path& path, const std::vector<PolarSlice>& slices) {
    if (slices.empty()) throw std::invalid_argument("write_slices: nothing to write");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    write_u64(out, slices.size());
    write_u64(out, static_cast<std::uint64_t>(slices[0].n_theta));
    write_u64(out, static_cast<std::uint64_t>(slices[0].n_r));
    write_f64(out, slices[0].r_max);
    for (const PolarSlice& s : slices) {
        for (int a = 0; a < s.n_theta; ++a) {
            for (int b = 0; b < s.n_r; ++b) {
                write_f64(out, s.values(a, b).real());
                write_f64(out, s.values(a, b).imag());
            }
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<PolarSlice> read_slices(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    const std::uint64_t n_slices = read_u64(in);
    const std::uint64_t n_theta = read_u64(in);
    const std::uint64_t n_r = read_u64(in);
    const double r_max = read_f64(in);
    if (!in || n_slices == 0 || n_theta == 0 || n_r == 0) {
        throw std::runtime_error("slices: malformed header in " + path.string());
    }
    std::vector<PolarSlice> slices(n_slices);
    for (PolarSlice& s : slices) {
        s.n_theta = static_cast<int>(n_theta);
        s.n_r = static_cast<int>(n_r);
        s.r_max = r_max;
        s.values.resize(static_cast<Eigen::Index>(n_theta), static_cast<Eigen::Index>(n_r));
        for (std::uint64_t a = 0; a < n_theta; ++a) {
            for (std::uint64_t b = 0; b < n_r; ++b) {
                const double re = read_f64(in);
                const double im = read_f64(in);
                s.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = {re, im};
            }
        }
    }
    if (!in) throw std::runtime_error("slices: truncated payload in " + path.string());
    return slices;
}

Json slices_sidecar_to_json(const std::vector<PolarSlice>& slices, const Json& config) {
    Json j;
    embed_common(j, config);
    j["n_slices"] = slices.size();
    if (!slices.empty()) {
        j["n_theta"] = slices[0].n_theta;
        j["n_r"] = slices[0].n_r;
        j["r_max"] = slices[0].r_max;
    }
    Json nodes = Json::array();
    for (const PolarSlice& s : slices) {
        nodes.push_back({{"index", s.node},
                         {"x", vec3_to_json(s.frame.normal)},
                         {"b1", vec3_to_json(s.frame.b1)},
                         {"b2", vec3_to_json(s.frame.b2)}});
    }
    j["nodes"] = std::move(nodes);
    return j;
}

void apply_sidecar(const Json& sidecar, std::vector<PolarSlice>& slices) {
    const Json& nodes = sidecar.at("nodes");
    if (nodes.size() != slices.size()) {
        throw std::runtime_error("sidecar: node count does not match container");
    }
    for (std::size_t k = 0; k < slices.size(); ++k) {
        const Json& node = nodes[k];
        slices[k].node = node.at("index").get<int>();
        slices[k].frame.normal = vec3_from_json(node.at("x"));
        slices[k].frame.b1 = vec3_from_json(node.at("b1"));
        slices[k].frame.b2 = vec3_from_json(node.at("b2"));
    }
}

}  // namespace orient
