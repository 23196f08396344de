/*
 * report.cpp - JSON report envelopes and the run manifest.
 */
#include "report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>

#include "sha256.hpp"

#include "discdist/io.hpp"

namespace discdist::tools {

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
    return buf;
}

} // namespace

Manifest::Manifest(std::string command, std::uint64_t seed)
    : command_(std::move(command)),
      seed_(seed),
      started_(utc_now()),
      config_(nlohmann::ordered_json::object()),
      inputs_(nlohmann::ordered_json::object()),
      outputs_(nlohmann::ordered_json::object()) {}

void Manifest::set_config(nlohmann::ordered_json config) {
    config_ = std::move(config);
}

void Manifest::add_input(const std::string& path) {
    inputs_[path] = sha256_file(path);
}

void Manifest::add_output(const std::string& path) {
    outputs_[path] = sha256_file(path);
}

nlohmann::ordered_json Manifest::build() const {
    nlohmann::ordered_json m;
    m["command"] = command_;
    m["config"] = config_;
    m["seed"] = seed_;
    m["backend"] = "binary64";
    m["started_utc"] = started_;
    m["finished_utc"] = utc_now();
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    return m;
}

nlohmann::ordered_json json_vector(const Eigen::VectorXd& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

nlohmann::ordered_json json_search_config(const SearchConfig& cfg) {
    nlohmann::ordered_json j;
    j["restarts"] = cfg.restarts;
    j["max_newton_iters"] = cfg.max_newton_iters;
    j["grad_tol"] = cfg.grad_tol;
    j["cluster_angle"] = cfg.cluster_angle;
    j["seed"] = cfg.seed;
    return j;
}

nlohmann::ordered_json json_distance_report(const DistanceReport& rep) {
    nlohmann::ordered_json j;
    j["dist"] = rep.dist;
    nlohmann::ordered_json mins = nlohmann::ordered_json::array();
    for (const SpherePoint& c : rep.minimizers) {
        mins.push_back(json_vector(c.coords()));
    }
    j["minimizers"] = std::move(mins);
    j["delta"] = rep.delta_at_minimizers;
    j["continuum"] = rep.possibly_continuum;
    j["config"] = json_search_config(rep.config);
    return j;
}

nlohmann::ordered_json json_classification(const HomogeneousPoly& p,
                                           const QuasiSingularPoint& q,
                                           double classify_tol) {
    const CanonicalFrame frame = canonical_frame(p, q.c, classify_tol);
    const ValidationRecord record =
        q.kind == QsKind::QuasiDouble
            ? validate_quasi_double(p, q.c, classify_tol)
            : validate_quasi_cusp(p, q.c, classify_tol);

    nlohmann::ordered_json j;
    j["point"] = json_vector(q.c.coords());
    j["kind"] = q.kind == QsKind::QuasiDouble ? "double" : "cusp";
    j["value"] = q.value;
    j["beta"] = frame.beta;
    j["lambdas"] = frame.lambdas;
    if (q.kind == QsKind::QuasiCusp) {
        j["mus"] = frame.mus;
    } else {
        j["mus"] = nullptr;
    }
    nlohmann::ordered_json checks;
    checks["all_pass"] = record.all_pass;
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const CheckItem& item : record.checks) {
        nlohmann::ordered_json it;
        it["label"] = item.label;
        it["applicable"] = item.applicable;
        it["pass"] = item.pass;
        it["margin"] = item.margin;
        items.push_back(std::move(it));
    }
    checks["items"] = std::move(items);
    j["checks"] = std::move(checks);
    return j;
}

nlohmann::ordered_json json_qs_point(const QuasiSingularPoint& q) {
    nlohmann::ordered_json j;
    j["point"] = json_vector(q.c.coords());
    j["kind"] = q.kind == QsKind::QuasiDouble ? "double" : "cusp";
    j["value"] = q.value;
    j["delta"] = q.delta;
    return j;
}

void emit(const nlohmann::ordered_json& report) {
    std::cout << report.dump(2) << "\n";
}

int emit_error(const Manifest& manifest, const std::string& command,
               const std::string& kind, const std::string& message,
               int exit_code) {
    nlohmann::ordered_json j;
    j["format"] = 1;
    j["command"] = command;
    j["error"] = {{"kind", kind}, {"message", message}};
    j["manifest"] = manifest.build();
    emit(j);
    std::cerr << "error: " << message << "\n";
    return exit_code;
}

} // namespace discdist::tools
