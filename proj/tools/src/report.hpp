/*
 * report.hpp - JSON report envelopes and the run manifest.
 *
 * Every command prints one JSON object to stdout whose field names are
 * part of the public contract, versioned by a top-level "format": 1.
 * The embedded manifest records the command line, effective config,
 * seed, floating-point backend, UTC timestamps, and SHA-256 digests of
 * the exact bytes of every input and output file.  Reruns with the same
 * seed are byte-identical except for the two timestamp fields.
 */
#ifndef DISCDIST_TOOLS_REPORT_HPP
#define DISCDIST_TOOLS_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "discdist/classify.hpp"
#include "discdist/distance.hpp"
#include "discdist/maximize.hpp"

namespace discdist::tools {

// Accumulates manifest data while a command runs; build() stamps the
// finish time.
class Manifest {
public:
    Manifest(std::string command, std::uint64_t seed);

    void set_config(nlohmann::ordered_json config);
    void add_input(const std::string& path);
    void add_output(const std::string& path);

    nlohmann::ordered_json build() const;

private:
    std::string command_;
    std::uint64_t seed_;
    std::string started_;
    nlohmann::ordered_json config_;
    nlohmann::ordered_json inputs_;
    nlohmann::ordered_json outputs_;
};

nlohmann::ordered_json json_vector(const Eigen::VectorXd& v);
nlohmann::ordered_json json_search_config(const SearchConfig& cfg);
nlohmann::ordered_json json_distance_report(const DistanceReport& rep);

// The classification record of one point:
// { "point", "kind": "double"|"cusp", "value", "beta", "lambdas",
//   "mus" (null for doubles), "checks" }.
nlohmann::ordered_json json_classification(const HomogeneousPoly& p,
                                           const QuasiSingularPoint& q,
                                           double classify_tol);

// Compact per-point record for maximizer states.
nlohmann::ordered_json json_qs_point(const QuasiSingularPoint& q);

// Prints the report followed by a newline.
void emit(const nlohmann::ordered_json& report);

// Error envelope: prints {"format", "command", "error": {kind, message},
// "manifest"} to stdout, the message to stderr, and returns exit_code.
int emit_error(const Manifest& manifest, const std::string& command,
               const std::string& kind, const std::string& message,
               int exit_code);

} // namespace discdist::tools

#endif // DISCDIST_TOOLS_REPORT_HPP
