/*
 * support.hpp - helpers shared by the process-level test drivers:
 * running the CLI, capturing its streams, and timestamp-free JSON
 * comparison.
 */
#ifndef DISCDIST_TESTS_SUPPORT_HPP
#define DISCDIST_TESTS_SUPPORT_HPP

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace discdist::tests {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs `cli` with `args` through the shell, capturing stdout directly
// and stderr via a scratch file next to the working directory.
inline CliResult run_cli(const std::string& cli, const std::string& args,
                         const std::string& tag = "cli") {
    const std::string err_path = tag + ".stderr.tmp";
    const std::string command = cli + " " + args + " 2>" + err_path;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        throw std::runtime_error("run_cli: popen failed for: " + command);
    }
    CliResult result;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        result.out.append(buf, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err_in(err_path, std::ios::binary);
    result.err.assign(std::istreambuf_iterator<char>(err_in),
                      std::istreambuf_iterator<char>());
    std::remove(err_path.c_str());
    return result;
}

// Parses a report and erases the two volatile timestamp fields so that
// deterministic reruns compare equal.
inline nlohmann::ordered_json without_timestamps(const std::string& text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
    if (j.contains("manifest")) {
        j["manifest"].erase("started_utc");
        j["manifest"].erase("finished_utc");
    }
    return j;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("write_file: cannot write " + path);
}

} // namespace discdist::tests

#endif // DISCDIST_TESTS_SUPPORT_HPP
