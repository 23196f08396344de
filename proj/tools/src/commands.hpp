/*
 * commands.hpp - the subcommand bodies behind the CLI surface.
 *
 * Each command prints one JSON report (CSV for the identity table) to
 * stdout and returns the process exit code: 0 success, 2 parse error,
 * 3 degenerate input (report still printed when one exists), 4 stall.
 * Progress and warnings go to stderr.
 */
#ifndef DISCDIST_TOOLS_COMMANDS_HPP
#define DISCDIST_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace discdist::tools {

struct DistOptions {
    std::string polyfile;
    int restarts = 64;
    std::uint64_t seed = 0;
    bool general_check = false;
};

struct ClassifyOptions {
    std::string polyfile;
    int restarts = 64;
    std::uint64_t seed = 0;
    double classify_tol = 1e-8;
};

struct OptimizeOptions {
    std::string polyfile;
    std::string resume;
    std::string checkpoint;
    int checkpoint_every = 0;
    int max_iters = 500;
    double residual_tol = 1e-12;
    int refresh_every = 25;
    int restarts = 64;
    std::uint64_t seed = 0;
    // Tracks which flags were given explicitly so that a resumed run
    // keeps the stored config for everything else.
    bool has_max_iters = false;
    bool has_residual_tol = false;
    bool has_refresh_every = false;
    bool has_restarts = false;
    bool has_seed = false;
};

struct UnivariateOptions {
    // Exactly one of the three modes is set by the parser.
    bool trd = false;
    bool identities = false;
    bool gram = false;
    std::vector<int> trd_args;
    int r = 0;
    int d = 0;
    int dmax = 10;
    int gram_degree = 0;
    int grid = 1024;
};

struct BoundsOptions {
    std::string polyfile;
    int restarts = 64;
    int samples = 10000;
    std::uint64_t seed = 0;
};

struct TableOptions {
    int dmax = 6;
    int restarts = 64;
    std::uint64_t seed = 0;
};

int cmd_dist(const DistOptions& opt);
int cmd_classify(const ClassifyOptions& opt);
int cmd_optimize(const OptimizeOptions& opt);
int cmd_univariate(const UnivariateOptions& opt);
int cmd_bounds(const BoundsOptions& opt);
int cmd_table(const TableOptions& opt);

} // namespace discdist::tools

#endif // DISCDIST_TOOLS_COMMANDS_HPP
