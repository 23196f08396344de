/*
 * main.cpp - argument parsing and dispatch for the discdist CLI.
 *
 * Exit codes: 0 success, 2 malformed input or arguments, 3 degenerate
 * input (the polynomial lies on the discriminant; a report is still
 * printed when one exists), 4 optimizer stall, 1 anything else.
 */
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

#include "discdist/concurrency.hpp"
#include "discdist/distance.hpp"

namespace {

// Seed precedence: an explicit --seed flag wins, then the DISCDIST_SEED
// environment variable, then the library default.
std::uint64_t env_default_seed() {
    const char* env = std::getenv("DISCDIST_SEED");
    if (env == nullptr || *env == '\0') return discdist::kDefaultSeed;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw CLI::ValidationError(
            "DISCDIST_SEED", "must be an unsigned integer, got '" +
                                 std::string(env) + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace discdist::tools;

    CLI::App app{"Distance to the discriminant of homogeneous polynomials "
                 "under the Bombieri norm"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "Cap the worker thread count (0 = hardware default)");

    DistOptions dist_opt;
    ClassifyOptions classify_opt;
    OptimizeOptions optimize_opt;
    UnivariateOptions uni_opt;
    BoundsOptions bounds_opt;
    TableOptions table_opt;
    bool seed_given_dist = false;
    bool seed_given_classify = false;
    bool seed_given_bounds = false;
    bool seed_given_table = false;

    CLI::App* dist = app.add_subcommand(
        "dist", "Distance from a polynomial to the discriminant");
    dist->add_option("polyfile", dist_opt.polyfile, "Polynomial text file")
        ->required();
    dist->add_option("--restarts", dist_opt.restarts,
                     "Multi-start sample count");
    dist->add_option("--seed", dist_opt.seed, "RNG seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given_dist = true; });
    dist->add_flag("--general-check", dist_opt.general_check,
                   "Cross-check sqrt(delta) against the general distance "
                   "formula at each minimizer");

    CLI::App* classify = app.add_subcommand(
        "classify", "Locate and classify the quasi-singular points");
    classify
        ->add_option("polyfile", classify_opt.polyfile, "Polynomial text file")
        ->required();
    classify->add_option("--restarts", classify_opt.restarts,
                         "Multi-start sample count");
    classify->add_option("--seed", classify_opt.seed, "RNG seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given_classify = true; });
    classify->add_option("--classify-tol", classify_opt.classify_tol,
                         "Relative tolerance of the classification checks");

    CLI::App* optimize = app.add_subcommand(
        "optimize", "Ascend the distance to a local maximizer");
    optimize->add_option("polyfile", optimize_opt.polyfile,
                         "Polynomial text file (omit with --resume)");
    optimize->add_option("--resume", optimize_opt.resume,
                         "Checkpoint JSON to restore and continue from");
    optimize->add_option("--checkpoint", optimize_opt.checkpoint,
                         "Checkpoint JSON to write");
    optimize->add_option("--checkpoint-every", optimize_opt.checkpoint_every,
                         "Iterations between checkpoint writes (0 = final "
                         "state only)");
    optimize
        ->add_option("--max-iters", optimize_opt.max_iters, "Iteration cap")
        ->trigger_on_parse()
        ->each([&](const std::string&) { optimize_opt.has_max_iters = true; });
    optimize
        ->add_option("--residual-tol", optimize_opt.residual_tol,
                     "Convergence threshold on ||D||^2")
        ->trigger_on_parse()
        ->each([&](const std::string&) {
            optimize_opt.has_residual_tol = true;
        });
    optimize
        ->add_option("--refresh-every", optimize_opt.refresh_every,
                     "Iterations between full re-searches (0 = never)")
        ->trigger_on_parse()
        ->each([&](const std::string&) {
            optimize_opt.has_refresh_every = true;
        });
    optimize
        ->add_option("--restarts", optimize_opt.restarts,
                     "Multi-start sample count of the inner searches")
        ->trigger_on_parse()
        ->each([&](const std::string&) { optimize_opt.has_restarts = true; });
    optimize->add_option("--seed", optimize_opt.seed, "RNG seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { optimize_opt.has_seed = true; });

    CLI::App* univariate = app.add_subcommand(
        "univariate", "Binary-form families, identities, and Gram matrices");
    CLI::Option* trd =
        univariate
            ->add_option("--trd", uni_opt.trd_args,
                         "Emit T_{r,d} with its closed-form distances")
            ->expected(2);
    CLI::Option* identities =
        univariate
            ->add_option("--identities", uni_opt.dmax,
                         "CSV of max identity errors for all valid (r, d) "
                         "up to this degree")
            ->excludes(trd);
    univariate
        ->add_option("--gram", uni_opt.gram_degree,
                     "Gram/Vandermonde factorization of the d-th powers at "
                     "equally spaced angles")
        ->excludes(trd)
        ->excludes(identities);
    univariate->add_option("--grid", uni_opt.grid,
                           "Grid size of the identity error scan");

    CLI::App* bounds = app.add_subcommand(
        "bounds", "Cap, separation, and band bounds at the distance");
    bounds->add_option("polyfile", bounds_opt.polyfile, "Polynomial text file")
        ->required();
    bounds->add_option("--restarts", bounds_opt.restarts,
                       "Multi-start sample count");
    bounds->add_option("--samples", bounds_opt.samples,
                       "Sample count of each empirical cap check");
    bounds->add_option("--seed", bounds_opt.seed, "RNG seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given_bounds = true; });

    CLI::App* table = app.add_subcommand(
        "table", "Distance table of the nested Chebyshev family");
    table->add_option("--dmax", table_opt.dmax, "Largest degree (>= 2)");
    table->add_option("--restarts", table_opt.restarts,
                      "Multi-start sample count");
    table->add_option("--seed", table_opt.seed, "RNG seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given_table = true; });

    try {
        app.parse(argc, argv);

        if (threads > 0) discdist::set_max_threads(threads);
        const std::uint64_t fallback = env_default_seed();
        if (!seed_given_dist) dist_opt.seed = fallback;
        if (!seed_given_classify) classify_opt.seed = fallback;
        if (!optimize_opt.has_seed) optimize_opt.seed = fallback;
        if (!seed_given_bounds) bounds_opt.seed = fallback;
        if (!seed_given_table) table_opt.seed = fallback;

        if (dist->parsed()) return cmd_dist(dist_opt);
        if (classify->parsed()) return cmd_classify(classify_opt);
        if (optimize->parsed()) {
            if (optimize_opt.resume.empty() && optimize_opt.polyfile.empty()) {
                throw CLI::RequiredError(
                    "optimize: either polyfile or --resume");
            }
            return cmd_optimize(optimize_opt);
        }
        if (univariate->parsed()) {
            uni_opt.trd = trd->count() > 0;
            uni_opt.identities = identities->count() > 0;
            if (uni_opt.trd) {
                uni_opt.r = uni_opt.trd_args[0];
                uni_opt.d = uni_opt.trd_args[1];
            } else if (!uni_opt.identities && uni_opt.gram_degree == 0) {
                throw CLI::RequiredError(
                    "univariate: one of --trd, --identities, --gram");
            }
            return cmd_univariate(uni_opt);
        }
        if (bounds->parsed()) return cmd_bounds(bounds_opt);
        if (table->parsed()) return cmd_table(table_opt);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
}
