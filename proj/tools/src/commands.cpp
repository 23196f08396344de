/*
 * commands.cpp - the subcommand bodies behind the CLI surface.
 */
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "report.hpp"

#include "discdist/basis_matrices.hpp"
#include "discdist/bombieri.hpp"
#include "discdist/bounds.hpp"
#include "discdist/classify.hpp"
#include "discdist/corpus.hpp"
#include "discdist/distance.hpp"
#include "discdist/errors.hpp"
#include "discdist/io.hpp"
#include "discdist/maximize.hpp"
#include "discdist/univariate.hpp"

namespace discdist::tools {

namespace {

// Routes domain errors to the exit-code contract: parse and argument
// shape problems exit 2, degenerate inputs exit 3, anything else 1.
// The error envelope is printed even when no report could be built.
template <typename F>
int guarded(Manifest& manifest, const std::string& command, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        return emit_error(manifest, command, "parse", e.what(), 2);
    } catch (const ShapeError& e) {
        return emit_error(manifest, command, "shape", e.what(), 2);
    } catch (const DegenerateError& e) {
        return emit_error(manifest, command, "degenerate", e.what(), 3);
    } catch (const Error& e) {
        return emit_error(manifest, command, "error", e.what(), 1);
    } catch (const std::exception& e) {
        return emit_error(manifest, command, "internal", e.what(), 1);
    }
}

nlohmann::ordered_json json_maximizer_final(const MaximizerState& st,
                                            bool converged) {
    nlohmann::ordered_json j;
    j["iteration"] = st.iteration;
    j["dist"] = st.dist;
    j["residual"] = st.residual;
    j["converged"] = converged;
    j["stalled"] = st.stalled;
    j["continuum"] = st.possibly_continuum;
    j["dependent_radii"] = st.dependent_radii;
    j["poly"] = write_poly_lines(st.P);
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const QuasiSingularPoint& q : st.qs) pts.push_back(json_qs_point(q));
    j["points"] = std::move(pts);
    return j;
}

nlohmann::ordered_json json_table_row(const TableRow& row) {
    nlohmann::ordered_json j;
    j["degree"] = row.degree;
    j["dist"] = row.dist;
    j["residual"] = row.residual;
    j["k"] = row.k_split();
    return j;
}

} // namespace

int cmd_dist(const DistOptions& opt) {
    Manifest manifest("dist", opt.seed);
    return guarded(manifest, "dist", [&]() {
        const HomogeneousPoly p = read_poly_file(opt.polyfile);
        manifest.add_input(opt.polyfile);

        SearchConfig cfg;
        cfg.restarts = opt.restarts;
        cfg.seed = opt.seed;
        manifest.set_config({{"polyfile", opt.polyfile},
                             {"general_check", opt.general_check},
                             {"search", json_search_config(cfg)}});

        const DistanceReport rep = distance_bombieri(p, cfg);
        const bool degenerate = rep.dist <= 1e-8 * bombieri_norm(p);

        nlohmann::ordered_json j;
        j["format"] = 1;
        j["command"] = "dist";
        nlohmann::ordered_json body = json_distance_report(rep);
        for (auto& item : body.items()) j[item.key()] = std::move(item.value());
        j["degenerate"] = degenerate;

        if (opt.general_check) {
            nlohmann::ordered_json checks = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < rep.minimizers.size(); ++i) {
                const SpherePoint& c = rep.minimizers[i];
                const double general = distance_general_at(p, c.coords());
                const double direct =
                    std::sqrt(std::max(rep.delta_at_minimizers[i], 0.0));
                const double scale = std::max(direct, 1e-12);
                nlohmann::ordered_json item;
                item["point"] = json_vector(c.coords());
                item["general"] = general;
                item["sqrt_delta"] = direct;
                item["rel_error"] = std::abs(general - direct) / scale;
                checks.push_back(std::move(item));
            }
            j["general_check"] = std::move(checks);
        }

        j["manifest"] = manifest.build();
        emit(j);
        if (degenerate) {
            std::cerr << "dist: the polynomial lies on the discriminant "
                         "within tolerance\n";
            return 3;
        }
        return 0;
    });
}

int cmd_classify(const ClassifyOptions& opt) {
    Manifest manifest("classify", opt.seed);
    return guarded(manifest, "classify", [&]() {
        const HomogeneousPoly p = read_poly_file(opt.polyfile);
        manifest.add_input(opt.polyfile);

        SearchConfig cfg;
        cfg.restarts = opt.restarts;
        cfg.seed = opt.seed;
        manifest.set_config({{"polyfile", opt.polyfile},
                             {"classify_tol", opt.classify_tol},
                             {"search", json_search_config(cfg)}});

        const QuasiSingularSet set =
            find_quasi_singular(p, cfg, opt.classify_tol);

        nlohmann::ordered_json j;
        j["format"] = 1;
        j["command"] = "classify";
        j["dist"] = set.report.dist;
        j["continuum"] = set.possibly_continuum;
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (const QuasiSingularPoint& q : set.points) {
            pts.push_back(json_classification(p, q, opt.classify_tol));
        }
        j["points"] = std::move(pts);
        j["manifest"] = manifest.build();
        emit(j);
        return 0;
    });
}

int cmd_optimize(const OptimizeOptions& opt) {
    Manifest manifest("optimize", opt.seed);
    return guarded(manifest, "optimize", [&]() {
        MaximizerConfig cfg;
        std::vector<MaximizerState> trajectory;

        if (!opt.resume.empty()) {
            std::pair<MaximizerState, MaximizerConfig> restored =
                load_checkpoint(opt.resume);
            manifest.add_input(opt.resume);
            cfg = std::move(restored.second);
            if (opt.has_max_iters) cfg.max_iters = opt.max_iters;
            if (opt.has_residual_tol) cfg.residual_tol = opt.residual_tol;
            if (opt.has_refresh_every) cfg.refresh_every = opt.refresh_every;
            if (opt.has_restarts) cfg.search.restarts = opt.restarts;
            if (opt.has_seed) cfg.search.seed = opt.seed;
            if (!opt.checkpoint.empty()) cfg.checkpoint_path = opt.checkpoint;
            if (opt.checkpoint_every > 0) {
                cfg.checkpoint_every = opt.checkpoint_every;
            }
            manifest.set_config({{"resume", opt.resume},
                                 {"max_iters", cfg.max_iters},
                                 {"residual_tol", cfg.residual_tol},
                                 {"refresh_every", cfg.refresh_every},
                                 {"checkpoint_every", cfg.checkpoint_every},
                                 {"checkpoint_path", cfg.checkpoint_path},
                                 {"classify_tol", cfg.classify_tol},
                                 {"search", json_search_config(cfg.search)}});
            trajectory = run_from(std::move(restored.first), cfg);
        } else {
            const HomogeneousPoly p0 = read_poly_file(opt.polyfile);
            manifest.add_input(opt.polyfile);
            cfg.max_iters = opt.max_iters;
            cfg.residual_tol = opt.residual_tol;
            cfg.refresh_every = opt.refresh_every;
            cfg.checkpoint_every = opt.checkpoint_every;
            cfg.checkpoint_path = opt.checkpoint;
            cfg.search.restarts = opt.restarts;
            cfg.search.seed = opt.seed;
            manifest.set_config({{"polyfile", opt.polyfile},
                                 {"max_iters", cfg.max_iters},
                                 {"residual_tol", cfg.residual_tol},
                                 {"refresh_every", cfg.refresh_every},
                                 {"checkpoint_every", cfg.checkpoint_every},
                                 {"checkpoint_path", cfg.checkpoint_path},
                                 {"classify_tol", cfg.classify_tol},
                                 {"search", json_search_config(cfg.search)}});
            trajectory = run(p0, cfg);
        }

        const MaximizerState& final_state = trajectory.back();
        const bool converged = final_state.residual <= cfg.residual_tol;
        for (const MaximizerState& st : trajectory) {
            std::cerr << "iter " << st.iteration << " dist " << st.dist
                      << " residual " << st.residual << "\n";
        }

        nlohmann::ordered_json j;
        j["format"] = 1;
        j["command"] = "optimize";
        nlohmann::ordered_json steps = nlohmann::ordered_json::array();
        for (const MaximizerState& st : trajectory) {
            steps.push_back({{"iteration", st.iteration},
                             {"dist", st.dist},
                             {"residual", st.residual}});
        }
        j["trajectory"] = std::move(steps);
        j["final"] = json_maximizer_final(final_state, converged);
        j["row"] = json_table_row(report_row(final_state));
        try {
            const Certificate cert =
                certificate(final_state.P, final_state.qs);
            j["certificate"] = {{"lambdas", cert.lambdas},
                                {"residual", cert.residual}};
        } catch (const Error& e) {
            j["certificate"] = nullptr;
            j["certificate_note"] = e.what();
        }

        if (!cfg.checkpoint_path.empty()) {
            save_checkpoint(final_state, cfg, cfg.checkpoint_path);
            manifest.add_output(cfg.checkpoint_path);
        }
        j["manifest"] = manifest.build();
        emit(j);
        if (final_state.stalled) {
            std::cerr << "optimize: stalled at iteration "
                      << final_state.iteration << "\n";
            return 4;
        }
        return 0;
    });
}

int cmd_univariate(const UnivariateOptions& opt) {
    Manifest manifest("univariate", 0);
    return guarded(manifest, "univariate", [&]() {
        if (opt.trd) {
            manifest.set_config({{"mode", "trd"}, {"r", opt.r}, {"d", opt.d}});
            const HomogeneousPoly t = make_T(opt.r, opt.d);
            nlohmann::ordered_json j;
            j["format"] = 1;
            j["command"] = "univariate";
            j["mode"] = "trd";
            j["r"] = opt.r;
            j["d"] = opt.d;
            const ExactRational norm_sq = bombieri_norm_sq_exact(t);
            j["norm_sq"] = norm_sq.str();
            j["norm_sq_value"] = static_cast<double>(norm_sq.num) /
                                 static_cast<double>(norm_sq.den);
            j["dist_raw"] = closed_form_distance(opt.r, opt.d);
            j["dist_normalized"] =
                closed_form_distance_normalized(opt.r, opt.d);
            j["poly"] = write_poly_lines(t);
            j["manifest"] = manifest.build();
            emit(j);
            return 0;
        }

        if (opt.identities) {
            manifest.set_config({{"mode", "identities"},
                                 {"dmax", opt.dmax},
                                 {"grid", opt.grid}});
            // CSV export: a manifest comment line, a header, then one
            // row per identity over the valid domain d/3 < r <= d with
            // d - r even.
            std::cout << "# manifest " << manifest.build().dump() << "\n";
            std::cout << "d,r,identity,max_error\n";
            for (int d = 1; d <= opt.dmax; ++d) {
                for (int r = d % 2 == 0 ? 2 : 1; r <= d; r += 2) {
                    if (3 * r <= d) continue;
                    const TrigIdentityErrors errs =
                        trig_identity_errors(r, d, opt.grid);
                    std::cout << d << "," << r << ",cos,"
                              << format_scalar(errs.cos_error) << "\n";
                    std::cout << d << "," << r << ",sin,"
                              << format_scalar(errs.sin_error) << "\n";
                }
            }
            return 0;
        }

        // Gram mode: equally spaced angles i pi/(d+1) are pairwise
        // distinct modulo pi, the factorization's validity domain.
        manifest.set_config(
            {{"mode", "gram"}, {"d", opt.gram_degree}});
        const int d = opt.gram_degree;
        if (d < 1) throw ShapeError("univariate: --gram needs a degree >= 1");
        std::vector<double> thetas(static_cast<std::size_t>(d) + 1);
        for (int i = 0; i <= d; ++i) {
            thetas[static_cast<std::size_t>(i)] =
                i * std::numbers::pi / (d + 1);
        }
        const GramPowers gp = gram_powers(thetas, d);
        nlohmann::ordered_json j;
        j["format"] = 1;
        j["command"] = "univariate";
        j["mode"] = "gram";
        j["d"] = d;
        j["thetas"] = thetas;
        nlohmann::ordered_json g = nlohmann::ordered_json::array();
        nlohmann::ordered_json v = nlohmann::ordered_json::array();
        for (int i = 0; i <= d; ++i) {
            g.push_back(json_vector(gp.G.row(i).transpose()));
            v.push_back(json_vector(gp.V.row(i).transpose()));
        }
        j["G"] = std::move(g);
        j["V"] = std::move(v);
        j["det_v"] = gp.det_v;
        j["manifest"] = manifest.build();
        emit(j);
        return 0;
    });
}

int cmd_bounds(const BoundsOptions& opt) {
    Manifest manifest("bounds", opt.seed);
    return guarded(manifest, "bounds", [&]() {
        const HomogeneousPoly p = read_poly_file(opt.polyfile);
        manifest.add_input(opt.polyfile);

        SearchConfig cfg;
        cfg.restarts = opt.restarts;
        cfg.seed = opt.seed;
        manifest.set_config({{"polyfile", opt.polyfile},
                             {"samples", opt.samples},
                             {"search", json_search_config(cfg)}});

        const DistanceReport rep = distance_bombieri(p, cfg);
        const BoundsReport bounds = bounds_report(p, rep.dist);

        // Cap checks run at the global-minimum critical points, where
        // the guarantee applies.
        const std::vector<SpherePoint> crits = critical_points(p, cfg);
        double min_crit = std::numeric_limits<double>::infinity();
        for (const SpherePoint& c : crits) {
            min_crit = std::min(min_crit, std::abs(eval(p, c.coords())));
        }
        const double crit_slack = 1e-9 * bombieri_norm(p);
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const SpherePoint& c : crits) {
            if (std::abs(eval(p, c.coords())) > min_crit + crit_slack) {
                continue;
            }
            const bool pass = empirical_cap_check(p, c, rep.dist, opt.samples,
                                                  1.0, opt.seed);
            checks.push_back({{"point", json_vector(c.coords())},
                              {"cap_pass", pass},
                              {"samples", opt.samples}});
        }

        nlohmann::ordered_json j;
        j["format"] = 1;
        j["command"] = "bounds";
        j["dist"] = rep.dist;
        j["cap_radius"] = bounds.cap_radius;
        j["separation"] = bounds.separation;
        j["band_bound_pi_over_sqrt_d"] = std::numbers::pi / std::sqrt(p.d());
        j["checks"] = std::move(checks);
        j["notes"] = bounds.notes;
        j["manifest"] = manifest.build();
        emit(j);
        return 0;
    });
}

int cmd_table(const TableOptions& opt) {
    Manifest manifest("table", opt.seed);
    return guarded(manifest, "table", [&]() {
        manifest.set_config({{"dmax", opt.dmax}, {"restarts", opt.restarts}});

        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int d = 2; d <= opt.dmax; ++d) {
            const HomogeneousPoly pd = nested_chebyshev(d);
            const ExactRational norm_sq = bombieri_norm_sq_exact(pd);
            const double closed =
                std::sqrt(static_cast<double>(norm_sq.den) /
                          static_cast<double>(norm_sq.num));

            MaximizerConfig cfg;
            cfg.search.restarts = opt.restarts;
            cfg.search.seed = opt.seed;
            const MaximizerState st = initial_state(pd, cfg);
            const TableRow row = report_row(st);

            nlohmann::ordered_json r = json_table_row(row);
            r["norm_sq"] = norm_sq.str();
            r["dist_closed"] = closed;
            r["error"] = std::abs(st.dist - closed);
            r["continuum"] = st.possibly_continuum;
            rows.push_back(std::move(r));
            std::cerr << "table: degree " << d << " dist " << st.dist
                      << " closed " << closed << "\n";
        }

        nlohmann::ordered_json j;
        j["format"] = 1;
        j["command"] = "table";
        j["rows"] = std::move(rows);
        j["manifest"] = manifest.build();
        emit(j);
        return 0;
    });
}

} // namespace discdist::tools
