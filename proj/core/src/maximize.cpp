#include "discdist/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "json.hpp"

#include "discdist/bombieri.hpp"
#include "discdist/concurrency.hpp"
#include "discdist/errors.hpp"
#include "discdist/io.hpp"
#include "discdist/rng.hpp"
#include "sphere_min.hpp"

namespace discdist {

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Least-squares solve of the symmetric system g x = b by a truncated
// eigendecomposition; eigenvalues below 1e-10 of the largest are
// dropped.  Reports rank deficiency through *dependent.
Eigen::VectorXd pinv_solve(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                           bool* dependent) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (es.info() != Eigen::Success) {
        throw ConditioningError("pinv_solve: eigendecomposition failed");
    }
    const double lam_max = es.eigenvalues().cwiseAbs().maxCoeff();
    const double cutoff = 1e-10 * lam_max;
    Eigen::VectorXd w = es.eigenvectors().transpose() * b;
    bool deficient = !(lam_max > 0.0);
    for (int i = 0; i < w.size(); ++i) {
        if (std::abs(es.eigenvalues()[i]) > cutoff && lam_max > 0.0) {
            w[i] /= es.eigenvalues()[i];
        } else {
            w[i] = 0.0;
            deficient = true;
        }
    }
    if (dependent != nullptr) *dependent = deficient;
    return es.eigenvectors() * w;
}

std::vector<HomogeneousPoly> radii_for(const HomogeneousPoly& p,
                                       const std::vector<QuasiSingularPoint>& qs) {
    std::vector<HomogeneousPoly> radii;
    radii.reserve(qs.size());
    for (const QuasiSingularPoint& q : qs) {
        radii.push_back(contact_radius(p, q.c));
    }
    return radii;
}

double dist_of(const std::vector<QuasiSingularPoint>& qs) {
    double dmin = qs.front().delta;
    for (const QuasiSingularPoint& q : qs) dmin = std::min(dmin, q.delta);
    return std::sqrt(std::max(dmin, 0.0));
}

void sort_by_delta(std::vector<QuasiSingularPoint>& qs) {
    std::sort(qs.begin(), qs.end(),
              [](const QuasiSingularPoint& a, const QuasiSingularPoint& b) {
                  if (a.delta != b.delta) return a.delta < b.delta;
                  return lex_less(a.c.coords(), b.c.coords());
              });
}

// Fills the ascent fields of st from st.P and st.qs.  st.qs holds the
// tracked near-minimal points so that acceptance tests can watch pairs
// about to undercut the current minimum, but only the distance
// realizers (delta tied with the minimum within the same slack the
// distance report uses) drive the projection: for a binary form the
// span of the powers at all of its critical pairs always contains the
// form itself, so projecting onto the whole band would report a zero
// ascent direction everywhere.
void finish_state(MaximizerState& st) {
    sort_by_delta(st.qs);
    st.radii = radii_for(st.P, st.qs);
    const double slack = 1e-9 * bombieri_dot(st.P, st.P);
    std::vector<QuasiSingularPoint> active;
    for (const QuasiSingularPoint& q : st.qs) {
        if (q.delta <= st.qs.front().delta + slack) active.push_back(q);
    }
    AscentDirection asc = ascent_direction(st.P, active);
    st.D = std::move(asc.D);
    st.residual = asc.residual;
    st.dependent_radii = asc.dependent_radii;
    st.dist = dist_of(st.qs);
}

// Multi-start search of the near-minimal quasi-singular set.  Unlike
// the distance report, which keeps only the global minimizers, the
// ascent needs every cluster whose delta is within a factor 1.5 of the
// smallest: perturbing an extremal polynomial splits its equal-delta
// contact points across that band, and the projection of P must see
// all of them to reproduce the extremal combination.
std::pair<std::vector<QuasiSingularPoint>, bool> active_set_search(
    const HomogeneousPoly& p, const SearchConfig& scfg, double classify_tol) {
    const int d = p.d();
    const double normsq = bombieri_dot(p, p);
    const HomogeneousPoly g = detail::delta_poly(p);
    const double gtol = scfg.grad_tol * d * d * normsq;
    const double vscale = d * normsq;

    std::vector<SpherePoint> seeds = detail::search_seeds(
        p.n(), scfg, static_cast<std::uint64_t>(scfg.restarts));
    for (const SpherePoint& c : critical_points(p, scfg)) seeds.push_back(c);

    std::vector<std::optional<detail::LocalMin>> results(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), [&](int i) {
        results[static_cast<std::size_t>(i)] = detail::minimize_on_sphere(
            g, seeds[static_cast<std::size_t>(i)], scfg.max_newton_iters, gtol,
            vscale);
    });

    std::vector<SpherePoint> pts;
    std::vector<double> vals;
    for (const std::optional<detail::LocalMin>& r : results) {
        if (r->converged) {
            pts.push_back(r->x);
            vals.push_back(delta(p, r->x));
        }
    }
    if (pts.empty()) {
        throw SearchError(
            "maximizer search: none of the local searches converged");
    }

    const std::vector<detail::Cluster> clusters =
        detail::fold_and_cluster(pts, vals, scfg.cluster_angle);
    double dmin = clusters.front().value;
    for (const detail::Cluster& c : clusters) dmin = std::min(dmin, c.value);

    std::vector<QuasiSingularPoint> out;
    for (const detail::Cluster& c : clusters) {
        if (c.value > 1.5 * dmin) continue;
        try {
            out.push_back(classify(p, c.rep, classify_tol));
        } catch (const ClassifyError&) {
            // Barely converged stragglers are dropped here and found
            // again by a later refresh once the iterate settles.
        }
    }
    if (out.empty()) {
        throw SearchError(
            "maximizer search: no near-minimal cluster classified as "
            "quasi-singular");
    }
    std::sort(out.begin(), out.end(),
              [](const QuasiSingularPoint& a, const QuasiSingularPoint& b) {
                  if (a.delta != b.delta) return a.delta < b.delta;
                  return lex_less(a.c.coords(), b.c.coords());
              });
    const bool continuum =
        clusters.size() >=
        std::max<std::size_t>(
            2, static_cast<std::size_t>(3 * scfg.restarts) / 4);
    return {std::move(out), continuum};
}

// Re-locates the previous quasi-singular points on p by Newton's
// method, folds duplicates, keeps the clusters near the smallest delta
// value, and classifies the survivors.  Empty result signals that the
// tracking lost every point.
std::vector<QuasiSingularPoint> track_points(
    const HomogeneousPoly& p, const std::vector<QuasiSingularPoint>& prev,
    const MaximizerConfig& cfg) {
    const int d = p.d();
    const double normsq = bombieri_dot(p, p);
    const HomogeneousPoly g = detail::delta_poly(p);
    const double gtol = cfg.search.grad_tol * d * d * normsq;
    const double vscale = d * normsq;

    std::vector<std::optional<detail::LocalMin>> slots(prev.size());
    parallel_for(static_cast<int>(prev.size()), [&](int i) {
        detail::LocalMin r = detail::minimize_on_sphere(
            g, prev[static_cast<std::size_t>(i)].c, cfg.search.max_newton_iters,
            gtol, vscale, 0);
        if (r.converged) slots[static_cast<std::size_t>(i)] = std::move(r);
    });

    std::vector<SpherePoint> pts;
    std::vector<double> vals;
    for (const auto& slot : slots) {
        if (!slot) continue;
        pts.push_back(slot->x);
        vals.push_back(delta(p, slot->x));
    }
    if (pts.empty()) return {};

    const auto clusters =
        detail::fold_and_cluster(pts, vals, cfg.search.cluster_angle);
    double dmin = clusters.front().value;
    for (const auto& c : clusters) dmin = std::min(dmin, c.value);

    std::vector<QuasiSingularPoint> out;
    for (const auto& c : clusters) {
        if (c.value > 1.5 * dmin) continue;
        try {
            out.push_back(classify(p, c.rep, cfg.classify_tol));
        } catch (const ClassifyError&) {
            // A barely converged tracker can fail the gate; the point is
            // dropped and recovered by the next full refresh.
        }
    }
    std::sort(out.begin(), out.end(),
              [](const QuasiSingularPoint& a, const QuasiSingularPoint& b) {
                  if (a.delta != b.delta) return a.delta < b.delta;
                  return lex_less(a.c.coords(), b.c.coords());
              });
    return out;
}

// Full multi-start re-search at the current polynomial.  The seed is
// derived from the iteration counter alone so a resumed run refreshes
// identically.
void refresh_state(MaximizerState& st, const MaximizerConfig& cfg) {
    SearchConfig scfg = cfg.search;
    scfg.seed = Rng::derive(cfg.search.seed,
                            static_cast<std::uint64_t>(st.iteration));
    std::pair<std::vector<QuasiSingularPoint>, bool> found =
        active_set_search(st.P, scfg, cfg.classify_tol);
    st.qs = std::move(found.first);
    st.possibly_continuum = found.second;
    finish_state(st);
}

} // namespace

void MaximizerConfig::validate() const {
    if (max_iters < 1) throw ShapeError("MaximizerConfig: max_iters must be >= 1");
    if (!(residual_tol > 0.0)) {
        throw ShapeError("MaximizerConfig: residual_tol must be positive");
    }
    if (refresh_every < 0) {
        throw ShapeError("MaximizerConfig: refresh_every must be >= 0");
    }
    if (checkpoint_every < 0) {
        throw ShapeError("MaximizerConfig: checkpoint_every must be >= 0");
    }
    if (checkpoint_every > 0 && checkpoint_path.empty()) {
        throw ShapeError(
            "MaximizerConfig: checkpoint_every needs a checkpoint_path");
    }
    if (!(classify_tol > 0.0)) {
        throw ShapeError("MaximizerConfig: classify_tol must be positive");
    }
    search.validate();
}

AscentDirection ascent_direction(const HomogeneousPoly& p,
                                 const std::vector<QuasiSingularPoint>& qs) {
    if (qs.empty()) {
        throw ShapeError("ascent_direction: no quasi-singular points given");
    }
    const std::vector<HomogeneousPoly> radii = radii_for(p, qs);
    const int m = static_cast<int>(radii.size());
    Eigen::MatrixXd gram(m, m);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            gram(i, j) = bombieri_dot(radii[static_cast<std::size_t>(i)],
                                      radii[static_cast<std::size_t>(j)]);
            gram(j, i) = gram(i, j);
        }
        rhs[i] = bombieri_dot(p, radii[static_cast<std::size_t>(i)]);
    }

    AscentDirection out{HomogeneousPoly(p.n(), p.d()), 0.0, false};
    const Eigen::VectorXd lambda = pinv_solve(gram, rhs, &out.dependent_radii);
    HomogeneousPoly p1(p.n(), p.d());
    for (int i = 0; i < m; ++i) {
        p1 += lambda[i] * radii[static_cast<std::size_t>(i)];
    }
    out.D = p1 - p;
    out.residual = bombieri_dot(out.D, out.D);
    return out;
}

MaximizerState initial_state(const HomogeneousPoly& p0,
                             const MaximizerConfig& cfg) {
    cfg.validate();
    const double norm = bombieri_norm(p0);
    if (!(norm > 0.0)) {
        throw DegenerateError("initial_state: zero polynomial");
    }
    MaximizerState st(p0 * (1.0 / norm));
    std::pair<std::vector<QuasiSingularPoint>, bool> found =
        active_set_search(st.P, cfg.search, cfg.classify_tol);
    st.qs = std::move(found.first);
    st.possibly_continuum = found.second;
    finish_state(st);
    if (!(st.dist > 1e-8)) {
        throw DegenerateError(
            "initial_state: the start polynomial lies on the discriminant; "
            "there is no ascent direction away from distance zero");
    }
    return st;
}

MaximizerState step(const MaximizerState& state, double t,
                    const MaximizerConfig& cfg) {
    if (!(t > 0.0)) throw ShapeError("step: t must be positive");
    if (state.residual <= 1e-300) return state;

    for (int halve = 0; halve <= 30; ++halve, t *= 0.5) {
        HomogeneousPoly pt = state.P + t * state.D;
        const double nrm = bombieri_norm(pt);
        if (!(nrm > 0.0)) continue;
        pt *= 1.0 / nrm;

        std::vector<QuasiSingularPoint> tracked =
            track_points(pt, state.qs, cfg);
        if (tracked.empty()) continue;
        const double dist_t = dist_of(tracked);
        if (!(dist_t > state.dist)) continue;
        // The distance is 1-Lipschitz in the polynomial, so the tracked
        // value cannot legitimately exceed this bound; a violation means
        // the tracker drifted into non-minimal critical points and the
        // step must shrink until tracking is local again.
        const double lipschitz_cap =
            (state.dist + t * std::sqrt(state.residual)) / nrm +
            1e-9 * (1.0 + state.dist);
        if (dist_t > lipschitz_cap) continue;

        MaximizerState next(std::move(pt));
        next.qs = std::move(tracked);
        next.iteration = state.iteration + 1;
        next.possibly_continuum = state.possibly_continuum;
        finish_state(next);
        return next;
    }
    MaximizerState out = state;
    out.stalled = true;
    return out;
}

std::vector<MaximizerState> run(const HomogeneousPoly& p0,
                                const MaximizerConfig& cfg) {
    return run_from(initial_state(p0, cfg), cfg);
}

std::vector<MaximizerState> run_from(MaximizerState state,
                                     const MaximizerConfig& cfg) {
    cfg.validate();
    std::vector<MaximizerState> trajectory;
    trajectory.push_back(state);
    bool logged = true;
    int last_refresh = state.iteration;

    while (state.iteration < cfg.max_iters) {
        if (state.residual <= cfg.residual_tol) {
            // A state produced by a full search is trusted as is.  A
            // state produced by tracking must be confirmed by one: the
            // tracker cannot see minimizers born away from the points
            // it follows, so its dist claim needs an independent check.
            if (state.iteration == last_refresh) break;
            MaximizerState probe = state;
            refresh_state(probe, cfg);
            last_refresh = probe.iteration;
            if (probe.residual <= cfg.residual_tol &&
                std::abs(probe.dist - state.dist) <=
                    1e-9 * (1.0 + state.dist)) {
                break;
            }
            state = std::move(probe);
            trajectory.push_back(state);
            logged = true;
            continue;
        }

        if (cfg.refresh_every > 0 && state.iteration > last_refresh &&
            state.iteration % cfg.refresh_every == 0) {
            refresh_state(state, cfg);
            last_refresh = state.iteration;
            logged = false;
            continue;
        }

        MaximizerState next = step(state, 1.0, cfg);
        if (next.stalled) {
            if (state.iteration > last_refresh) {
                // The tracked active set may be stale; re-search once
                // before giving up on this iterate.
                refresh_state(state, cfg);
                last_refresh = state.iteration;
                logged = false;
                continue;
            }
            state.stalled = true;
            logged = false;
            break;
        }
        state = std::move(next);
        trajectory.push_back(state);
        logged = true;
        if (cfg.checkpoint_every > 0 && !cfg.checkpoint_path.empty() &&
            state.iteration % cfg.checkpoint_every == 0) {
            save_checkpoint(state, cfg, cfg.checkpoint_path);
        }
    }
    if (!logged) trajectory.push_back(state);
    return trajectory;
}

Certificate certificate(const HomogeneousPoly& p,
                        const std::vector<QuasiSingularPoint>& qs) {
    if (qs.empty()) {
        throw ShapeError("certificate: no quasi-singular points given");
    }
    for (const QuasiSingularPoint& q : qs) {
        if (q.kind != QsKind::QuasiDouble) {
            throw ClassifyError(
                "certificate: a quasi-cusp point is present; the "
                "linear-combination certificate needs quasi-double points "
                "only");
        }
    }
    const int d = p.d();
    const int m = static_cast<int>(qs.size());
    Eigen::MatrixXd gram(m, m);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            gram(i, j) = std::pow(
                qs[static_cast<std::size_t>(i)].c.coords().dot(
                    qs[static_cast<std::size_t>(j)].c.coords()),
                d);
            gram(j, i) = gram(i, j);
        }
        rhs[i] = eval(p, qs[static_cast<std::size_t>(i)].c.coords());
    }

    Certificate out;
    const Eigen::VectorXd lambda = pinv_solve(gram, rhs, nullptr);
    out.lambdas.assign(lambda.data(), lambda.data() + m);
    HomogeneousPoly misfit = p;
    for (int i = 0; i < m; ++i) {
        misfit -= lambda[i] *
                  pow_linear_form(qs[static_cast<std::size_t>(i)].c.coords(), d);
    }
    out.residual = bombieri_norm(misfit);
    return out;
}

TableRow report_row(const MaximizerState& state) {
    TableRow row;
    row.degree = state.P.d();
    row.dist = state.dist;
    row.residual = state.residual;
    for (const QuasiSingularPoint& q : state.qs) {
        if (q.kind != QsKind::QuasiDouble) continue;
        if (q.value < 0.0) {
            ++row.pairs_negative;
        } else {
            ++row.pairs_positive;
        }
    }
    // A continuum shows up as one cluster per converged start; the
    // dominant class is reported as infinite, isolated classes keep
    // their exact pair count.
    if (state.possibly_continuum) {
        const int total = row.pairs_negative + row.pairs_positive;
        const int threshold = std::max(2, total / 4);
        row.negative_infinite = row.pairs_negative >= threshold;
        row.positive_infinite = row.pairs_positive >= threshold;
    }
    return row;
}

std::string TableRow::k_split() const {
    const bool any_inf = negative_infinite || positive_infinite;
    const std::string total =
        any_inf ? "inf" : std::to_string(pairs_negative + pairs_positive);
    const std::string neg =
        negative_infinite ? "inf" : std::to_string(pairs_negative);
    const std::string pos =
        positive_infinite ? "inf" : std::to_string(pairs_positive);
    return total + " = " + neg + " + " + pos;
}

void save_checkpoint(const MaximizerState& state, const MaximizerConfig& cfg,
                     const std::string& path) {
    nlohmann::ordered_json j;
    j["format"] = 1;
    j["kind"] = "maximizer-checkpoint";
    j["iteration"] = state.iteration;
    j["stalled"] = state.stalled;
    j["possibly_continuum"] = state.possibly_continuum;
    j["dist"] = state.dist;
    j["residual"] = state.residual;
    j["config"] = {
        {"max_iters", cfg.max_iters},
        {"residual_tol", cfg.residual_tol},
        {"refresh_every", cfg.refresh_every},
        {"checkpoint_every", cfg.checkpoint_every},
        {"checkpoint_path", cfg.checkpoint_path},
        {"classify_tol", cfg.classify_tol},
        {"search",
         {{"restarts", cfg.search.restarts},
          {"max_newton_iters", cfg.search.max_newton_iters},
          {"grad_tol", cfg.search.grad_tol},
          {"cluster_angle", cfg.search.cluster_angle},
          {"seed", cfg.search.seed}}},
    };
    j["poly"] = write_poly_lines(state.P);
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const QuasiSingularPoint& q : state.qs) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int i = 0; i < q.c.n(); ++i) row.push_back(q.c[i]);
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);

    std::ofstream out(path);
    if (!out) {
        throw Error("save_checkpoint: cannot open '" + path + "' for writing");
    }
    out << j.dump(2) << "\n";
    out.flush();
    if (!out) throw Error("save_checkpoint: write to '" + path + "' failed");
}

std::pair<MaximizerState, MaximizerConfig> load_checkpoint(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_checkpoint: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
        if (j.at("kind").get<std::string>() != "maximizer-checkpoint") {
            throw ParseError("load_checkpoint: '" + path +
                             "' is not a maximizer checkpoint");
        }
        if (j.at("format").get<int>() != 1) {
            throw ParseError("load_checkpoint: unsupported format " +
                             j.at("format").dump());
        }

        MaximizerConfig cfg;
        const auto& jc = j.at("config");
        cfg.max_iters = jc.at("max_iters").get<int>();
        cfg.residual_tol = jc.at("residual_tol").get<double>();
        cfg.refresh_every = jc.at("refresh_every").get<int>();
        cfg.checkpoint_every = jc.at("checkpoint_every").get<int>();
        cfg.checkpoint_path = jc.at("checkpoint_path").get<std::string>();
        cfg.classify_tol = jc.at("classify_tol").get<double>();
        const auto& js = jc.at("search");
        cfg.search.restarts = js.at("restarts").get<int>();
        cfg.search.max_newton_iters = js.at("max_newton_iters").get<int>();
        cfg.search.grad_tol = js.at("grad_tol").get<double>();
        cfg.search.cluster_angle = js.at("cluster_angle").get<double>();
        cfg.search.seed = js.at("seed").get<std::uint64_t>();
        cfg.validate();

        MaximizerState st(
            read_poly(j.at("poly").get<std::vector<std::string>>()));
        st.iteration = j.at("iteration").get<int>();
        st.stalled = j.at("stalled").get<bool>();
        st.possibly_continuum = j.at("possibly_continuum").get<bool>();
        for (const auto& row : j.at("points")) {
            Eigen::VectorXd c(row.size());
            for (std::size_t i = 0; i < row.size(); ++i) {
                c[static_cast<int>(i)] = row[i].get<double>();
            }
            st.qs.push_back(classify(st.P, SpherePoint(c), cfg.classify_tol));
        }
        if (st.qs.empty()) {
            throw ParseError("load_checkpoint: checkpoint has no points");
        }
        finish_state(st);
        return {std::move(st), std::move(cfg)};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("load_checkpoint: '" + path + "': " + e.what());
    }
}

} // namespace discdist
