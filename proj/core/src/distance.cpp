#include "discdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "discdist/bombieri.hpp"
#include "discdist/concurrency.hpp"
#include "discdist/errors.hpp"
#include "sphere_min.hpp"

namespace discdist {

namespace {

bool lex_less(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    for (int i = 0; i < u.size(); ++i) {
        if (u[i] != v[i]) return u[i] < v[i];
    }
    return false;
}

} // namespace

void SearchConfig::validate() const {
    if (restarts < 1) {
        throw ShapeError("SearchConfig: restarts must be at least 1");
    }
    if (max_newton_iters < 1) {
        throw ShapeError("SearchConfig: max_newton_iters must be at least 1");
    }
    if (!(grad_tol > 0.0)) {
        throw ShapeError("SearchConfig: grad_tol must be positive");
    }
    if (!(cluster_angle > 0.0)) {
        throw ShapeError("SearchConfig: cluster_angle must be positive");
    }
}

double delta(const HomogeneousPoly& p, const SpherePoint& x) {
    if (p.d() < 2) throw ShapeError("delta: requires degree >= 2");
    const double d = p.d();
    const double v = eval(p, x.coords());
    const Eigen::VectorXd g = gradient(p, x.coords());
    const double gsq = g.squaredNorm();
    const double f1 = v * v + (g - d * v * x.coords()).squaredNorm() / d;
    const double f2 = (1.0 - d) * v * v + gsq / d;
    // The agreement check needs an absolute floor besides the relative
    // term: at a singular point of a polynomial on the discriminant both
    // value and gradient collapse into evaluation roundoff, so the local
    // scale shrinks quadratically while the difference, which equals
    // 2 v (d v - <g, x>) exactly, only shrinks linearly in the noise.
    const double scale = d * v * v + gsq / d + 1e-300;
    const double floor = 1e-26 * d * d * bombieri_dot(p, p);
    if (std::abs(f1 - f2) > 1e-10 * scale + floor) {
        throw Error("delta: the two closed forms disagree beyond roundoff");
    }
    return f1;
}

DistanceReport distance_bombieri(const HomogeneousPoly& p,
                                 const SearchConfig& cfg) {
    cfg.validate();
    if (p.d() < 2) {
        throw ShapeError("distance_bombieri: requires degree >= 2");
    }
    const double normsq = bombieri_dot(p, p);
    if (!(normsq > 0.0)) {
        throw DegenerateError("distance_bombieri: zero polynomial");
    }
    const double d = p.d();

    const HomogeneousPoly g = detail::delta_poly(p);
    const double gtol = cfg.grad_tol * d * d * normsq;
    const double vscale = d * normsq;

    // Seeds: axes and fresh random starts, plus the critical points of P,
    // which contain every quasi-double candidate.
    std::vector<SpherePoint> seeds = detail::search_seeds(
        p.n(), cfg, static_cast<std::uint64_t>(cfg.restarts));
    for (const SpherePoint& c : critical_points(p, cfg)) seeds.push_back(c);

    std::vector<std::optional<detail::LocalMin>> results(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), [&](int i) {
        results[static_cast<std::size_t>(i)] = detail::minimize_on_sphere(
            g, seeds[static_cast<std::size_t>(i)], cfg.max_newton_iters, gtol,
            vscale);
    });

    std::vector<SpherePoint> pts;
    std::vector<double> vals;
    double best_rnorm = std::numeric_limits<double>::infinity();
    for (const std::optional<detail::LocalMin>& r : results) {
        if (r->converged) {
            pts.push_back(r->x);
            vals.push_back(delta(p, r->x));
        } else {
            best_rnorm = std::min(best_rnorm, r->grad_norm);
        }
    }
    if (pts.empty()) {
        throw SearchError(
            "distance_bombieri: none of " + std::to_string(results.size()) +
            " local searches converged; best tangential gradient norm " +
            std::to_string(best_rnorm) + " against tolerance " +
            std::to_string(gtol));
    }

    const double delta_min = *std::min_element(vals.begin(), vals.end());
    const double slack = 1e-9 * normsq;
    std::vector<SpherePoint> kept;
    std::vector<double> kept_vals;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (vals[i] <= delta_min + slack) {
            kept.push_back(pts[i]);
            kept_vals.push_back(vals[i]);
        }
    }

    const std::vector<detail::Cluster> clusters =
        detail::fold_and_cluster(kept, kept_vals, cfg.cluster_angle);

    std::vector<std::pair<double, SpherePoint>> rows;
    rows.reserve(clusters.size());
    for (const detail::Cluster& c : clusters) {
        rows.emplace_back(delta(p, c.rep), c.rep);
    }
    std::sort(rows.begin(), rows.end(),
              [](const std::pair<double, SpherePoint>& a,
                 const std::pair<double, SpherePoint>& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return lex_less(a.second.coords(), b.second.coords());
              });

    DistanceReport report;
    report.config = cfg;
    const std::size_t continuum_count =
        std::max<std::size_t>(2, static_cast<std::size_t>(3 * cfg.restarts) / 4);
    report.possibly_continuum = rows.size() >= continuum_count;
    for (const std::pair<double, SpherePoint>& row : rows) {
        report.minimizers.push_back(row.second);
        report.delta_at_minimizers.push_back(row.first);
    }
    report.dist = std::sqrt(std::max(report.delta_at_minimizers.front(), 0.0));
    return report;
}

std::vector<SpherePoint> critical_points(const HomogeneousPoly& p,
                                         const SearchConfig& cfg) {
    cfg.validate();
    if (p.d() < 2) {
        throw ShapeError("critical_points: requires degree >= 2");
    }
    const double normsq = bombieri_dot(p, p);
    if (!(normsq > 0.0)) {
        throw DegenerateError("critical_points: zero polynomial");
    }
    const double d = p.d();
    const double norm = std::sqrt(normsq);

    const HomogeneousPoly h = detail::tangential_gradient_sq_poly(p);
    const double res_tol = cfg.grad_tol * d * norm;
    // Loose residual at which a point is close enough for the direct
    // Newton refinement to take over.
    const double basin = 1e-6 * d * norm;
    const double gtol_h = 1e-10 * 2.0 * d * d * d * normsq;
    const double vscale_h = d * d * normsq;

    const std::function<bool(const SpherePoint&)> near_critical =
        [&p, d, basin](const SpherePoint& x) {
            const double v = eval(p, x.coords());
            const Eigen::VectorXd r =
                gradient(p, x.coords()) - d * v * x.coords();
            return r.norm() <= basin;
        };

    const std::vector<SpherePoint> seeds = detail::search_seeds(p.n(), cfg, 0);
    std::vector<std::optional<detail::LocalMin>> results(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), [&](int i) {
        const detail::LocalMin warm = detail::minimize_on_sphere(
            h, seeds[static_cast<std::size_t>(i)], cfg.max_newton_iters,
            gtol_h, vscale_h, 10, near_critical);
        results[static_cast<std::size_t>(i)] =
            detail::newton_critical_point(p, warm.x, 30, 0.5 * res_tol);
    });

    std::vector<SpherePoint> pts;
    std::vector<double> vals;
    for (const std::optional<detail::LocalMin>& r : results) {
        if (r->converged && r->grad_norm <= res_tol) {
            pts.push_back(r->x);
            vals.push_back(std::abs(eval(p, r->x.coords())));
        }
    }

    std::vector<detail::Cluster> clusters =
        detail::fold_and_cluster(pts, vals, cfg.cluster_angle);
    std::sort(clusters.begin(), clusters.end(),
              [](const detail::Cluster& a, const detail::Cluster& b) {
                  if (a.value != b.value) return a.value < b.value;
                  return lex_less(a.rep.coords(), b.rep.coords());
              });

    std::vector<SpherePoint> out;
    out.reserve(clusters.size());
    for (const detail::Cluster& c : clusters) out.push_back(c.rep);
    if (out.size() < 2) {
        std::cerr << "warning: critical_points found " << out.size()
                  << " point(s); a generic polynomial has at least "
                  << 2 * p.n() << " on the sphere\n";
    }
    return out;
}

double critical_value_bound(const HomogeneousPoly& p,
                            const SearchConfig& cfg) {
    const std::vector<SpherePoint> crits = critical_points(p, cfg);
    if (crits.empty()) {
        throw SearchError("critical_value_bound: no critical points found");
    }
    double bound = std::numeric_limits<double>::infinity();
    for (const SpherePoint& c : crits) {
        bound = std::min(bound, std::abs(eval(p, c.coords())));
    }
    return bound;
}

} // namespace discdist
