#include "discdist/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "discdist/bombieri.hpp"
#include "discdist/errors.hpp"
#include "discdist/rng.hpp"

namespace discdist {

namespace {

Eigen::VectorXd normalized(const Eigen::VectorXd& v) {
    return v / v.norm();
}

// Geodesic polar angle with area-uniform density sin^(n-2) on the open
// interval (0, alpha).
double sample_polar_angle(Rng& rng, int n, double alpha) {
    if (n == 2) return rng.uniform(0.0, alpha);
    if (n == 3) {
        const double u = rng.uniform();
        return std::acos(1.0 - u * (1.0 - std::cos(alpha)));
    }
    while (true) {
        const double psi = rng.uniform(0.0, alpha);
        const double accept =
            std::pow(std::sin(psi), static_cast<double>(n - 2));
        if (rng.uniform() <= accept) return psi;
    }
}

} // namespace

double cap_radius(const HomogeneousPoly& p, double dist) {
    if (!(dist > 0.0)) {
        throw DegenerateError(
            "cap_radius: requires a positive distance, got " +
            std::to_string(dist));
    }
    const double norm = bombieri_norm(p);
    if (!(norm > 0.0)) throw DegenerateError("cap_radius: zero polynomial");
    return std::sqrt(2.0 * dist / norm) / p.d();
}

double separation_bound(const HomogeneousPoly& p, double dist) {
    return 2.0 * cap_radius(p, dist);
}

BoundsReport bounds_report(const HomogeneousPoly& p, double dist) {
    BoundsReport rep;
    rep.cap_radius = cap_radius(p, dist);
    rep.separation = 2.0 * rep.cap_radius;
    rep.band_half_width = dist;
    rep.notes =
        "separation applies between distinct components of the zero set "
        "and is vacuous when there is a single component";
    return rep;
}

bool empirical_cap_check(const HomogeneousPoly& p, const SpherePoint& x,
                         double dist, int samples, double radius_scale,
                         std::uint64_t seed) {
    if (samples < 1) {
        throw ShapeError("empirical_cap_check: samples must be >= 1");
    }
    if (!(radius_scale > 0.0)) {
        throw ShapeError("empirical_cap_check: radius_scale must be positive");
    }
    const int n = p.n();
    const double norm = bombieri_norm(p);
    const Eigen::VectorXd tg = tangential_gradient(p, x);
    if (tg.norm() > 1e-6 * p.d() * norm) {
        throw ClassifyError(
            "empirical_cap_check: the point is not critical, "
            "||grad^T P|| = " +
            std::to_string(tg.norm()));
    }

    const double alpha =
        std::min(radius_scale * cap_radius(p, dist), std::numbers::pi);
    const Eigen::MatrixXd basis = tangent_basis(x.coords());
    const bool positive = eval(p, x.coords()) > 0.0;

    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const double psi = sample_polar_angle(rng, n, alpha);
        Eigen::VectorXd w = rng.gaussian_vector(n - 1);
        while (!(w.norm() > 1e-30)) w = rng.gaussian_vector(n - 1);
        const Eigen::VectorXd y =
            std::cos(psi) * x.coords() +
            std::sin(psi) * (basis * normalized(w));
        const double v = eval(p, y);
        if (v == 0.0 || (v > 0.0) != positive) return false;
    }
    return true;
}

double band_inequality_margin(const HomogeneousPoly& p, const SpherePoint& x,
                              double m) {
    const double v = eval(p, x.coords());
    const Eigen::VectorXd tg = tangential_gradient(p, x);
    return tg.squaredNorm() - p.d() * (m * m - v * v);
}

double band_length_bound(double a, double b, double m, int d) {
    if (!(m > 0.0)) {
        throw DegenerateError("band_length_bound: m must be positive");
    }
    if (std::abs(a) >= m || std::abs(b) >= m) {
        throw DegenerateError(
            "band_length_bound: levels must satisfy |a| < m and |b| < m");
    }
    if (d < 1) throw ShapeError("band_length_bound: degree must be >= 1");
    return std::abs(std::asin(b / m) - std::asin(a / m)) /
           std::sqrt(static_cast<double>(d));
}

namespace {

// One direction of the flow; returns the arc length and writes the
// endpoint value of P.  sgn = +1 follows increasing P.
double trace_one(const HomogeneousPoly& p, Eigen::VectorXd x, double sgn,
                 double target, double floor, const TraceConfig& cfg,
                 int* steps, bool* hit_critical, double* endpoint) {
    const auto field = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        Eigen::VectorXd g = gradient(p, y);
        g -= g.dot(y) * y;
        const double gn = g.norm();
        if (!(gn > 1e-300)) return Eigen::VectorXd::Zero(y.size());
        return (sgn / gn) * g;
    };
    const auto rk4 = [&](const Eigen::VectorXd& y, double h) -> Eigen::VectorXd {
        const Eigen::VectorXd k1 = field(y);
        const Eigen::VectorXd k2 = field(normalized(y + 0.5 * h * k1));
        const Eigen::VectorXd k3 = field(normalized(y + 0.5 * h * k2));
        const Eigen::VectorXd k4 = field(normalized(y + h * k3));
        return normalized(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    };

    double arc = 0.0;
    double h = cfg.h_max;
    while (true) {
        if (*steps >= cfg.max_steps) {
            throw SearchError("trace_gradient_curve: step budget of " +
                              std::to_string(cfg.max_steps) + " exhausted");
        }
        Eigen::VectorXd g = gradient(p, x);
        g -= g.dot(x) * x;
        if (g.norm() <= floor) {
            *hit_critical = true;
            *endpoint = eval(p, x);
            return arc;
        }

        const Eigen::VectorXd y = rk4(x, h);
        // Halve the step while the field turns too fast across it.
        const double turn = field(x).dot(field(y));
        if (turn < std::cos(0.2) && h > cfg.h_min) {
            h = std::max(0.5 * h, cfg.h_min);
            continue;
        }

        ++*steps;
        if (std::abs(eval(p, y)) >= target) {
            // Bisect the step fraction to land on |P| = target.
            double lo = 0.0, hi = h;
            Eigen::VectorXd yhit = y;
            for (int i = 0; i < 50; ++i) {
                const double mid = 0.5 * (lo + hi);
                const Eigen::VectorXd ym = rk4(x, mid);
                if (std::abs(eval(p, ym)) >= target) {
                    hi = mid;
                    yhit = ym;
                } else {
                    lo = mid;
                }
            }
            arc += angle_between(x, yhit);
            *endpoint = eval(p, yhit);
            return arc;
        }
        arc += angle_between(x, y);
        x = y;
        if (turn > std::cos(0.02)) h = std::min(2.0 * h, cfg.h_max);
    }
}

} // namespace

TraceResult trace_gradient_curve(const HomogeneousPoly& p,
                                 const SpherePoint& start, double m,
                                 const TraceConfig& cfg) {
    if (!(m > 0.0)) {
        throw DegenerateError("trace_gradient_curve: m must be positive");
    }
    if (!(cfg.h_min > 0.0) || cfg.h_max < cfg.h_min || cfg.max_steps < 1) {
        throw ShapeError("trace_gradient_curve: bad step configuration");
    }
    const double v0 = eval(p, start.coords());
    if (std::abs(v0) >= m) {
        throw DegenerateError(
            "trace_gradient_curve: start lies outside the open band, "
            "|P(start)| = " +
            std::to_string(std::abs(v0)));
    }
    const double target = m * (1.0 - 1e-6);
    const double floor = cfg.grad_floor_rel * p.d() * bombieri_norm(p);

    TraceResult res;
    if (std::abs(v0) >= target) {
        res.a = res.b = v0;
        return res;
    }
    res.arc_length += trace_one(p, start.coords(), +1.0, target, floor, cfg,
                                &res.steps, &res.hit_critical, &res.b);
    res.arc_length += trace_one(p, start.coords(), -1.0, target, floor, cfg,
                                &res.steps, &res.hit_critical, &res.a);
    return res;
}

} // namespace discdist
