#include "sphere_min.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "discdist/errors.hpp"
#include "discdist/rng.hpp"

namespace discdist {
namespace detail {

namespace {

// Eigenvalue-modified Newton step in tangent coordinates: solves
// Hr s = -gr with the spectrum replaced by max(|lambda|, floor), which
// keeps the step a descent direction near saddles and bounded along
// flat valleys.  Falls back to -gr when Hr vanishes.
Eigen::VectorXd modified_newton_step(const Eigen::MatrixXd& hr,
                                     const Eigen::VectorXd& gr,
                                     double rel_floor, bool keep_sign) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hr);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double lam_max = lam.cwiseAbs().maxCoeff();
    if (!(lam_max > 1e-300)) return -gr;
    const double floor_val = rel_floor * lam_max;
    const Eigen::VectorXd w = es.eigenvectors().transpose() * gr;
    Eigen::VectorXd z(gr.size());
    for (int i = 0; i < gr.size(); ++i) {
        if (keep_sign) {
            // Root finding: use the true inverse where safe, drop the
            // nearly singular components instead of exploding them.
            z[i] = std::abs(lam[i]) > floor_val ? -w[i] / lam[i] : 0.0;
        } else {
            z[i] = -w[i] / std::max(std::abs(lam[i]), floor_val);
        }
    }
    return es.eigenvectors() * z;
}

} // namespace

LocalMin minimize_on_sphere(
    const HomogeneousPoly& g, const SpherePoint& x0, int max_iters,
    double gtol_abs, double value_scale, int warmup_iters,
    const std::function<bool(const SpherePoint&)>& early_stop) {
    const int n = g.n();
    const double deg = g.d();
    const double slack = 1e-13 * value_scale;

    SpherePoint x = x0;
    double fx = eval(g, x.coords());
    Eigen::VectorXd grad(n);
    Eigen::VectorXd r(n);
    double rnorm = 0.0;

    int iter = 0;
    for (; iter < max_iters; ++iter) {
        grad = gradient(g, x.coords());
        r = grad - deg * fx * x.coords();
        rnorm = r.norm();
        if (early_stop && early_stop(x)) return {x, fx, rnorm, true, iter};
        if (rnorm <= gtol_abs) return {x, fx, rnorm, true, iter};

        bool moved = false;
        if (iter < warmup_iters) {
            // Projected gradient with backtracking, starting from a move
            // of about 0.2 radians.
            double t = 0.2 / std::max(rnorm, 1e-300);
            for (int k = 0; k < 30 && !moved; ++k, t *= 0.5) {
                const SpherePoint y(x.coords() - t * r);
                const double fy = eval(g, y.coords());
                if (fy < fx - 1e-4 * t * rnorm * rnorm) {
                    x = y;
                    fx = fy;
                    moved = true;
                }
            }
            if (moved) continue;
            // No gradient progress, so the point is already nearly
            // critical; try a Newton step in this same iteration.
        }

        const Eigen::MatrixXd B = tangent_basis(x.coords());
        Eigen::MatrixXd Hr =
            B.transpose() * hessian(g, x.coords()) * B;
        const double shift = grad.dot(x.coords());
        for (int i = 0; i + 1 < n; ++i) Hr(i, i) -= shift;

        Eigen::VectorXd s = modified_newton_step(Hr, B.transpose() * r,
                                                 1e-10, /*keep_sign=*/false);
        const double snorm = s.norm();
        if (snorm > 0.5) s *= 0.5 / snorm;

        double step = 1.0;
        for (int k = 0; k < 25 && !moved; ++k, step *= 0.5) {
            const SpherePoint y(x.coords() + step * (B * s));
            const double fy = eval(g, y.coords());
            const Eigen::VectorXd grady = gradient(g, y.coords());
            const double rynorm = (grady - deg * fy * y.coords()).norm();
            // Plain decrease, or a gradient-shrinking step once values
            // are flat to roundoff (final polish near the minimum).
            if (fy < fx || (fy <= fx + slack && rynorm < 0.9 * rnorm)) {
                x = y;
                fx = fy;
                moved = true;
            }
        }
        if (!moved) break;
    }

    grad = gradient(g, x.coords());
    r = grad - deg * fx * x.coords();
    rnorm = r.norm();
    const bool conv =
        rnorm <= gtol_abs || (early_stop && early_stop(x));
    return {x, fx, rnorm, conv, iter};
}

LocalMin newton_critical_point(const HomogeneousPoly& p,
                               const SpherePoint& x0, int max_iters,
                               double gtol_abs) {
    const int n = p.n();
    const double d = p.d();

    SpherePoint x = x0;
    double value = eval(p, x.coords());
    Eigen::VectorXd r = gradient(p, x.coords()) - d * value * x.coords();
    double rnorm = r.norm();

    int iter = 0;
    for (; iter < max_iters && rnorm > gtol_abs; ++iter) {
        const Eigen::MatrixXd B = tangent_basis(x.coords());
        Eigen::MatrixXd Hr = B.transpose() * hessian(p, x.coords()) * B;
        for (int i = 0; i + 1 < n; ++i) Hr(i, i) -= d * value;

        Eigen::VectorXd s = modified_newton_step(Hr, B.transpose() * r,
                                                 1e-12, /*keep_sign=*/true);
        const double snorm = s.norm();
        if (snorm > 0.5) s *= 0.5 / snorm;

        bool moved = false;
        double step = 1.0;
        for (int k = 0; k < 25 && !moved; ++k, step *= 0.5) {
            const SpherePoint y(x.coords() + step * (B * s));
            const double vy = eval(p, y.coords());
            const Eigen::VectorXd ry =
                gradient(p, y.coords()) - d * vy * y.coords();
            if (ry.norm() < rnorm) {
                x = y;
                value = vy;
                r = ry;
                rnorm = ry.norm();
                moved = true;
            }
        }
        if (!moved) break;
    }
    return {x, value, rnorm, rnorm <= gtol_abs, iter};
}

HomogeneousPoly delta_poly(const HomogeneousPoly& p) {
    const int n = p.n();
    const int d = p.d();
    if (d < 2) throw ShapeError("delta_poly: degree must be at least 2");

    HomogeneousPoly q(n, 2);
    for (int j = 0; j < n; ++j) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(j)] = 2;
        q.set_coeff(MultiIndex(e), 1.0);
    }
    HomogeneousPoly s(n, 2 * (d - 1));
    for (int i = 0; i < n; ++i) {
        const HomogeneousPoly pi = differentiate(p, i);
        s += pi * pi;
    }
    return (1.0 - d) * (p * p) + (1.0 / d) * (q * s);
}

HomogeneousPoly tangential_gradient_sq_poly(const HomogeneousPoly& p) {
    const int n = p.n();
    const int d = p.d();
    if (d < 2) {
        throw ShapeError(
            "tangential_gradient_sq_poly: degree must be at least 2");
    }

    HomogeneousPoly q(n, 2);
    for (int j = 0; j < n; ++j) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(j)] = 2;
        q.set_coeff(MultiIndex(e), 1.0);
    }
    HomogeneousPoly s(n, 2 * (d - 1));
    for (int i = 0; i < n; ++i) {
        const HomogeneousPoly pi = differentiate(p, i);
        s += pi * pi;
    }
    return q * s - static_cast<double>(d) * d * (p * p);
}

std::vector<Cluster> fold_and_cluster(const std::vector<SpherePoint>& pts,
                                      const std::vector<double>& values,
                                      double cluster_angle) {
    const std::size_t m = pts.size();
    std::vector<Eigen::VectorXd> folded;
    folded.reserve(m);
    for (const SpherePoint& pt : pts) {
        folded.push_back(antipodal_representative(pt.coords()));
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) {
                  const Eigen::VectorXd& u = folded[a];
                  const Eigen::VectorXd& v = folded[b];
                  for (int i = 0; i < u.size(); ++i) {
                      if (u[i] != v[i]) return u[i] > v[i];
                  }
                  return a < b;
              });

    const double cos_thresh = std::cos(cluster_angle);
    std::vector<Cluster> clusters;
    for (std::size_t idx : order) {
        bool joined = false;
        for (Cluster& c : clusters) {
            if (std::abs(folded[idx].dot(c.rep.coords())) >= cos_thresh) {
                c.count += 1;
                c.value = std::min(c.value, values[idx]);
                joined = true;
                break;
            }
        }
        if (!joined) {
            clusters.push_back({SpherePoint(folded[idx]), values[idx], 1});
        }
    }
    return clusters;
}

std::vector<SpherePoint> search_seeds(int n, const SearchConfig& cfg,
                                      std::uint64_t stream_base) {
    std::vector<SpherePoint> seeds;
    seeds.reserve(static_cast<std::size_t>(2 * n + cfg.restarts));
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[i] = 1.0;
        seeds.emplace_back(e);
        seeds.emplace_back(Eigen::VectorXd(-e));
    }
    for (int k = 0; k < cfg.restarts; ++k) {
        Rng rng(Rng::derive(cfg.seed,
                            stream_base + static_cast<std::uint64_t>(k)));
        seeds.push_back(rng.sphere_point(n));
    }
    return seeds;
}

} // namespace detail
} // namespace discdist
