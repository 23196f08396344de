/*
 * sphere_min.hpp - library-internal sphere optimization machinery shared
 * by the distance search and the maximizer.  Not installed.
 */
#ifndef DISCDIST_SPHERE_MIN_HPP
#define DISCDIST_SPHERE_MIN_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "discdist/distance.hpp"
#include "discdist/poly.hpp"
#include "discdist/sphere.hpp"

namespace discdist {
namespace detail {

// Outcome of one local search on the sphere.
struct LocalMin {
    SpherePoint x;
    double value;
    double grad_norm;
    bool converged;
    int iters;
};

// Minimizes an even-degree homogeneous objective g over the sphere:
// warmup_iters projected-gradient steps with backtracking, then
// Riemannian Newton with eigenvalue-modified steps, retraction by
// renormalization, and a plateau rule that accepts gradient-shrinking
// steps once values are within roundoff (value_scale sets that scale).
// The optional predicate stops the search early when it returns true.
LocalMin minimize_on_sphere(
    const HomogeneousPoly& g, const SpherePoint& x0, int max_iters,
    double gtol_abs, double value_scale, int warmup_iters = 10,
    const std::function<bool(const SpherePoint&)>& early_stop = nullptr);

// Riemannian Newton for zeros of grad^T P (critical points of P on the
// sphere, of any index), with steps accepted on residual decrease.
LocalMin newton_critical_point(const HomogeneousPoly& p,
                               const SpherePoint& x0, int max_iters,
                               double gtol_abs);

// Degree-2d polynomial equal to delta_P on the sphere:
// (1-d) P^2 + (sum_j x_j^2) (sum_i (dP/dx_i)^2) / d.
HomogeneousPoly delta_poly(const HomogeneousPoly& p);

// Degree-2d polynomial equal to ||grad^T P||^2 on the sphere:
// (sum_j x_j^2) (sum_i (dP/dx_i)^2) - d^2 P^2.
HomogeneousPoly tangential_gradient_sq_poly(const HomogeneousPoly& p);

// One merged group of converged points: rep is the lexicographically
// largest antipodal representative among the members, value the smallest
// member value.
struct Cluster {
    SpherePoint rep;
    double value;
    int count;
};

// Folds each point onto its antipodal representative and greedily merges
// points closer than cluster_angle in the line metric
// acos(|<u, v>|).  Deterministic: points are processed in decreasing
// lexicographic order.
std::vector<Cluster> fold_and_cluster(const std::vector<SpherePoint>& pts,
                                      const std::vector<double>& values,
                                      double cluster_angle);

// The deterministic seed list of a multi-start search: the 2n coordinate
// axes, then cfg.restarts random points drawn from streams
// stream_base .. stream_base + restarts - 1 of cfg.seed.
std::vector<SpherePoint> search_seeds(int n, const SearchConfig& cfg,
                                      std::uint64_t stream_base);

} // namespace detail
} // namespace discdist

#endif // DISCDIST_SPHERE_MIN_HPP
