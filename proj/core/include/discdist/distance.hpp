/*
 * distance.hpp - the pointwise singularity gauge delta and the distance
 * to the discriminant by multi-start minimization over the sphere.
 *
 * delta_P(x) = P(x)^2 + ||grad^T P(x)||^2 / d is the squared Bombieri
 * distance from P to the polynomials singular at x, and
 * dist(P, Delta) = min over the sphere of sqrt(delta_P).
 */
#ifndef DISCDIST_DISTANCE_HPP
#define DISCDIST_DISTANCE_HPP

#include <cstdint>
#include <vector>

#include "discdist/basis_matrices.hpp"
#include "discdist/poly.hpp"
#include "discdist/sphere.hpp"

namespace discdist {

inline constexpr std::uint64_t kDefaultSeed = 0xD15CD157ull;

// Parameters of the multi-start searches (distance, critical points, and
// the maximizer built on them).
struct SearchConfig {
    // Number of random sphere starts, on top of the 2n coordinate axes
    // and the critical points of P used as extra seeds.
    int restarts = 64;
    // Iteration cap of one local descent.
    int max_newton_iters = 100;
    // First-order tolerance on the tangential gradient of the objective,
    // relative to its natural scale (d^2 ||P||^2 for delta, d ||P|| for
    // the critical-point residual).
    double grad_tol = 1e-11;
    // Converged points closer than this angle, as lines through the
    // origin, are merged into one reported point.
    double cluster_angle = 1e-6;
    std::uint64_t seed = kDefaultSeed;

    // Throws ShapeError when a field is out of range.
    void validate() const;
};

struct DistanceReport {
    double dist = 0.0;
    // One representative per antipodal pair and per cluster, sorted by
    // (delta value, lexicographic coordinates).
    std::vector<SpherePoint> minimizers;
    std::vector<double> delta_at_minimizers;
    // Set when far more distinct minimizers survive clustering than a
    // finite minimizer set would produce; the minimum is then likely
    // attained along a curve, as for rotationally symmetric polynomials.
    bool possibly_continuum = false;
    SearchConfig config;
};

// delta_P(x), computed by both closed forms (the definition above and
// (1-d) P^2 + ||grad P||^2 / d, equal on the sphere); their agreement is
// asserted internally and the first is returned.  Requires d >= 2.
double delta(const HomogeneousPoly& p, const SpherePoint& x);

// dist(P, Delta) by multi-start local descent of delta_P: projected
// gradient warm-up, then Riemannian Newton steps retracted to the sphere.
// Throws DegenerateError for the zero polynomial and SearchError when no
// restart converges.
DistanceReport distance_bombieri(const HomogeneousPoly& p,
                                 const SearchConfig& cfg = SearchConfig());

// Critical points of P restricted to the sphere (zeros of grad^T P), one
// representative per antipodal pair, sorted by (|P|, lexicographic
// coordinates).  Every returned c satisfies
// ||grad^T P(c)|| <= grad_tol * d * ||P||.  Warns on stderr when fewer
// than 2 are found.
std::vector<SpherePoint> critical_points(const HomogeneousPoly& p,
                                         const SearchConfig& cfg = SearchConfig());

// min |P(c)| over the critical points found; an upper bound for
// dist(P, Delta).  Throws SearchError when no critical point was found.
double critical_value_bound(const HomogeneousPoly& p,
                            const SearchConfig& cfg = SearchConfig());

} // namespace discdist

#endif // DISCDIST_DISTANCE_HPP
