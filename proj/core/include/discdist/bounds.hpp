/*
 * bounds.hpp - spherical-cap, separation, and critical-band bounds.
 *
 * A positive distance to the discriminant forces metric room around
 * the zero set: each spherical critical point carries an open cap on
 * which P keeps its sign, distinct zero-set components stay two cap
 * radii apart, and integral curves of the tangential gradient cross
 * the critical band |P| < m in a bounded arc length.
 */
#ifndef DISCDIST_BOUNDS_HPP
#define DISCDIST_BOUNDS_HPP

#include <cstdint>
#include <string>

#include "discdist/distance.hpp"
#include "discdist/poly.hpp"
#include "discdist/sphere.hpp"

namespace discdist {

struct BoundsReport {
    double cap_radius = 0.0;       // radians
    double separation = 0.0;       // radians, always 2 * cap_radius
    double band_half_width = 0.0;  // m = dist(P, Delta)
    std::string notes;
};

// alpha = (1/d) sqrt(2 dist / ||P||); the open cap of this geodesic
// radius about any spherical critical point avoids the zero level.
// Throws DegenerateError when dist <= 0.
double cap_radius(const HomogeneousPoly& p, double dist);

// Minimal arc distance between distinct components of the zero set:
// twice the cap radius.
double separation_bound(const HomogeneousPoly& p, double dist);

BoundsReport bounds_report(const HomogeneousPoly& p, double dist);

// Draws `samples` area-uniform points in the open cap of radius
// radius_scale * cap_radius about the critical point x and reports
// whether P keeps one sign on all of them.  Scales above 1 probe past
// the guaranteed radius.  Throws ClassifyError when x is not critical.
bool empirical_cap_check(const HomogeneousPoly& p, const SpherePoint& x,
                         double dist, int samples = 10000,
                         double radius_scale = 1.0,
                         std::uint64_t seed = kDefaultSeed);

// ||grad^T P(x)||^2 - d (m^2 - P(x)^2); nonnegative on the critical
// band when the zero set is locally extremal.
double band_inequality_margin(const HomogeneousPoly& p, const SpherePoint& x,
                              double m);

// (1/sqrt(d)) |asin(b/m) - asin(a/m)|, the bandwidth bound on the arc
// length of a gradient curve between the levels a and b.  Requires
// |a| < m and |b| < m.
double band_length_bound(double a, double b, double m, int d);

struct TraceConfig {
    double h_min = 1e-6;
    double h_max = 1e-2;
    // Stagnation threshold on ||grad^T P|| relative to d * ||P||.
    double grad_floor_rel = 1e-7;
    int max_steps = 2000000;
};

struct TraceResult {
    double arc_length = 0.0;
    // P at the backward and forward endpoints; a <= b since the flow
    // follows increasing P forward.
    double a = 0.0;
    double b = 0.0;
    // True when either direction stalled at an interior critical point
    // instead of reaching |P| = m (1 - 1e-6); evidence against local
    // extremality, reported rather than asserted.
    bool hit_critical = false;
    int steps = 0;
};

// Integrates the normalized tangential-gradient flow through `start`
// in both directions until |P| reaches m (1 - 1e-6) or the flow
// stagnates; adaptive fourth-order Runge-Kutta steps on the sphere
// with renormalizing retraction.  Throws DegenerateError when start
// lies outside the open band |P| < m, SearchError when max_steps is
// exhausted.
TraceResult trace_gradient_curve(const HomogeneousPoly& p,
                                 const SpherePoint& start, double m,
                                 const TraceConfig& cfg = TraceConfig());

} // namespace discdist

#endif // DISCDIST_BOUNDS_HPP
