/*
 * test_bounds.cpp - cap and separation radii, the critical band
 * inequality, bandwidth bounds, and gradient-flow traces.
 */
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "discdist/bombieri.hpp"
#include "discdist/bounds.hpp"
#include "discdist/corpus.hpp"
#include "discdist/distance.hpp"
#include "discdist/errors.hpp"
#include "discdist/rng.hpp"
#include "discdist/univariate.hpp"

using namespace discdist;

namespace {

SearchConfig small_search(int restarts = 24, std::uint64_t seed = 9001) {
    SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("cap radius follows its closed form and scales") {
    const HomogeneousPoly p = nested_chebyshev(2);
    const double dist = 1.0;
    const double expected =
        0.5 * std::sqrt(2.0 * dist / bombieri_norm(p));
    CHECK(cap_radius(p, dist) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(separation_bound(p, dist) ==
          doctest::Approx(2.0 * expected).epsilon(1e-12));
    const BoundsReport rep = bounds_report(p, dist);
    CHECK(rep.cap_radius == doctest::Approx(expected));
    CHECK(rep.separation == doctest::Approx(2.0 * expected));
    CHECK(rep.band_half_width == dist);
    CHECK_THROWS_AS(cap_radius(p, 0.0), DegenerateError);
    CHECK_THROWS_AS(cap_radius(p, -1.0), DegenerateError);
}

TEST_CASE("caps around critical points keep one sign") {
    // The cone quadric over sqrt(3): the pole (1,0,0) is critical and
    // the guaranteed cap, and even a slightly smaller one, is clean.
    HomogeneousPoly p = nested_chebyshev(2);
    p *= 1.0 / bombieri_norm(p);
    const double dist = distance_bombieri(p, small_search()).dist;
    Eigen::VectorXd pole(3);
    pole << 1.0, 0.0, 0.0;
    const SpherePoint x(pole);
    CHECK(empirical_cap_check(p, x, dist, 4000, 1.0, 1234));
    CHECK(empirical_cap_check(p, x, dist, 4000, 0.99, 1234));
    // A non-critical point is rejected outright.
    Eigen::VectorXd slanted(3);
    slanted << 0.8, 0.6, 0.0;
    CHECK_THROWS_AS(
        empirical_cap_check(p, SpherePoint(slanted), dist, 100, 1.0, 1),
        ClassifyError);
}

TEST_CASE("an oversized cap crosses the zero set") {
    // The cap guarantee is sharp for the normalized cone quadric: the
    // zero cone sits at polar angle pi/4, so a radius beyond it must
    // pick up both signs.
    HomogeneousPoly p = nested_chebyshev(2);
    p *= 1.0 / bombieri_norm(p);
    const double dist = distance_bombieri(p, small_search()).dist;
    Eigen::VectorXd pole(3);
    pole << 1.0, 0.0, 0.0;
    const double alpha = cap_radius(p, dist);
    const double scale = (std::numbers::pi / 4.0) / alpha * 1.1;
    CHECK_FALSE(
        empirical_cap_check(p, SpherePoint(pole), dist, 4000, scale, 1234));
}

TEST_CASE("the band inequality holds across the band of the quadric") {
    HomogeneousPoly p = nested_chebyshev(2);
    p *= 1.0 / bombieri_norm(p);
    const double m = distance_bombieri(p, small_search()).dist;
    Rng rng(41);
    int in_band = 0;
    while (in_band < 2000) {
        const SpherePoint x = rng.sphere_point(3);
        if (std::abs(eval(p, x.coords())) >= m) continue;
        ++in_band;
        CHECK(band_inequality_margin(p, x, m) > -1e-9);
    }
}

TEST_CASE("band length bounds obey the stated comparisons") {
    const double m = 0.5;
    const int d = 4;
    CHECK(band_length_bound(0.0, m / 2.0, m, d) ==
          doctest::Approx(std::numbers::pi / 12.0).epsilon(1e-12));
    CHECK(band_length_bound(0.2, 0.2, m, d) == doctest::Approx(0.0));
    // Symmetry under sign reversal and monotonicity in the endpoints.
    CHECK(band_length_bound(-0.3, 0.4, m, d) ==
          doctest::Approx(band_length_bound(-0.4, 0.3, m, d)));
    CHECK(band_length_bound(-0.3, 0.4, m, d) <
          band_length_bound(-0.3, 0.45, m, d));
    // The all-band bound pi/sqrt(d) and the half-band pi/(2 sqrt(d)).
    CHECK(band_length_bound(-m * (1 - 1e-9), m * (1 - 1e-9), m, d) <=
          std::numbers::pi / std::sqrt(d) + 1e-6);
    CHECK(band_length_bound(0.0, m * (1 - 1e-9), m, d) <=
          std::numbers::pi / (2.0 * std::sqrt(d)) + 1e-6);
    CHECK_THROWS_AS(band_length_bound(-0.6, 0.0, m, d), DegenerateError);
    CHECK_THROWS_AS(band_length_bound(0.0, 0.5, 0.5, d), DegenerateError);
}

TEST_CASE("gradient traces cross the quadric band within the bound") {
    HomogeneousPoly p = nested_chebyshev(2);
    p *= 1.0 / bombieri_norm(p);
    const double m = distance_bombieri(p, small_search()).dist;
    Eigen::VectorXd start(3);
    start << std::sqrt(0.5), std::sqrt(0.5), 0.0;
    const TraceResult tr = trace_gradient_curve(p, SpherePoint(start), m);
    CHECK_FALSE(tr.hit_critical);
    CHECK(tr.a < 0.0);
    CHECK(tr.b > 0.0);
    CHECK(std::abs(tr.a) < m);
    CHECK(std::abs(tr.b) < m);
    CHECK(tr.arc_length <=
          1.01 * band_length_bound(tr.a, tr.b, m, p.d()));
    // Starting outside the band is rejected.
    Eigen::VectorXd pole(3);
    pole << 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(trace_gradient_curve(p, SpherePoint(pole), m),
                    DegenerateError);
}

TEST_CASE("trace lengths are invariant under rotation") {
    HomogeneousPoly p = nested_chebyshev(2);
    p *= 1.0 / bombieri_norm(p);
    const double m = distance_bombieri(p, small_search()).dist;
    Eigen::VectorXd start(3);
    start << std::sqrt(0.5), std::sqrt(0.5), 0.0;
    const TraceResult base = trace_gradient_curve(p, SpherePoint(start), m);

    Rng rng(43);
    const OrthogonalMap h = rng.orthogonal(3);
    const HomogeneousPoly q = compose_orthogonal(p, h);
    // q(x) = p(h x), so the corresponding start is h^{-1} start.
    const SpherePoint rotated(h.inverse().matrix() * start);
    const TraceResult turned = trace_gradient_curve(q, rotated, m);
    CHECK(turned.arc_length ==
          doctest::Approx(base.arc_length).epsilon(1e-6));
}

TEST_CASE("oscillator band crossings stay under the bandwidth bound") {
    for (int d = 2; d <= 6; ++d) {
        HomogeneousPoly c = make_C(d);
        c *= 1.0 / bombieri_norm(c);
        const double m = distance_bombieri(c, small_search()).dist;
        // Start at a zero of cos(d theta).
        const double theta0 = std::numbers::pi / (2.0 * d);
        Eigen::VectorXd start(2);
        start << std::cos(theta0), std::sin(theta0);
        const TraceResult tr = trace_gradient_curve(c, SpherePoint(start), m);
        CHECK(tr.a < 0.0);
        CHECK(tr.b > 0.0);
        CHECK(tr.arc_length <= 1.01 * band_length_bound(tr.a, tr.b, m, d));
        CHECK(tr.arc_length <=
              1.01 * std::numbers::pi / std::sqrt(double(d)));
    }
}
