/*
 * test_distance.cpp - the pointwise gauge delta, the multi-start
 * distance search, critical points, and the general distance formula.
 */
#include <doctest.h>

#include <cmath>

#include "discdist/basis_matrices.hpp"
#include "discdist/bombieri.hpp"
#include "discdist/corpus.hpp"
#include "discdist/distance.hpp"
#include "discdist/errors.hpp"
#include "discdist/rng.hpp"
#include "discdist/univariate.hpp"

using namespace discdist;

namespace {

SearchConfig small_search(int restarts = 24, std::uint64_t seed = 5150) {
    SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("delta matches its definition at random sphere points") {
    Rng rng(211);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const int d = 2 + trial % 5;
        const HomogeneousPoly p = rng.poly(n, d);
        const SpherePoint x = rng.sphere_point(n);
        const double v = eval(p, x.coords());
        const double expected =
            v * v + tangential_gradient(p, x).squaredNorm() / d;
        CHECK(delta(p, x) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("the cone quadric has distance 1 and a continuum of minimizers") {
    // x^2 - y^2 - z^2 has squared norm 3; the minimum of sqrt(delta) is
    // 1, attained on the circle x = 0 and at the poles x = +-1.
    const HomogeneousPoly p = nested_chebyshev(2);
    const DistanceReport rep = distance_bombieri(p, small_search(48));
    CHECK(rep.dist == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.possibly_continuum);
    CHECK(rep.minimizers.size() >= 2);
    REQUIRE(rep.minimizers.size() == rep.delta_at_minimizers.size());
    int on_equator = 0;
    for (std::size_t i = 0; i < rep.minimizers.size(); ++i) {
        CHECK(delta(p, rep.minimizers[i]) ==
              doctest::Approx(rep.delta_at_minimizers[i]).epsilon(1e-12));
        // Every minimizer of this quadric is a pole or an equator point.
        const double x0 = std::abs(rep.minimizers[i][0]);
        CHECK((x0 < 1e-7 || x0 > 1.0 - 1e-12));
        if (x0 < 1e-7) ++on_equator;
    }
    CHECK(on_equator >= 2);
    // Reported minimizers are sorted by delta then lexicographically.
    for (std::size_t i = 0; i + 1 < rep.minimizers.size(); ++i) {
        CHECK(rep.delta_at_minimizers[i] <=
              rep.delta_at_minimizers[i + 1] + 1e-15);
    }
}

TEST_CASE("univariate closed forms are reproduced by the search") {
    for (auto [r, d] : {std::pair{1, 5}, {2, 6}, {3, 5}, {2, 4}}) {
        const HomogeneousPoly t = make_T(r, d);
        const DistanceReport rep = distance_bombieri(t, small_search());
        CHECK(rep.dist ==
              doctest::Approx(closed_form_distance(r, d)).epsilon(1e-9));
    }
}

TEST_CASE("distance scales linearly because the discriminant is a cone") {
    const HomogeneousPoly t = make_T(2, 4);
    const DistanceReport one = distance_bombieri(t, small_search());
    const DistanceReport three = distance_bombieri(3.0 * t, small_search());
    CHECK(three.dist == doctest::Approx(3.0 * one.dist).epsilon(1e-9));
}

TEST_CASE("zero polynomial and bad configs are rejected") {
    CHECK_THROWS_AS(distance_bombieri(HomogeneousPoly(2, 3)),
                    DegenerateError);
    SearchConfig cfg;
    cfg.restarts = 0;
    CHECK_THROWS_AS(cfg.validate(), ShapeError);
    cfg = SearchConfig();
    cfg.grad_tol = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ShapeError);
    cfg = SearchConfig();
    cfg.cluster_angle = -0.5;
    CHECK_THROWS_AS(cfg.validate(), ShapeError);
}

TEST_CASE("critical points cover the known spots of the cone quadric") {
    const HomogeneousPoly p = nested_chebyshev(2);
    const std::vector<SpherePoint> crits = critical_points(p, small_search());
    REQUIRE(!crits.empty());
    bool found_pole = false;
    for (const SpherePoint& c : crits) {
        CHECK(tangential_gradient(p, c).norm() < 1e-8);
        if (std::abs(std::abs(c[0]) - 1.0) < 1e-9) found_pole = true;
    }
    CHECK(found_pole);
    // Every critical value of this quadric is +-1, so the bound is 1.
    CHECK(critical_value_bound(p, small_search()) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("the critical value bound dominates the distance") {
    Rng rng(223);
    for (int trial = 0; trial < 3; ++trial) {
        const HomogeneousPoly p = rng.poly(3, 4);
        const double dist = distance_bombieri(p, small_search()).dist;
        const double bound = critical_value_bound(p, small_search());
        CHECK(dist <= bound * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("the general distance formula agrees with sqrt(delta)") {
    Rng rng(227);
    for (int trial = 0; trial < 4; ++trial) {
        const int n = 2 + trial % 3;
        const int d = 2 + trial;
        const HomogeneousPoly p = rng.poly(n, d);
        for (int k = 0; k < 25; ++k) {
            const SpherePoint x = rng.sphere_point(n);
            const double via_delta = std::sqrt(delta(p, x));
            const double general = distance_general_at(p, x.coords());
            CHECK(general ==
                  doctest::Approx(via_delta).epsilon(1e-8));
        }
    }
}

TEST_CASE("basis matrices satisfy the euler relation") {
    Rng rng(229);
    const Eigen::VectorXd x = rng.gaussian_vector(3);
    const BasisMatrices bm = basis_matrices(3, 4, x);
    CHECK((4.0 * bm.C - bm.B.transpose() * x).norm() < 1e-10);
    CHECK((bm.A * bm.M - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-8);
    CHECK_THROWS_AS(basis_matrices(3, 4, Eigen::VectorXd::Zero(3)),
                    DegenerateError);
}

TEST_CASE("same seed reproduces the identical report") {
    const HomogeneousPoly t = make_T(3, 5);
    const DistanceReport a = distance_bombieri(t, small_search(24, 99));
    const DistanceReport b = distance_bombieri(t, small_search(24, 99));
    CHECK(a.dist == b.dist);
    REQUIRE(a.minimizers.size() == b.minimizers.size());
    for (std::size_t i = 0; i < a.minimizers.size(); ++i) {
        CHECK(a.minimizers[i].coords() == b.minimizers[i].coords());
    }
}

TEST_CASE("distance is invariant under rotation of the polynomial") {
    Rng rng(233);
    const HomogeneousPoly p = rng.poly(3, 3);
    const OrthogonalMap h = rng.orthogonal(3);
    const double d0 = distance_bombieri(p, small_search(32)).dist;
    const double d1 =
        distance_bombieri(compose_orthogonal(p, h), small_search(32)).dist;
    CHECK(d1 == doctest::Approx(d0).epsilon(1e-8));
}
