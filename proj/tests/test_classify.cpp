/*
 * test_classify.cpp - classification of distance realizers, contact
 * radii and polynomials, canonical frames, and the validators.
 */
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "discdist/bombieri.hpp"
#include "discdist/classify.hpp"
#include "discdist/corpus.hpp"
#include "discdist/distance.hpp"
#include "discdist/errors.hpp"
#include "discdist/rng.hpp"
#include "discdist/univariate.hpp"

using namespace discdist;

namespace {

SearchConfig small_search(int restarts = 24, std::uint64_t seed = 6001) {
    SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("the cone quadric realizes its distance at double points") {
    const HomogeneousPoly p = nested_chebyshev(2);
    const QuasiSingularSet set = find_quasi_singular(p, small_search(48));
    CHECK(set.possibly_continuum);
    REQUIRE(!set.points.empty());
    for (const QuasiSingularPoint& q : set.points) {
        CHECK(q.kind == QsKind::QuasiDouble);
        // Equator points have value -1, the poles +1; both realize the
        // distance.
        CHECK(std::abs(q.value) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(q.delta == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(q.tangential_grad.norm() < 1e-7);
        CHECK(q.ht_eigenvalues.size() == 2);
    }
}

TEST_CASE("degree-2 polynomials never classify as cusp") {
    Rng rng(301);
    for (int trial = 0; trial < 3; ++trial) {
        const HomogeneousPoly p = rng.poly(3, 2);
        QuasiSingularSet set;
        try {
            set = find_quasi_singular(p, small_search());
        } catch (const DegenerateError&) {
            continue;
        }
        for (const QuasiSingularPoint& q : set.points) {
            CHECK(q.kind == QsKind::QuasiDouble);
        }
    }
}

TEST_CASE("the pinched binary quintic realizes its distance at a cusp") {
    const HomogeneousPoly t = make_T(1, 5);
    const QuasiSingularSet set = find_quasi_singular(t, small_search());
    REQUIRE(!set.points.empty());
    bool found_cusp = false;
    for (const QuasiSingularPoint& q : set.points) {
        if (q.kind != QsKind::QuasiCusp) continue;
        found_cusp = true;
        CHECK(std::abs(q.value) < 1e-8);
        CHECK(q.delta ==
              doctest::Approx(set.report.dist * set.report.dist)
                  .epsilon(1e-9));
        const ValidationRecord rec = validate_quasi_cusp(t, q.c);
        CHECK(rec.all_pass);
        const CanonicalFrame frame = canonical_frame(t, q.c);
        CHECK(frame.beta == doctest::Approx(1.0).epsilon(1e-8));
        REQUIRE(frame.mus.size() == 1);
        CHECK(frame.mus[0] == doctest::Approx(12.0).epsilon(1e-6));
        CHECK(frame.lambdas.empty());
    }
    CHECK(found_cusp);
}

TEST_CASE("classification rejects points that are not quasi-singular") {
    // At a generic sphere point the tangential Hessian does not
    // annihilate the tangential gradient.
    const HomogeneousPoly t = make_T(4, 4);
    Eigen::VectorXd v(2);
    v << std::cos(0.2), std::sin(0.2);
    CHECK_THROWS_AS(classify(t, SpherePoint(v)), ClassifyError);
    CHECK_THROWS_AS(classify(HomogeneousPoly(2, 3), SpherePoint(v)),
                    DegenerateError);
}

TEST_CASE("degenerate inputs cannot be classified") {
    // x^3 y^2 vanishes with its gradient along two sphere circles.
    HomogeneousPoly p(2, 5);
    p.set_coeff(MultiIndex({3, 2}), 1.0);
    CHECK_THROWS_AS(find_quasi_singular(p, small_search()),
                    DegenerateError);
}

TEST_CASE("contact radius norm equals the gauge and kills the contact") {
    Rng rng(307);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 2 + trial % 2;
        const int d = 3 + trial % 3;
        const HomogeneousPoly p = rng.poly(n, d);
        const SpherePoint c = rng.sphere_point(n);
        const HomogeneousPoly r = contact_radius(p, c);
        CHECK(bombieri_dot(r, r) ==
              doctest::Approx(delta(p, c)).epsilon(1e-10));
        const HomogeneousPoly q = contact_polynomial(p, c);
        const double scale = bombieri_norm(p);
        CHECK(std::abs(eval(q, c.coords())) < 1e-12 * scale);
        CHECK(gradient(q, c.coords()).norm() < 1e-11 * d * scale);
    }
}

TEST_CASE("contact polynomials at realizers are nearest singulars") {
    const HomogeneousPoly t = make_T(2, 4);
    const QuasiSingularSet set = find_quasi_singular(t, small_search());
    REQUIRE(!set.points.empty());
    const QuasiSingularPoint& q = set.points.front();
    const HomogeneousPoly contact = contact_polynomial(t, q.c);
    CHECK(bombieri_norm(contact - t) ==
          doctest::Approx(set.report.dist).epsilon(1e-9));
    const DistanceReport on_disc = distance_bombieri(contact, small_search());
    CHECK(on_disc.dist < 1e-7);
}

TEST_CASE("canonical frames rotate the point to the last axis") {
    const HomogeneousPoly p = nested_chebyshev(3);
    const QuasiSingularSet set = find_quasi_singular(p, small_search(48));
    REQUIRE(!set.points.empty());
    for (const QuasiSingularPoint& q : set.points) {
        const CanonicalFrame frame = canonical_frame(p, q.c);
        const Eigen::MatrixXd& rot = frame.rotation.matrix();
        CHECK((rot.col(p.n() - 1) - q.c.coords()).norm() < 1e-10);
        CHECK(frame.alpha == doctest::Approx(q.value).epsilon(1e-9));
        if (q.kind == QsKind::QuasiDouble) {
            CHECK(frame.beta == doctest::Approx(0.0).epsilon(1e-7));
            CHECK(frame.mus.empty());
            CHECK(static_cast<int>(frame.lambdas.size()) == p.n() - 1);
            const ValidationRecord rec = validate_quasi_double(p, q.c);
            CHECK(rec.all_pass);
        }
    }
}

TEST_CASE("frame lambdas are the tangential hessian spectrum") {
    // For a quasi-double point the frame diagonalizes the tangential
    // Hessian, so the lambdas enumerate its nonzero spectrum.
    const HomogeneousPoly p = nested_chebyshev(4);
    const QuasiSingularSet set = find_quasi_singular(p, small_search(48));
    REQUIRE(!set.points.empty());
    const QuasiSingularPoint& q = set.points.front();
    REQUIRE(q.kind == QsKind::QuasiDouble);
    const CanonicalFrame frame = canonical_frame(p, q.c);
    std::vector<double> sorted_lambdas = frame.lambdas;
    std::sort(sorted_lambdas.begin(), sorted_lambdas.end());
    std::vector<double> spectrum = q.ht_eigenvalues;
    std::sort(spectrum.begin(), spectrum.end());
    REQUIRE(sorted_lambdas.size() == spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        CHECK(sorted_lambdas[i] ==
              doctest::Approx(spectrum[i]).epsilon(1e-7));
    }
}

TEST_CASE("cusp validation demands degree above two") {
    const HomogeneousPoly p = nested_chebyshev(2);
    const QuasiSingularSet set = find_quasi_singular(p, small_search());
    REQUIRE(!set.points.empty());
    CHECK_THROWS_AS(validate_quasi_cusp(p, set.points.front().c),
                    ClassifyError);
}

TEST_CASE("validators reject the opposite kind") {
    const HomogeneousPoly t = make_T(1, 5);
    const QuasiSingularSet set = find_quasi_singular(t, small_search());
    REQUIRE(!set.points.empty());
    const QuasiSingularPoint& cusp = set.points.front();
    REQUIRE(cusp.kind == QsKind::QuasiCusp);
    CHECK_THROWS_AS(validate_quasi_double(t, cusp.c), ClassifyError);
}
