/*
 * classify.hpp - classification of distance-realizing points as
 * quasi-double or quasi-cusp, the contact radius and contact polynomial,
 * canonical local coordinates, and validators for the constraints that
 * hold at minimizers.
 *
 * A point c realizing dist(P, Delta) is quasi-double when grad^T P(c)
 * vanishes (the nearest singular polynomial acquires an ordinary double
 * point at c) and quasi-cusp otherwise, in which case the contact is of
 * cusp type.  Every such c satisfies the necessary condition
 * H^T P(c) grad^T P(c) = 0.
 */
#ifndef DISCDIST_CLASSIFY_HPP
#define DISCDIST_CLASSIFY_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "discdist/distance.hpp"
#include "discdist/poly.hpp"
#include "discdist/sphere.hpp"

namespace discdist {

enum class QsKind { QuasiDouble, QuasiCusp };

struct QuasiSingularPoint {
    SpherePoint c;
    QsKind kind;
    // P(c).
    double value;
    // grad^T P(c); numerically zero exactly for the quasi-double kind.
    Eigen::VectorXd tangential_grad;
    // delta_P(c) = value^2 + ||tangential_grad||^2 / d.
    double delta;
    // Spectrum of the tangential Hessian restricted to the tangent space
    // (n-1 values, ascending).
    std::vector<double> ht_eigenvalues;
};

struct QuasiSingularSet {
    std::vector<QuasiSingularPoint> points;
    bool possibly_continuum = false;
    DistanceReport report;
};

// Adapted coordinates at a quasi-singular point c: the rotation sends
// e_n to c, and e_1 to the direction of grad^T P(c) for the quasi-cusp
// kind (to the dominant tangent Hessian eigenvector, for determinism,
// in the quasi-double case where the gradient leaves it free).
struct CanonicalFrame {
    OrthogonalMap rotation;
    // Coefficient of x_n^d of the rotated polynomial, equal to P(c).
    double alpha;
    // Coefficient of x_1 x_n^{d-1}, equal to ||grad^T P(c)||.
    double beta;
    // Quasi-cusp only: number of zero eigenvalues of the tangential
    // Hessian on the tangent space, counting the gradient direction.
    int kernel_count = 0;
    // Second-order diagonal coefficients: 2 * coeff(x_i^2 x_n^{d-2}) per
    // tangent direction (all n-1 of them for the quasi-double kind, the
    // directions after x_1 for the quasi-cusp kind).
    std::vector<double> lambdas;
    // Quasi-cusp only: mus[0] = 6 * coeff(x_1^3 x_n^{d-3}) and
    // mus[i-1] = 2 * coeff(x_1 x_i^2 x_n^{d-3}) for i = 2..n-1.
    std::vector<double> mus;
};

// One validated constraint; margin is the amount by which the inequality
// holds (negative means violated), in the constraint's own units.
struct CheckItem {
    std::string label;
    bool applicable;
    bool pass;
    double margin;
};

struct ValidationRecord {
    std::vector<CheckItem> checks;
    bool all_pass = true;
};

// Classifies c.  Throws ClassifyError when c fails the necessary
// condition H^T P(c) grad^T P(c) = 0 (scale-aware threshold), so points
// that cannot be quasi-singular are rejected rather than mislabeled.
// classify_tol separates the kinds on ||grad^T P(c)|| / (d ||P||).
QuasiSingularPoint classify(const HomogeneousPoly& p, const SpherePoint& c,
                            double classify_tol = 1e-8);

// Runs the distance search and classifies every reported minimizer.
// Throws DegenerateError when dist(P, Delta) is zero within tolerance
// (classification on the discriminant is meaningless).
QuasiSingularSet find_quasi_singular(const HomogeneousPoly& p,
                                     const SearchConfig& cfg = SearchConfig(),
                                     double classify_tol = 1e-8);

// R(x) = -P(c) <x|c>^d - <x|grad^T P(c)> <x|c>^{d-1}; the correction
// whose norm is sqrt(delta_P(c)), so ||R|| = dist(P, Delta) when c
// realizes the distance.
HomogeneousPoly contact_radius(const HomogeneousPoly& p, const SpherePoint& c);

// Q = P + R; Q(c) = 0 and grad Q(c) = 0 hold exactly by construction,
// so Q is singular at c (and at -c).
HomogeneousPoly contact_polynomial(const HomogeneousPoly& p,
                                   const SpherePoint& c);

// Builds the adapted coordinates and reads alpha, beta, the lambdas and
// (quasi-cusp) the mus off the rotated coefficients.  Throws
// ClassifyError when the extraction is inconsistent with the
// classification.
CanonicalFrame canonical_frame(const HomogeneousPoly& p, const SpherePoint& c,
                               double classify_tol = 1e-8);

// Checks, for each tangent eigenvalue lambda with lambda * P(c) > 0,
// that |lambda| >= d |P(c)|; this holds whenever c realizes the
// distance, so a violation flags c as not distance-realizing.
ValidationRecord validate_quasi_double(const HomogeneousPoly& p,
                                       const SpherePoint& c,
                                       double classify_tol = 1e-8);

// Checks the quasi-cusp constraints: beta and the kernel mus are nonzero
// of one sign, the per-direction inequality
// (1-d) beta^2 - d alpha lambda_i + lambda_i^2 + beta mu_i >= 0, the
// one-dimensional step inequality 2 (1-d) beta^2 + beta mu_1 >= 0, and
// nonzero lambda_i off the kernel.  Quasi-cusp points exist only for
// d > 2, so d = 2 is an error.
ValidationRecord validate_quasi_cusp(const HomogeneousPoly& p,
                                     const SpherePoint& c,
                                     double classify_tol = 1e-8);

} // namespace discdist

#endif // DISCDIST_CLASSIFY_HPP
