/*
 * univariate.hpp - the n = 2 specialization: circle evaluation, the
 * T_{r,d} family, closed-form distances, the cosine power identities,
 * and the Gram/Vandermonde factorization of powers of linear forms.
 *
 * A binary polynomial restricts to the circle as the trigonometric
 * polynomial Tbreve(theta) = P(cos theta, sin theta); T_{r,d} is the
 * member with Tbreve = cos(r theta), C_d = T_{d,d} and S_d its sine
 * counterpart.
 */
#ifndef DISCDIST_UNIVARIATE_HPP
#define DISCDIST_UNIVARIATE_HPP

#include <vector>

#include <Eigen/Core>

#include "discdist/poly.hpp"

namespace discdist {

// P and its first two circle derivatives at u_theta = (cos t, sin t):
// value = P(u_theta), derivative = <grad^T P(u_theta) | u_theta_perp>,
// second_derivative = t(u_perp) Hess P u_perp - d * value.
struct TrigSample {
    double theta = 0.0;
    double value = 0.0;
    double derivative = 0.0;
    double second_derivative = 0.0;
};

// Throws ShapeError unless p has exactly two variables.
TrigSample trig_sample(const HomogeneousPoly& p, double theta);

// T_{r,d}(x,y) = (x^2+y^2)^((d-r)/2) sum_k (-1)^k C(r,2k) y^(2k) x^(r-2k),
// the degree-d polynomial restricting to cos(r theta).  Requires
// 1 <= r <= d with d - r even.
HomogeneousPoly make_T(int r, int d);

// C_d = T_{d,d} restricts to cos(d theta); S_d to sin(d theta).  The
// pair is Bombieri-orthogonal with equal squared norm 2^(d-1).
HomogeneousPoly make_C(int d);
HomogeneousPoly make_S(int d);

// dist(T_{r,d}, Delta) = min(1, r/sqrt(d)) for the raw family member;
// the normalized variant divides by ||T_{r,d}|| and applies to
// T_{r,d}/||T_{r,d}|| since the discriminant is a cone.
double closed_form_distance(int r, int d);
double closed_form_distance_normalized(int r, int d);

struct TrigIdentityErrors {
    double cos_error = 0.0;
    double sin_error = 0.0;
};

// Max grid errors of the two identities
//   cos(r t) = (2^(d-1)/(r C(d,(d-r)/2))) sum_{k<r} (-1)^k cos^d(t - k pi/r)
//   sin(r t) = same factor with nodes t - (2k+1) pi/(2r)
// over grid_size uniform angles plus both node sets.  The domain is
// d/3 < r <= d with d - r even; violations raise ShapeError.
TrigIdentityErrors trig_identity_errors(int r, int d, int grid_size);

// The larger of the two errors above.
double trig_identity_error(int r, int d, int grid_size);

// Gram matrix G_ij = cos^d(theta_i - theta_j) of the d-th powers of the
// forms <.|u_theta_i>, its Vandermonde-like factor V with
// V_ki = cos^k(theta_i) sin^(d-k)(theta_i), and the closed-form
// determinant det V = prod_{i<j} sin(theta_i - theta_j).  Requires
// exactly d+1 angles, pairwise distinct mod pi; the factorization
// G = tV D V with D_kk = C(d,k) is verified internally at 1e-10.
struct GramPowers {
    Eigen::MatrixXd G;
    Eigen::MatrixXd V;
    double det_v = 0.0;
};

GramPowers gram_powers(const std::vector<double>& thetas, int d);

} // namespace discdist

#endif // DISCDIST_UNIVARIATE_HPP
