/*
 * bombieri.hpp - the Bombieri inner product and the operations tied to it:
 * powers and products of linear forms, the permanent formula, orthogonal
 * composition, and the reproducing (Veronese) identity.
 *
 * The inner product is <x^alpha, x^beta> = 0 for alpha != beta and
 * ||x^alpha||^2 = alpha!/d!.  Its two structural properties carry the whole
 * library: invariance under orthogonal changes of variables, and
 * <P, <.,u>^d> = P(u).
 */
#ifndef DISCDIST_BOMBIERI_HPP
#define DISCDIST_BOMBIERI_HPP

#include <string>
#include <vector>

#include "discdist/poly.hpp"

namespace discdist {

// <P, Q> = sum_alpha c_alpha(P) c_alpha(Q) alpha!/d!.
double bombieri_dot(const HomogeneousPoly& p, const HomogeneousPoly& q);

// sqrt(<P, P>).
double bombieri_norm(const HomogeneousPoly& p);

// ||P||^2 as an exact reduced fraction, for polynomials with integer
// coefficients (each coefficient must be an exact integer in double).
// Throws DegenerateError for non-integer coefficients and ShapeError when
// the exact accumulation would overflow 128-bit intermediates.
struct ExactRational {
    long long num = 0;
    long long den = 1;
    std::string str() const;
};
ExactRational bombieri_norm_sq_exact(const HomogeneousPoly& p);

// <x, u>^d expanded to monomial coefficients (multinomial theorem).
HomogeneousPoly pow_linear_form(const Eigen::VectorXd& u, int d);

// prod_i <x, u_i>, one factor per vector; degree = number of factors.
HomogeneousPoly prod_linear_forms(const std::vector<Eigen::VectorXd>& us);

// (1/d!) sum over permutations sigma of prod_i <u_i, v_sigma(i)>.
// Factorial cost; intended as an independent oracle for d <= 8.
double permanent_dot(const std::vector<Eigen::VectorXd>& us, const std::vector<Eigen::VectorXd>& vs);

// Coefficients of P o h, i.e. x -> P(h x).  Preserves the Bombieri norm.
HomogeneousPoly compose_orthogonal(const HomogeneousPoly& p, const OrthogonalMap& h);

// <P, <.,u>^d>, which reproduces P(u).
double veronese_dot(const HomogeneousPoly& p, const Eigen::VectorXd& u);

} // namespace discdist

#endif // DISCDIST_BOMBIERI_HPP
