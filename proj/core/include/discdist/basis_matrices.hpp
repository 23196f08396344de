/*
 * basis_matrices.hpp - evaluation data of the orthonormal monomial basis
 * at a point, and the pointwise distance formula built on it.
 */
#ifndef DISCDIST_BASIS_MATRICES_HPP
#define DISCDIST_BASIS_MATRICES_HPP

#include <Eigen/Dense>

#include "discdist/poly.hpp"

namespace discdist {

// Evaluation data of the orthonormal monomial basis at a point x != 0.
//
// With E_1, ..., E_N the orthonormal basis of the degree-d coefficient
// space, the members are
//   C : N-vector,  C(j)    = E_j(x)
//   B : n x N,     B(i, j) = dE_j/dx_i (x)
//   A : n x n,     A = B B^t, symmetric positive definite for x != 0
//   M : n x n,     M = A^{-1}
// The Euler relation d C = B^t x ties C to B; it is a consequence of the
// construction and is exercised by the tests rather than stored.
struct BasisMatrices {
    Eigen::VectorXd C;
    Eigen::MatrixXd B;
    Eigen::MatrixXd A;
    Eigen::MatrixXd M;
};

// Builds the basis evaluation data at x.  Throws DegenerateError when x
// is numerically the origin, ConditioningError when A is too
// ill-conditioned to invert reliably.
BasisMatrices basis_matrices(int n, int d, const Eigen::VectorXd& x);

// Distance from P to the set of polynomials singular at x, computed as
// sqrt(grad^t M(x) grad) with grad the full gradient of P at x.  Valid
// for any x != 0, not only unit vectors.
double distance_general_at(const HomogeneousPoly& p, const Eigen::VectorXd& x);

} // namespace discdist

#endif // DISCDIST_BASIS_MATRICES_HPP
