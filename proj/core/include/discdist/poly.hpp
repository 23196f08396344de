/*
 * poly.hpp - homogeneous polynomials with dense monomial coefficients,
 * their arithmetic, and exact differentiation/evaluation.
 *
 * A HomogeneousPoly stores the monomial coefficients c_alpha of
 * P = sum c_alpha x^alpha as a dense vector over the shared MonomialBasis
 * of its (n, d).  A dense zero coefficient and an absent monomial are the
 * same thing, which makes equality plain componentwise comparison.
 */
#ifndef DISCDIST_POLY_HPP
#define DISCDIST_POLY_HPP

#include <Eigen/Core>

#include "discdist/multi_index.hpp"
#include "discdist/sphere.hpp"

namespace discdist {

class HomogeneousPoly {
public:
    // The zero polynomial of degree d in n variables.
    HomogeneousPoly(int n, int d);

    // c * x^alpha. The length of alpha fixes n.
    static HomogeneousPoly monomial(const MultiIndex& alpha, double c);

    int n() const { return basis_->n(); }
    int d() const { return basis_->d(); }
    const MonomialBasis& basis() const { return *basis_; }

    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    Eigen::VectorXd& coeffs() { return coeffs_; }

    double coeff(const MultiIndex& alpha) const;
    void set_coeff(const MultiIndex& alpha, double c);

    bool is_zero(double tol = 0.0) const;

    HomogeneousPoly& operator+=(const HomogeneousPoly& q);
    HomogeneousPoly& operator-=(const HomogeneousPoly& q);
    HomogeneousPoly& operator*=(double t);
    friend HomogeneousPoly operator+(HomogeneousPoly p, const HomogeneousPoly& q) { return p += q; }
    friend HomogeneousPoly operator-(HomogeneousPoly p, const HomogeneousPoly& q) { return p -= q; }
    friend HomogeneousPoly operator*(HomogeneousPoly p, double t) { return p *= t; }
    friend HomogeneousPoly operator*(double t, HomogeneousPoly p) { return p *= t; }
    friend HomogeneousPoly operator-(HomogeneousPoly p) { return p *= -1.0; }

    bool operator==(const HomogeneousPoly& q) const;

private:
    const MonomialBasis* basis_;
    Eigen::VectorXd coeffs_;
};

// Product of two homogeneous polynomials (degrees add).
HomogeneousPoly operator*(const HomogeneousPoly& p, const HomogeneousPoly& q);

// The partial derivative dP/dx_i, of degree d - 1 (requires d >= 2, so the
// result stays a valid homogeneous polynomial of positive degree).
HomogeneousPoly differentiate(const HomogeneousPoly& p, int i);

// Directional derivative <u, grad P>, of degree d - 1 (requires d >= 2).
HomogeneousPoly directional_derivative(const HomogeneousPoly& p, const Eigen::VectorXd& u);

// P(x).  Homogeneity gives eval(P, t x) = t^d eval(P, x).
double eval(const HomogeneousPoly& p, const Eigen::VectorXd& x);

// grad P(x), the exact gradient (not a finite difference).
Eigen::VectorXd gradient(const HomogeneousPoly& p, const Eigen::VectorXd& x);

// The symmetric Hessian matrix of P at x; requires d >= 2.
Eigen::MatrixXd hessian(const HomogeneousPoly& p, const Eigen::VectorXd& x);

// Tangential part of the gradient at a sphere point:
// grad^T P(x) = grad P(x) - d P(x) x.  Orthogonal to x.
Eigen::VectorXd tangential_gradient(const HomogeneousPoly& p, const SpherePoint& x);

// Tangential Hessian H^T = Pi Hess(P) Pi with Pi = I - x x^T; its kernel
// contains x and it is the second derivative seen by the sphere.
Eigen::MatrixXd tangential_hessian(const HomogeneousPoly& p, const SpherePoint& x);

} // namespace discdist

#endif // DISCDIST_POLY_HPP
