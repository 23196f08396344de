/*
 * sphere.hpp - points of the unit sphere, orthogonal maps, tangent frames.
 */
#ifndef DISCDIST_SPHERE_HPP
#define DISCDIST_SPHERE_HPP

#include <Eigen/Core>

#include "discdist/errors.hpp"

namespace discdist {

// A unit vector of R^n.  Construction renormalizes, so the invariant
// ||coords|| = 1 holds to machine precision; a (near) zero vector is
// rejected because it has no direction.
class SpherePoint {
public:
    explicit SpherePoint(Eigen::VectorXd coords);

    const Eigen::VectorXd& coords() const { return coords_; }
    int n() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[i]; }

    // The antipode -x.
    SpherePoint antipode() const;

private:
    Eigen::VectorXd coords_;
};

// An n x n matrix h with h^T h = I, validated entrywise at 1e-12 on
// construction.  Used for changes of coordinates that leave both the
// sphere and the Bombieri norm invariant.
class OrthogonalMap {
public:
    explicit OrthogonalMap(Eigen::MatrixXd m);

    const Eigen::MatrixXd& matrix() const { return m_; }
    int n() const { return static_cast<int>(m_.rows()); }

    // The inverse map, which is the transpose.
    OrthogonalMap inverse() const;

    static OrthogonalMap identity(int n);

private:
    Eigen::MatrixXd m_;
};

// Orthonormal basis of the tangent space x^perp as the columns of an
// n x (n-1) matrix, obtained from the Householder reflector that maps x
// to a signed coordinate axis.  Deterministic in x.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& x);

// True when x is lexicographically not smaller than -x; used to pick one
// representative of each antipodal pair {x, -x}.
bool is_antipodal_representative(const Eigen::VectorXd& x);

// The lexicographically larger of x and -x.
Eigen::VectorXd antipodal_representative(const Eigen::VectorXd& x);

// Angle between two unit vectors, in [0, pi].
double angle_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

} // namespace discdist

#endif // DISCDIST_SPHERE_HPP
