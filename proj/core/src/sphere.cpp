#include "discdist/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace discdist {

SpherePoint::SpherePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw ShapeError("SpherePoint: need at least 2 coordinates");
    if (!(coords_.norm() > 1e-14)) throw DegenerateError("SpherePoint: zero vector has no direction");
    // Renormalize to a fixed point of x -> x/||x|| so that constructing
    // from already normalized coordinates is an exact no-op.  Serialized
    // points then restore bit-identically.
    for (int pass = 0; pass < 8; ++pass) {
        const double norm = coords_.norm();
        if (norm == 1.0) break;
        const Eigen::VectorXd next = coords_ / norm;
        if (next == coords_) break;
        coords_ = next;
    }
}

SpherePoint SpherePoint::antipode() const {
    return SpherePoint(-coords_);
}

OrthogonalMap::OrthogonalMap(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2)
        throw ShapeError("OrthogonalMap: matrix must be square of size >= 2");
    const Eigen::MatrixXd gram = m_.transpose() * m_;
    const int n = static_cast<int>(m_.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(gram(i, j) - target) > 1e-12)
                throw ShapeError("OrthogonalMap: matrix is not orthogonal (|h^T h - I| entry " +
                                 std::to_string(std::abs(gram(i, j) - target)) + ")");
        }
}

OrthogonalMap OrthogonalMap::inverse() const {
    return OrthogonalMap(m_.transpose());
}

OrthogonalMap OrthogonalMap::identity(int n) {
    return OrthogonalMap(Eigen::MatrixXd::Identity(n, n));
}

Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    const double norm = x.norm();
    if (!(norm > 0)) throw DegenerateError("tangent_basis: zero vector");
    // Householder reflector H with H e_1 = -s x / ||x||; its remaining
    // columns span x^perp.  The sign s avoids cancellation in u.
    Eigen::VectorXd u = x / norm;
    const double s = (u[0] >= 0.0) ? 1.0 : -1.0;
    u[0] += s;
    const double unorm2 = u.squaredNorm();
    Eigen::MatrixXd basis(n, n - 1);
    for (int j = 1; j < n; ++j) {
        Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
        col[j] = 1.0;
        col -= (2.0 * u[j] / unorm2) * u;
        basis.col(j - 1) = col;
    }
    return basis;
}

bool is_antipodal_representative(const Eigen::VectorXd& x) {
    for (int i = 0; i < x.size(); ++i) {
        if (x[i] > 0) return true;
        if (x[i] < 0) return false;
    }
    return true; // the zero vector equals its own antipode
}

Eigen::VectorXd antipodal_representative(const Eigen::VectorXd& x) {
    return is_antipodal_representative(x) ? x : Eigen::VectorXd(-x);
}

double angle_between(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double c = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
    return std::acos(c);
}

} // namespace discdist
