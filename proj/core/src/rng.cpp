#include "discdist/rng.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace discdist {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t Rng::next_u64() {
    return splitmix64(state_);
}

double Rng::uniform() {
    // 53 random bits into [0, 1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) {
    return a + (b - a) * uniform();
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u is kept away from 0 so the log stays finite.
    double u = 0.0;
    do {
        u = uniform();
    } while (u <= 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double c = std::cos(2.0 * std::numbers::pi * v);
    const double s = std::sin(2.0 * std::numbers::pi * v);
    spare_ = r * s;
    have_spare_ = true;
    return r * c;
}

Eigen::VectorXd Rng::gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
}

SpherePoint Rng::sphere_point(int n) {
    while (true) {
        Eigen::VectorXd v = gaussian_vector(n);
        if (v.norm() > 1e-8) return SpherePoint(std::move(v));
    }
}

HomogeneousPoly Rng::poly(int n, int d) {
    HomogeneousPoly p(n, d);
    const auto& scale = p.basis().orthonormal_scale();
    for (int j = 0; j < p.basis().size(); ++j) p.coeffs()[j] = gaussian() * scale[j];
    return p;
}

OrthogonalMap Rng::orthogonal(int n) {
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fixing the sign of the R diagonal makes the distribution Haar.
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return OrthogonalMap(std::move(q));
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
    (void)splitmix64(s);
    return splitmix64(s);
}

} // namespace discdist
