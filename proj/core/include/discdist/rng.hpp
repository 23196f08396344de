/*
 * rng.hpp - deterministic random numbers for searches and property tests.
 *
 * The generator is splitmix64 and the Gaussian is a Box-Muller transform,
 * so a seeded run produces the same stream on every platform and standard
 * library.  Parallel work derives one independent stream per task from
 * (seed, stream index) instead of sharing a generator.
 */
#ifndef DISCDIST_RNG_HPP
#define DISCDIST_RNG_HPP

#include <cstdint>

#include <Eigen/Core>

#include "discdist/poly.hpp"
#include "discdist/sphere.hpp"

namespace discdist {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double uniform();

    // Uniform in [a, b).
    double uniform(double a, double b);

    // Standard normal deviate.
    double gaussian();

    Eigen::VectorXd gaussian_vector(int n);

    // Uniform point of S^{n-1} (normalized Gaussian vector).
    SpherePoint sphere_point(int n);

    // Random polynomial whose coordinates in the Bombieri-orthonormal
    // basis are independent standard normals.
    HomogeneousPoly poly(int n, int d);

    // Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
    // sign of the R diagonal fixed.
    OrthogonalMap orthogonal(int n);

    // Stateless mix of a seed and a stream index into a fresh seed.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace discdist

#endif // DISCDIST_RNG_HPP
