/*
 * corpus.hpp - reference polynomial families and perturbation helpers
 * shared by the command-line table and the test suites.
 */
#ifndef DISCDIST_CORPUS_HPP
#define DISCDIST_CORPUS_HPP

#include <cstdint>
#include <vector>

#include "discdist/poly.hpp"

namespace discdist {

// The nested-ovals family P_d(x,y,z) = sum_k (-1)^k C(d,2k)
// (y^2+z^2)^k x^(d-2k), which satisfies P_d(cos phi, sin phi * v) =
// cos(d phi) for every unit v; its zero set is a stack of (d+1)/2
// circles.  Three variables, degree d >= 1.
HomogeneousPoly nested_chebyshev(int d);

// A unit-Bombieri-norm polynomial orthogonal to every member of
// `against` (all of shape (n, d)), drawn deterministically from seed.
// Throws DegenerateError when the orthogonal complement is hit with a
// negligible component (retry with another seed).
HomogeneousPoly random_orthogonal_direction(
    const std::vector<HomogeneousPoly>& against, int n, int d,
    std::uint64_t seed);

} // namespace discdist

#endif // DISCDIST_CORPUS_HPP
