#include "discdist/corpus.hpp"

#include <string>

#include "discdist/bombieri.hpp"
#include "discdist/errors.hpp"
#include "discdist/multi_index.hpp"
#include "discdist/rng.hpp"

namespace discdist {

namespace {

double binomial(int n, int k) {
    const unsigned __int128 v =
        factorial128(n) / (factorial128(k) * factorial128(n - k));
    return static_cast<double>(v);
}

} // namespace

HomogeneousPoly nested_chebyshev(int d) {
    if (d < 1) throw ShapeError("nested_chebyshev: degree must be >= 1");
    HomogeneousPoly q(3, 2);
    q.set_coeff(MultiIndex({0, 2, 0}), 1.0);
    q.set_coeff(MultiIndex({0, 0, 2}), 1.0);

    HomogeneousPoly out(3, d);
    HomogeneousPoly qpow = q;
    for (int k = 0; 2 * k <= d; ++k) {
        const double c = (k % 2 == 0 ? 1.0 : -1.0) * binomial(d, 2 * k);
        if (k == 0) {
            out += HomogeneousPoly::monomial(MultiIndex({d, 0, 0}), c);
        } else if (2 * k == d) {
            out += c * qpow;
        } else {
            out += HomogeneousPoly::monomial(MultiIndex({d - 2 * k, 0, 0}), c) *
                   qpow;
        }
        if (k >= 1 && 2 * (k + 1) <= d) qpow = qpow * q;
    }
    return out;
}

HomogeneousPoly random_orthogonal_direction(
    const std::vector<HomogeneousPoly>& against, int n, int d,
    std::uint64_t seed) {
    for (const HomogeneousPoly& a : against) {
        if (a.n() != n || a.d() != d) {
            throw ShapeError(
                "random_orthogonal_direction: shape mismatch in against");
        }
    }
    // Orthonormalize the span first so the projection below is exact
    // even for a non-orthogonal against set.
    std::vector<HomogeneousPoly> basis;
    for (const HomogeneousPoly& a : against) {
        HomogeneousPoly b = a;
        for (const HomogeneousPoly& e : basis) b -= bombieri_dot(b, e) * e;
        const double bn = bombieri_norm(b);
        if (bn > 1e-12) basis.push_back(b * (1.0 / bn));
    }

    Rng rng(seed);
    HomogeneousPoly u = rng.poly(n, d);
    for (int sweep = 0; sweep < 2; ++sweep) {
        for (const HomogeneousPoly& e : basis) {
            u -= bombieri_dot(u, e) * e;
        }
    }
    const double norm = bombieri_norm(u);
    if (!(norm > 1e-12)) {
        throw DegenerateError(
            "random_orthogonal_direction: the draw left a negligible "
            "orthogonal component; use another seed");
    }
    return u * (1.0 / norm);
}

} // namespace discdist
