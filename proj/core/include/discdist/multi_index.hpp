/*
 * multi_index.hpp - exponent vectors and the dense monomial basis table.
 *
 * A MultiIndex is the exponent vector alpha of a monomial x^alpha.  All
 * degree-d monomials in n variables are enumerated once per (n, d) in a
 * shared immutable MonomialBasis, which also carries the weights
 * alpha!/d! of the Bombieri inner product, computed exactly in 128-bit
 * integer arithmetic before the single conversion to double.
 */
#ifndef DISCDIST_MULTI_INDEX_HPP
#define DISCDIST_MULTI_INDEX_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "discdist/errors.hpp"

namespace discdist {

// Exponent vector of a monomial; length is the ambient dimension.
struct MultiIndex {
    std::vector<int> exponents;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}

    int size() const { return static_cast<int>(exponents.size()); }
    int operator[](int i) const { return exponents[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return exponents[static_cast<std::size_t>(i)]; }

    // |alpha| = sum of the exponents.
    int degree() const;

    bool operator==(const MultiIndex& other) const { return exponents == other.exponents; }
};

// Exact k! for k <= 33 (the largest factorial that fits in 128 bits is 33!).
unsigned __int128 factorial128(int k);

// Exact alpha! = prod_i alpha_i!.
unsigned __int128 multi_factorial128(const MultiIndex& alpha);

// Largest degree accepted anywhere; keeps alpha!/d! exactly representable.
inline constexpr int kMaxDegree = 30;

// Immutable table of all degree-d monomials in n variables, in descending
// lexicographic order (x_1^d first, x_n^d last).  One instance per (n, d)
// is built lazily and cached forever; lookups are therefore cheap enough
// to use in inner loops.
class MonomialBasis {
public:
    // Shared table for (n, d).  Throws ShapeError for n < 2, d < 1 or
    // d > kMaxDegree.
    static const MonomialBasis& get(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    int size() const { return static_cast<int>(alphas_.size()); }

    const std::vector<MultiIndex>& alphas() const { return alphas_; }
    const MultiIndex& alpha(int j) const { return alphas_[static_cast<std::size_t>(j)]; }

    // Position of alpha in the enumeration, or -1 when alpha does not
    // belong to the table (wrong degree or length).
    int index_of(const MultiIndex& alpha) const;

    // w_j = alpha_j!/d!, the squared Bombieri norm of x^alpha_j.
    const Eigen::VectorXd& weights() const { return weights_; }

    // s_j = sqrt(d!/alpha_j!), the normalizing factor of the orthonormal
    // basis element E_j = s_j x^alpha_j.
    const Eigen::VectorXd& orthonormal_scale() const { return scale_; }

private:
    MonomialBasis(int n, int d);

    struct IndexHash {
        std::size_t operator()(const std::vector<int>& e) const;
    };

    int n_;
    int d_;
    std::vector<MultiIndex> alphas_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd scale_;
    std::unordered_map<std::vector<int>, int, IndexHash> position_;
};

} // namespace discdist

#endif // DISCDIST_MULTI_INDEX_HPP
