#include "discdist/multi_index.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace discdist {

int MultiIndex::degree() const {
    int s = 0;
    for (int e : exponents) s += e;
    return s;
}

unsigned __int128 factorial128(int k) {
    if (k < 0 || k > 33) throw ShapeError("factorial128: argument out of range: " + std::to_string(k));
    unsigned __int128 f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<unsigned>(i);
    return f;
}

unsigned __int128 multi_factorial128(const MultiIndex& alpha) {
    unsigned __int128 f = 1;
    for (int e : alpha.exponents) f *= factorial128(e);
    return f;
}

std::size_t MonomialBasis::IndexHash::operator()(const std::vector<int>& e) const {
    // FNV-1a over the exponents; collisions only cost a compare.
    std::size_t h = 1469598103934665603ull;
    for (int v : e) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

// Descending lexicographic enumeration of {alpha : |alpha| = d, len = n}.
void enumerate(int n, int d, std::vector<MultiIndex>& out) {
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == n - 1) {
            cur[static_cast<std::size_t>(var)] = left;
            out.emplace_back(cur);
            return;
        }
        for (int e1 = left; e1 >= 0; --e1) {
            cur[static_cast<std::size_t>(var)] = e1;
            self(self, var + 1, left - e1);
        }
    };
    rec(rec, 0, d);
}

} // namespace

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
    enumerate(n, d, alphas_);
    const int N = size();
    weights_.resize(N);
    scale_.resize(N);
    const unsigned __int128 dfact = factorial128(d);
    for (int j = 0; j < N; ++j) {
        const unsigned __int128 afact = multi_factorial128(alphas_[static_cast<std::size_t>(j)]);
        // alpha!/d! as the one and only rounding step.
        const double w = static_cast<double>(afact) / static_cast<double>(dfact);
        weights_[j] = w;
        scale_[j] = 1.0 / std::sqrt(w);
        position_.emplace(alphas_[static_cast<std::size_t>(j)].exponents, j);
    }
}

const MonomialBasis& MonomialBasis::get(int n, int d) {
    if (n < 2) throw ShapeError("MonomialBasis: ambient dimension must be at least 2, got " + std::to_string(n));
    if (d < 1) throw ShapeError("MonomialBasis: degree must be at least 1, got " + std::to_string(d));
    if (d > kMaxDegree)
        throw ShapeError("MonomialBasis: degree " + std::to_string(d) + " exceeds the supported maximum " +
                         std::to_string(kMaxDegree));
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n, d}];
    if (!slot) slot.reset(new MonomialBasis(n, d));
    return *slot;
}

int MonomialBasis::index_of(const MultiIndex& alpha) const {
    auto it = position_.find(alpha.exponents);
    return it == position_.end() ? -1 : it->second;
}

} // namespace discdist
