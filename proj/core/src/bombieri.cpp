#include "discdist/bombieri.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace discdist {

namespace {

void check_same_shape(const HomogeneousPoly& p, const HomogeneousPoly& q, const char* op) {
    if (p.n() != q.n() || p.d() != q.d())
        throw ShapeError(std::string(op) + ": operands live in different spaces");
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string int128_str(__int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

} // namespace

double bombieri_dot(const HomogeneousPoly& p, const HomogeneousPoly& q) {
    check_same_shape(p, q, "bombieri_dot");
    const Eigen::VectorXd& w = p.basis().weights();
    return (p.coeffs().cwiseProduct(q.coeffs())).dot(w);
}

double bombieri_norm(const HomogeneousPoly& p) {
    return std::sqrt(std::max(0.0, bombieri_dot(p, p)));
}

std::string ExactRational::str() const {
    std::string s = std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return s;
}

ExactRational bombieri_norm_sq_exact(const HomogeneousPoly& p) {
    // ||P||^2 = (sum_alpha c_alpha^2 alpha!) / d! with integer c_alpha.
    const auto& alphas = p.basis().alphas();
    const unsigned __int128 dfact = factorial128(p.d());
    unsigned __int128 num = 0;
    for (int j = 0; j < p.basis().size(); ++j) {
        const double c = p.coeffs()[j];
        if (c == 0.0) continue;
        const double r = std::nearbyint(c);
        if (r != c || std::abs(c) > 94906265.0) // sqrt(2^53): c^2 must stay exact
            throw DegenerateError("bombieri_norm_sq_exact: coefficient " + std::to_string(c) +
                                  " is not an exactly representable integer");
        const long long ci = static_cast<long long>(r);
        const unsigned __int128 c2 = static_cast<unsigned __int128>(ci < 0 ? -ci : ci) *
                                     static_cast<unsigned __int128>(ci < 0 ? -ci : ci);
        const unsigned __int128 afact = multi_factorial128(alphas[static_cast<std::size_t>(j)]);
        const unsigned __int128 term = c2 * afact;
        if (term / afact != c2 || num + term < num)
            throw ShapeError("bombieri_norm_sq_exact: 128-bit overflow in exact accumulation");
        num += term;
    }
    const __int128 g = gcd128(static_cast<__int128>(num), static_cast<__int128>(dfact));
    const __int128 rn = static_cast<__int128>(num) / g;
    const __int128 rd = static_cast<__int128>(dfact) / g;
    constexpr __int128 ll_max = std::numeric_limits<long long>::max();
    if (rn > ll_max || rd > ll_max)
        throw ShapeError("bombieri_norm_sq_exact: reduced fraction " + int128_str(rn) + "/" + int128_str(rd) +
                         " exceeds 64 bits");
    return ExactRational{static_cast<long long>(rn), static_cast<long long>(rd)};
}

HomogeneousPoly pow_linear_form(const Eigen::VectorXd& u, int d) {
    const int n = static_cast<int>(u.size());
    HomogeneousPoly p(n, d);
    const auto& alphas = p.basis().alphas();
    const unsigned __int128 dfact = factorial128(d);
    for (int j = 0; j < p.basis().size(); ++j) {
        const MultiIndex& a = alphas[static_cast<std::size_t>(j)];
        // Multinomial coefficient d!/alpha!, exactly, then one rounding.
        const double m = static_cast<double>(dfact / multi_factorial128(a));
        double c = m;
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < a[i]; ++e) c *= u[i];
        p.coeffs()[j] = c;
    }
    return p;
}

HomogeneousPoly prod_linear_forms(const std::vector<Eigen::VectorXd>& us) {
    if (us.empty()) throw ShapeError("prod_linear_forms: empty sequence of factors");
    const int n = static_cast<int>(us.front().size());
    for (const auto& u : us)
        if (static_cast<int>(u.size()) != n)
            throw ShapeError("prod_linear_forms: factors have inconsistent lengths");
    HomogeneousPoly acc = pow_linear_form(us.front(), 1);
    for (std::size_t k = 1; k < us.size(); ++k) acc = acc * pow_linear_form(us[k], 1);
    return acc;
}

double permanent_dot(const std::vector<Eigen::VectorXd>& us, const std::vector<Eigen::VectorXd>& vs) {
    const int d = static_cast<int>(us.size());
    if (d == 0 || vs.size() != us.size())
        throw ShapeError("permanent_dot: families must be non-empty and of equal length");
    if (d > 8) throw ShapeError("permanent_dot: oracle limited to d <= 8 (factorial cost)");
    const int n = static_cast<int>(us.front().size());
    // Precompute the d x d matrix of pairwise dot products.
    Eigen::MatrixXd dots(d, d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(us[static_cast<std::size_t>(i)].size()) != n ||
            static_cast<int>(vs[static_cast<std::size_t>(i)].size()) != n)
            throw ShapeError("permanent_dot: vectors have inconsistent lengths");
        for (int j = 0; j < d; ++j)
            dots(i, j) = us[static_cast<std::size_t>(i)].dot(vs[static_cast<std::size_t>(j)]);
    }
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    double sum = 0.0;
    do {
        double prod = 1.0;
        for (int i = 0; i < d; ++i) prod *= dots(i, perm[static_cast<std::size_t>(i)]);
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum / static_cast<double>(factorial128(d));
}

HomogeneousPoly compose_orthogonal(const HomogeneousPoly& p, const OrthogonalMap& h) {
    if (h.n() != p.n()) throw ShapeError("compose_orthogonal: map dimension does not match polynomial");
    // (P o h)(x) = P(h x): substitute row i of h for variable x_i and expand
    // each monomial as a product of linear forms.
    HomogeneousPoly r(p.n(), p.d());
    const auto& alphas = p.basis().alphas();
    for (int j = 0; j < p.basis().size(); ++j) {
        const double c = p.coeffs()[j];
        if (c == 0.0) continue;
        const MultiIndex& a = alphas[static_cast<std::size_t>(j)];
        std::vector<Eigen::VectorXd> factors;
        factors.reserve(static_cast<std::size_t>(p.d()));
        for (int i = 0; i < p.n(); ++i)
            for (int e = 0; e < a[i]; ++e) factors.push_back(h.matrix().row(i).transpose());
        r += c * prod_linear_forms(factors);
    }
    return r;
}

double veronese_dot(const HomogeneousPoly& p, const Eigen::VectorXd& u) {
    return bombieri_dot(p, pow_linear_form(u, p.d()));
}

} // namespace discdist
