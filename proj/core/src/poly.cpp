#include "discdist/poly.hpp"

#include <cmath>
#include <string>

namespace discdist {

namespace {

void check_same_shape(const HomogeneousPoly& p, const HomogeneousPoly& q, const char* op) {
    if (p.n() != q.n() || p.d() != q.d())
        throw ShapeError(std::string(op) + ": operands live in different spaces (n=" + std::to_string(p.n()) +
                         ",d=" + std::to_string(p.d()) + ") vs (n=" + std::to_string(q.n()) + ",d=" +
                         std::to_string(q.d()) + ")");
}

void check_point(const HomogeneousPoly& p, const Eigen::VectorXd& x, const char* op) {
    if (static_cast<int>(x.size()) != p.n())
        throw ShapeError(std::string(op) + ": point has length " + std::to_string(x.size()) +
                         ", polynomial has n=" + std::to_string(p.n()));
}

// pows(i, e) = x_i^e for e = 0..d.
Eigen::MatrixXd power_table(const Eigen::VectorXd& x, int d) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd pows(n, d + 1);
    pows.col(0).setOnes();
    for (int e = 1; e <= d; ++e) pows.col(e) = pows.col(e - 1).cwiseProduct(x);
    return pows;
}

} // namespace

HomogeneousPoly::HomogeneousPoly(int n, int d)
    : basis_(&MonomialBasis::get(n, d)), coeffs_(Eigen::VectorXd::Zero(basis_->size())) {}

HomogeneousPoly HomogeneousPoly::monomial(const MultiIndex& alpha, double c) {
    HomogeneousPoly p(alpha.size(), alpha.degree());
    p.set_coeff(alpha, c);
    return p;
}

double HomogeneousPoly::coeff(const MultiIndex& alpha) const {
    const int j = basis_->index_of(alpha);
    if (j < 0) throw ShapeError("coeff: multi-index does not match the polynomial's (n, d)");
    return coeffs_[j];
}

void HomogeneousPoly::set_coeff(const MultiIndex& alpha, double c) {
    const int j = basis_->index_of(alpha);
    if (j < 0) throw ShapeError("set_coeff: multi-index does not match the polynomial's (n, d)");
    coeffs_[j] = c;
}

bool HomogeneousPoly::is_zero(double tol) const {
    return coeffs_.lpNorm<Eigen::Infinity>() <= tol;
}

HomogeneousPoly& HomogeneousPoly::operator+=(const HomogeneousPoly& q) {
    check_same_shape(*this, q, "operator+");
    coeffs_ += q.coeffs_;
    return *this;
}

HomogeneousPoly& HomogeneousPoly::operator-=(const HomogeneousPoly& q) {
    check_same_shape(*this, q, "operator-");
    coeffs_ -= q.coeffs_;
    return *this;
}

HomogeneousPoly& HomogeneousPoly::operator*=(double t) {
    coeffs_ *= t;
    return *this;
}

bool HomogeneousPoly::operator==(const HomogeneousPoly& q) const {
    return n() == q.n() && d() == q.d() && coeffs_ == q.coeffs_;
}

HomogeneousPoly operator*(const HomogeneousPoly& p, const HomogeneousPoly& q) {
    if (p.n() != q.n())
        throw ShapeError("operator*: operands have different ambient dimensions");
    HomogeneousPoly r(p.n(), p.d() + q.d());
    const auto& pa = p.basis().alphas();
    const auto& qa = q.basis().alphas();
    const int n = p.n();
    MultiIndex sum;
    sum.exponents.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < p.basis().size(); ++i) {
        const double ci = p.coeffs()[i];
        if (ci == 0.0) continue;
        for (int j = 0; j < q.basis().size(); ++j) {
            const double cj = q.coeffs()[j];
            if (cj == 0.0) continue;
            for (int k = 0; k < n; ++k) sum[k] = pa[static_cast<std::size_t>(i)][k] + qa[static_cast<std::size_t>(j)][k];
            r.coeffs()[r.basis().index_of(sum)] += ci * cj;
        }
    }
    return r;
}

HomogeneousPoly differentiate(const HomogeneousPoly& p, int i) {
    if (p.d() < 2)
        throw ShapeError("differentiate: degree must be at least 2 to keep a homogeneous result");
    if (i < 0 || i >= p.n()) throw ShapeError("differentiate: variable index out of range");
    HomogeneousPoly r(p.n(), p.d() - 1);
    const auto& alphas = p.basis().alphas();
    MultiIndex beta;
    for (int j = 0; j < p.basis().size(); ++j) {
        const double c = p.coeffs()[j];
        if (c == 0.0) continue;
        const MultiIndex& a = alphas[static_cast<std::size_t>(j)];
        if (a[i] == 0) continue;
        beta = a;
        beta[i] -= 1;
        r.coeffs()[r.basis().index_of(beta)] += c * a[i];
    }
    return r;
}

HomogeneousPoly directional_derivative(const HomogeneousPoly& p, const Eigen::VectorXd& u) {
    check_point(p, u, "directional_derivative");
    if (p.d() < 2)
        throw ShapeError("directional_derivative: degree must be at least 2");
    HomogeneousPoly r(p.n(), p.d() - 1);
    for (int i = 0; i < p.n(); ++i) {
        if (u[i] == 0.0) continue;
        r += u[i] * differentiate(p, i);
    }
    return r;
}

double eval(const HomogeneousPoly& p, const Eigen::VectorXd& x) {
    check_point(p, x, "eval");
    const Eigen::MatrixXd pows = power_table(x, p.d());
    const auto& alphas = p.basis().alphas();
    const int n = p.n();
    double value = 0.0;
    for (int j = 0; j < p.basis().size(); ++j) {
        const double c = p.coeffs()[j];
        if (c == 0.0) continue;
        double mono = 1.0;
        const MultiIndex& a = alphas[static_cast<std::size_t>(j)];
        for (int i = 0; i < n; ++i) mono *= pows(i, a[i]);
        value += c * mono;
    }
    return value;
}

Eigen::VectorXd gradient(const HomogeneousPoly& p, const Eigen::VectorXd& x) {
    check_point(p, x, "gradient");
    const Eigen::MatrixXd pows = power_table(x, p.d());
    const auto& alphas = p.basis().alphas();
    const int n = p.n();
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < p.basis().size(); ++j) {
        const double c = p.coeffs()[j];
        if (c == 0.0) continue;
        const MultiIndex& a = alphas[static_cast<std::size_t>(j)];
        for (int i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            double term = c * a[i];
            for (int k = 0; k < n; ++k) term *= pows(k, k == i ? a[k] - 1 : a[k]);
            g[i] += term;
        }
    }
    return g;
}

Eigen::MatrixXd hessian(const HomogeneousPoly& p, const Eigen::VectorXd& x) {
    check_point(p, x, "hessian");
    if (p.d() < 2) throw ShapeError("hessian: degree must be at least 2");
    const Eigen::MatrixXd pows = power_table(x, p.d());
    const auto& alphas = p.basis().alphas();
    const int n = p.n();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < p.basis().size(); ++j) {
        const double c = p.coeffs()[j];
        if (c == 0.0) continue;
        const MultiIndex& a = alphas[static_cast<std::size_t>(j)];
        for (int i1 = 0; i1 < n; ++i1) {
            if (a[i1] == 0) continue;
            // Diagonal entry: factor a_i (a_i - 1).
            if (a[i1] >= 2) {
                double term = c * a[i1] * (a[i1] - 1);
                for (int k = 0; k < n; ++k) term *= pows(k, k == i1 ? a[k] - 2 : a[k]);
                h(i1, i1) += term;
            }
            // Strict upper triangle: factor a_i a_j.
            for (int i2 = i1 + 1; i2 < n; ++i2) {
                if (a[i2] == 0) continue;
                double term = c * a[i1] * a[i2];
                for (int k = 0; k < n; ++k) {
                    int e = a[k];
                    if (k == i1) e -= 1;
                    if (k == i2) e -= 1;
                    term *= pows(k, e);
                }
                h(i1, i2) += term;
                h(i2, i1) += term;
            }
        }
    }
    return h;
}

Eigen::VectorXd tangential_gradient(const HomogeneousPoly& p, const SpherePoint& x) {
    const Eigen::VectorXd g = gradient(p, x.coords());
    return g - (p.d() * eval(p, x.coords())) * x.coords();
}

Eigen::MatrixXd tangential_hessian(const HomogeneousPoly& p, const SpherePoint& x) {
    const Eigen::MatrixXd h = hessian(p, x.coords());
    const int n = p.n();
    const Eigen::MatrixXd pi = Eigen::MatrixXd::Identity(n, n) - x.coords() * x.coords().transpose();
    return pi * h * pi;
}

} // namespace discdist
