#include "discdist/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "discdist/bombieri.hpp"
#include "discdist/errors.hpp"
#include "discdist/multi_index.hpp"

namespace discdist {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    const unsigned __int128 v =
        factorial128(n) / (factorial128(k) * factorial128(n - k));
    return static_cast<double>(v);
}

void check_trd_domain(int r, int d, const char* who) {
    if (r < 1 || r > d) {
        throw ShapeError(std::string(who) + ": need 1 <= r <= d, got r = " +
                         std::to_string(r) + ", d = " + std::to_string(d));
    }
    if ((d - r) % 2 != 0) {
        throw ShapeError(std::string(who) + ": d - r must be even, got r = " +
                         std::to_string(r) + ", d = " + std::to_string(d));
    }
}

} // namespace

TrigSample trig_sample(const HomogeneousPoly& p, double theta) {
    if (p.n() != 2) {
        throw ShapeError("trig_sample: the polynomial must have 2 variables");
    }
    Eigen::VectorXd u(2), uperp(2);
    u << std::cos(theta), std::sin(theta);
    uperp << -u[1], u[0];

    TrigSample s;
    s.theta = theta;
    s.value = eval(p, u);
    s.derivative = gradient(p, u).dot(uperp);
    if (p.d() >= 2) {
        s.second_derivative =
            uperp.dot(hessian(p, u) * uperp) - p.d() * s.value;
    } else {
        // Degree 1 restricts to cos(theta - phi), whose second
        // derivative is the negated value.
        s.second_derivative = -s.value;
    }
    return s;
}

HomogeneousPoly make_T(int r, int d) {
    check_trd_domain(r, d, "make_T");
    // sum_k (-1)^k C(r,2k) y^(2k) x^(r-2k), the degree-r core.
    HomogeneousPoly core(2, r);
    for (int k = 0; 2 * k <= r; ++k) {
        const double c = (k % 2 == 0 ? 1.0 : -1.0) * binomial(r, 2 * k);
        core.set_coeff(MultiIndex({r - 2 * k, 2 * k}), c);
    }
    if (r == d) return core;

    HomogeneousPoly q(2, 2);
    q.set_coeff(MultiIndex({2, 0}), 1.0);
    q.set_coeff(MultiIndex({0, 2}), 1.0);
    HomogeneousPoly out = core;
    for (int i = 0; i < (d - r) / 2; ++i) out = out * q;
    return out;
}

HomogeneousPoly make_C(int d) {
    return make_T(d, d);
}

HomogeneousPoly make_S(int d) {
    if (d < 1) throw ShapeError("make_S: degree must be >= 1");
    // sin(d t) = sum over odd k of (-1)^((k-1)/2) C(d,k) cos^(d-k) sin^k.
    HomogeneousPoly s(2, d);
    for (int k = 1; k <= d; k += 2) {
        const double c =
            (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * binomial(d, k);
        s.set_coeff(MultiIndex({d - k, k}), c);
    }
    return s;
}

double closed_form_distance(int r, int d) {
    check_trd_domain(r, d, "closed_form_distance");
    return std::min(1.0, r / std::sqrt(static_cast<double>(d)));
}

double closed_form_distance_normalized(int r, int d) {
    return closed_form_distance(r, d) / bombieri_norm(make_T(r, d));
}

TrigIdentityErrors trig_identity_errors(int r, int d, int grid_size) {
    check_trd_domain(r, d, "trig_identity_errors");
    if (3 * r <= d) {
        throw ShapeError("trig_identity_errors: the identities hold for "
                         "d/3 < r <= d, got r = " +
                         std::to_string(r) + ", d = " + std::to_string(d));
    }
    if (grid_size < 1) {
        throw ShapeError("trig_identity_errors: grid_size must be >= 1");
    }
    const double pi = std::numbers::pi;
    const double factor =
        std::exp2(d - 1) / (r * binomial(d, (d - r) / 2));

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(grid_size + 2 * r));
    for (int i = 0; i < grid_size; ++i) {
        grid.push_back(2.0 * pi * i / grid_size);
    }
    // The identities' own node angles stress the cancellation the most.
    for (int k = 0; k < r; ++k) {
        grid.push_back(k * pi / r);
        grid.push_back((2 * k + 1) * pi / (2 * r));
    }

    TrigIdentityErrors err;
    for (double t : grid) {
        double cos_sum = 0.0;
        double sin_sum = 0.0;
        for (int k = 0; k < r; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            cos_sum += sign * std::pow(std::cos(t - k * pi / r), d);
            sin_sum +=
                sign * std::pow(std::cos(t - (2 * k + 1) * pi / (2 * r)), d);
        }
        err.cos_error = std::max(
            err.cos_error, std::abs(std::cos(r * t) - factor * cos_sum));
        err.sin_error = std::max(
            err.sin_error, std::abs(std::sin(r * t) - factor * sin_sum));
    }
    return err;
}

double trig_identity_error(int r, int d, int grid_size) {
    const TrigIdentityErrors err = trig_identity_errors(r, d, grid_size);
    return std::max(err.cos_error, err.sin_error);
}

GramPowers gram_powers(const std::vector<double>& thetas, int d) {
    if (d < 1) throw ShapeError("gram_powers: degree must be >= 1");
    const int m = static_cast<int>(thetas.size());
    if (m != d + 1) {
        throw ShapeError("gram_powers: need exactly d + 1 = " +
                         std::to_string(d + 1) + " angles, got " +
                         std::to_string(m));
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (std::abs(std::sin(thetas[static_cast<std::size_t>(i)] -
                                  thetas[static_cast<std::size_t>(j)])) <=
                1e-12) {
                throw DegenerateError(
                    "gram_powers: angles " + std::to_string(i) + " and " +
                    std::to_string(j) + " coincide mod pi");
            }
        }
    }

    GramPowers out;
    out.G.resize(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            out.G(i, j) = std::pow(
                std::cos(thetas[static_cast<std::size_t>(i)] -
                         thetas[static_cast<std::size_t>(j)]),
                d);
        }
    }
    out.V.resize(m, m);
    for (int k = 0; k <= d; ++k) {
        for (int i = 0; i < m; ++i) {
            const double t = thetas[static_cast<std::size_t>(i)];
            out.V(k, i) = std::pow(std::cos(t), k) * std::pow(std::sin(t), d - k);
        }
    }

    Eigen::VectorXd diag(m);
    for (int k = 0; k <= d; ++k) diag[k] = binomial(d, k);
    const Eigen::MatrixXd recon =
        out.V.transpose() * diag.asDiagonal() * out.V;
    const double mismatch = (out.G - recon).cwiseAbs().maxCoeff();
    if (mismatch > 1e-10) {
        throw ConditioningError(
            "gram_powers: the factorization check failed, entrywise "
            "mismatch " +
            std::to_string(mismatch));
    }

    out.det_v = 1.0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            out.det_v *= std::sin(thetas[static_cast<std::size_t>(i)] -
                                  thetas[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

} // namespace discdist
