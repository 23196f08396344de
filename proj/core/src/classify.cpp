#include "discdist/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "discdist/bombieri.hpp"
#include "discdist/errors.hpp"

namespace discdist {

namespace {

// Deterministic eigenvector orientation: the entry of largest magnitude
// is made positive.
void fix_sign(Eigen::VectorXd& v) {
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
}

double coeff_at(const HomogeneousPoly& p, std::vector<int> exponents) {
    return p.coeff(MultiIndex(std::move(exponents)));
}

// Exponent vector with e[i] = ei, e[j] = ej and the rest of the degree
// on the last variable.
std::vector<int> pattern(int n, int d, int i, int ei, int j, int ej) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] += ei;
    e[static_cast<std::size_t>(j)] += ej;
    e[static_cast<std::size_t>(n - 1)] += d - ei - ej;
    return e;
}

void check_point(const HomogeneousPoly& p, const SpherePoint& c,
                 const char* who) {
    if (c.n() != p.n()) {
        throw ShapeError(std::string(who) + ": point dimension " +
                         std::to_string(c.n()) + " does not match the " +
                         std::to_string(p.n()) + " polynomial variables");
    }
}

} // namespace

QuasiSingularPoint classify(const HomogeneousPoly& p, const SpherePoint& c,
                            double classify_tol) {
    if (p.d() < 2) throw ShapeError("classify: requires degree >= 2");
    check_point(p, c, "classify");
    if (!(classify_tol > 0.0)) {
        throw ShapeError("classify: classify_tol must be positive");
    }
    const int n = p.n();
    const double d = p.d();
    const double norm = bombieri_norm(p);
    if (!(norm > 0.0)) throw DegenerateError("classify: zero polynomial");

    const double v = eval(p, c.coords());
    const Eigen::VectorXd tg = tangential_gradient(p, c);
    const double tgnorm = tg.norm();
    const Eigen::MatrixXd ht = tangential_hessian(p, c);

    // Necessary condition at every delta-critical point: the tangential
    // Hessian annihilates the tangential gradient.  The additive part of
    // the threshold keeps the gate meaningful when tg is numerically
    // zero (quasi-double side).
    const double hscale = d * (d - 1.0) * norm;
    const double gate = hscale * (1e-6 * tgnorm + classify_tol * d * norm);
    const double resid = (ht * tg).norm();
    if (resid > gate) {
        throw ClassifyError(
            "classify: H^T grad^T residual " + std::to_string(resid) +
            " exceeds the threshold " + std::to_string(gate) +
            "; the point is not quasi-singular");
    }

    QuasiSingularPoint out{c,
                           tgnorm <= classify_tol * d * norm
                               ? QsKind::QuasiDouble
                               : QsKind::QuasiCusp,
                           v,
                           tg,
                           v * v + tg.squaredNorm() / d,
                           {}};
    const Eigen::MatrixXd B = tangent_basis(c.coords());
    const Eigen::MatrixXd tangent_block =
        B.transpose() * hessian(p, c.coords()) * B;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tangent_block);
    out.ht_eigenvalues.assign(es.eigenvalues().data(),
                              es.eigenvalues().data() + (n - 1));
    return out;
}

QuasiSingularSet find_quasi_singular(const HomogeneousPoly& p,
                                     const SearchConfig& cfg,
                                     double classify_tol) {
    QuasiSingularSet out;
    out.report = distance_bombieri(p, cfg);
    const double norm = bombieri_norm(p);
    if (out.report.dist <= 1e-8 * norm) {
        throw DegenerateError(
            "find_quasi_singular: the polynomial lies on the discriminant "
            "within tolerance (dist = " +
            std::to_string(out.report.dist) + ")");
    }
    out.possibly_continuum = out.report.possibly_continuum;
    out.points.reserve(out.report.minimizers.size());
    for (const SpherePoint& c : out.report.minimizers) {
        out.points.push_back(classify(p, c, classify_tol));
    }
    return out;
}

HomogeneousPoly contact_radius(const HomogeneousPoly& p,
                               const SpherePoint& c) {
    if (p.d() < 2) throw ShapeError("contact_radius: requires degree >= 2");
    check_point(p, c, "contact_radius");
    const int d = p.d();
    const double v = eval(p, c.coords());
    const Eigen::VectorXd tg = tangential_gradient(p, c);

    HomogeneousPoly r = (-v) * pow_linear_form(c.coords(), d);
    std::vector<Eigen::VectorXd> factors;
    factors.reserve(static_cast<std::size_t>(d));
    factors.push_back(tg);
    for (int i = 0; i + 1 < d; ++i) factors.push_back(c.coords());
    r -= prod_linear_forms(factors);
    return r;
}

HomogeneousPoly contact_polynomial(const HomogeneousPoly& p,
                                   const SpherePoint& c) {
    return p + contact_radius(p, c);
}

CanonicalFrame canonical_frame(const HomogeneousPoly& p, const SpherePoint& c,
                               double classify_tol) {
    const QuasiSingularPoint qs = classify(p, c, classify_tol);
    const int n = p.n();
    const int d = p.d();
    const double norm = bombieri_norm(p);
    const double ktol = 1e-6 * d * (d - 1.0) * norm;

    Eigen::MatrixXd frame(n, n);
    int kernel_count = 0;

    if (qs.kind == QsKind::QuasiCusp) {
        if (d < 3) {
            throw ClassifyError(
                "canonical_frame: a quasi-cusp frame requires degree > 2");
        }
        const Eigen::VectorXd u1 =
            qs.tangential_grad / qs.tangential_grad.norm();

        // Orthonormal complement of span{c, u1} from a full QR.
        Eigen::MatrixXd cu(n, 2);
        cu.col(0) = c.coords();
        cu.col(1) = u1;
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(cu);
        const Eigen::MatrixXd q = qr.householderQ();
        const Eigen::MatrixXd w = q.rightCols(n - 2);

        // For n = 2 the complement is empty and the eigensolve must be
        // skipped (a 0 x 0 SelfAdjointEigenSolver is undefined).
        const Eigen::MatrixXd hess = hessian(p, c.coords());
        Eigen::VectorXd wvals = Eigen::VectorXd::Zero(n - 2);
        Eigen::MatrixXd wvecs = Eigen::MatrixXd::Identity(n - 2, n - 2);
        if (n > 2) {
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
                w.transpose() * hess * w);
            wvals = es.eigenvalues();
            wvecs = es.eigenvectors();
        }

        std::vector<int> ker_idx;
        std::vector<int> reg_idx;
        for (int i = 0; i < n - 2; ++i) {
            if (std::abs(wvals[i]) <= ktol) {
                ker_idx.push_back(i);
            } else {
                reg_idx.push_back(i);
            }
        }

        // Kernel directions carry no second-order information, so they
        // are separated by the third-order form d^3 P(c)[u1, ., .]
        // instead; diagonalizing it kills the x_1 x_i x_j cross terms.
        Eigen::MatrixXd ker_cols(n, static_cast<int>(ker_idx.size()));
        for (std::size_t j = 0; j < ker_idx.size(); ++j) {
            ker_cols.col(static_cast<int>(j)) =
                w * wvecs.col(ker_idx[j]);
        }
        if (ker_idx.size() > 1) {
            const HomogeneousPoly p1 = directional_derivative(p, u1);
            const Eigen::MatrixXd third = hessian(p1, c.coords());
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es3(
                ker_cols.transpose() * third * ker_cols);
            ker_cols = ker_cols * es3.eigenvectors();
        }

        frame.col(0) = u1;
        int idx = 1;
        for (int j = 0; j < static_cast<int>(ker_idx.size()); ++j) {
            Eigen::VectorXd col = ker_cols.col(j);
            fix_sign(col);
            frame.col(idx++) = col;
        }
        for (int i : reg_idx) {
            Eigen::VectorXd col = w * wvecs.col(i);
            fix_sign(col);
            frame.col(idx++) = col;
        }
        frame.col(n - 1) = c.coords();
        kernel_count = 1 + static_cast<int>(ker_idx.size());
    } else {
        const Eigen::MatrixXd B = tangent_basis(c.coords());
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            B.transpose() * hessian(p, c.coords()) * B);

        // e_1 is free when beta = 0; take the dominant eigenvector for
        // determinism, then the rest by decreasing magnitude.
        std::vector<int> order(static_cast<std::size_t>(n - 1));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double ma = std::abs(es.eigenvalues()[a]);
            const double mb = std::abs(es.eigenvalues()[b]);
            if (ma != mb) return ma > mb;
            if (es.eigenvalues()[a] != es.eigenvalues()[b]) {
                return es.eigenvalues()[a] > es.eigenvalues()[b];
            }
            return a < b;
        });
        for (int j = 0; j < n - 1; ++j) {
            Eigen::VectorXd col = B * es.eigenvectors().col(order[
                static_cast<std::size_t>(j)]);
            fix_sign(col);
            frame.col(j) = col;
        }
        frame.col(n - 1) = c.coords();
    }

    const OrthogonalMap rotation(frame);
    const HomogeneousPoly rotated = compose_orthogonal(p, rotation);

    CanonicalFrame out{rotation, 0.0, 0.0, kernel_count, {}, {}};
    out.alpha = coeff_at(rotated, pattern(n, d, n - 1, 0, n - 1, 0));
    out.beta = coeff_at(rotated, pattern(n, d, 0, 1, 0, 0));

    const double vtol = 1e-9 * std::max(norm, 1.0);
    if (std::abs(out.alpha - qs.value) > vtol) {
        throw ClassifyError(
            "canonical_frame: extracted alpha " + std::to_string(out.alpha) +
            " disagrees with P(c) = " + std::to_string(qs.value));
    }
    if (qs.kind == QsKind::QuasiCusp) {
        const double tgnorm = qs.tangential_grad.norm();
        if (std::abs(out.beta - tgnorm) > vtol * d) {
            throw ClassifyError(
                "canonical_frame: extracted beta " + std::to_string(out.beta) +
                " disagrees with ||grad^T P(c)|| = " + std::to_string(tgnorm));
        }
        if (out.beta <= classify_tol * d * norm) {
            throw ClassifyError(
                "canonical_frame: beta below the classification threshold "
                "in a quasi-cusp extraction");
        }
        for (int i = 1; i < n - 1; ++i) {
            out.lambdas.push_back(2.0 *
                                  coeff_at(rotated, pattern(n, d, i, 2, i, 0)));
        }
        out.mus.push_back(6.0 * coeff_at(rotated, pattern(n, d, 0, 3, 0, 0)));
        for (int i = 1; i < n - 1; ++i) {
            out.mus.push_back(2.0 *
                              coeff_at(rotated, pattern(n, d, 0, 1, i, 2)));
        }
    } else {
        for (int i = 0; i < n - 1; ++i) {
            out.lambdas.push_back(2.0 *
                                  coeff_at(rotated, pattern(n, d, i, 2, i, 0)));
        }
    }
    return out;
}

ValidationRecord validate_quasi_double(const HomogeneousPoly& p,
                                       const SpherePoint& c,
                                       double classify_tol) {
    const QuasiSingularPoint qs = classify(p, c, classify_tol);
    if (qs.kind != QsKind::QuasiDouble) {
        throw ClassifyError(
            "validate_quasi_double: the point classifies as quasi-cusp");
    }
    const CanonicalFrame frame = canonical_frame(p, c, classify_tol);
    const double d = p.d();
    const double norm = bombieri_norm(p);
    const double hscale = d * (d - 1.0) * norm;
    const double alpha = frame.alpha;

    ValidationRecord rec;
    {
        CheckItem item{"alpha_nonzero", true,
                       std::abs(alpha) > 1e-12 * norm, std::abs(alpha)};
        rec.all_pass = rec.all_pass && item.pass;
        rec.checks.push_back(std::move(item));
    }
    for (std::size_t i = 0; i < frame.lambdas.size(); ++i) {
        const double lam = frame.lambdas[i];
        const bool applicable = lam * alpha > 0.0;
        const double margin = std::abs(lam) - d * std::abs(alpha);
        const bool pass = !applicable || margin >= -1e-7 * hscale;
        rec.all_pass = rec.all_pass && pass;
        rec.checks.push_back(CheckItem{
            "lambda_" + std::to_string(i + 1) + "_magnitude", applicable,
            pass, margin});
    }
    return rec;
}

ValidationRecord validate_quasi_cusp(const HomogeneousPoly& p,
                                     const SpherePoint& c,
                                     double classify_tol) {
    if (p.d() == 2) {
        throw ClassifyError(
            "validate_quasi_cusp: quasi-cusp points exist only for degree "
            "above 2");
    }
    const QuasiSingularPoint qs = classify(p, c, classify_tol);
    if (qs.kind != QsKind::QuasiCusp) {
        throw ClassifyError(
            "validate_quasi_cusp: the point classifies as quasi-double");
    }
    const CanonicalFrame frame = canonical_frame(p, c, classify_tol);
    const int n = p.n();
    const double d = p.d();
    const double norm = bombieri_norm(p);
    const double hscale = d * (d - 1.0) * norm;
    const double ktol = 1e-6 * hscale;
    const double sign_tol = 1e-7 * d * (d - 1.0) * (d - 2.0) * norm;
    const double quad_scale = hscale * hscale;
    const double alpha = frame.alpha;
    const double beta = frame.beta;

    ValidationRecord rec;
    auto add = [&rec](std::string label, bool applicable, bool pass,
                      double margin) {
        rec.all_pass = rec.all_pass && (!applicable || pass);
        rec.checks.push_back(
            CheckItem{std::move(label), applicable, pass, margin});
    };

    // The frame orients e_1 along grad^T P(c), so the common sign of
    // beta and the kernel mus has to be positive.
    add("beta_sign", true, beta > 0.0, beta);
    add("mu_1_sign", true, frame.mus[0] > sign_tol, frame.mus[0]);
    // One-dimensional step along the gradient direction.
    const double step = 2.0 * (1.0 - d) * beta * beta + beta * frame.mus[0];
    add("mu_1_inequality", true, step >= -1e-7 * quad_scale, step);

    // Tangent directions x_2..x_{n-1}: positions 2..kernel_count are the
    // remaining kernel directions (their mu must share the sign of
    // beta), the rest have nonzero lambda; all satisfy the quadratic
    // inequality.
    for (int i = 2; i < n; ++i) {
        const double lam = frame.lambdas[static_cast<std::size_t>(i - 2)];
        const double mu = frame.mus[static_cast<std::size_t>(i - 1)];
        const bool in_kernel = i <= frame.kernel_count;
        if (in_kernel) {
            add("mu_" + std::to_string(i) + "_sign", true, mu > sign_tol, mu);
        } else {
            add("lambda_" + std::to_string(i) + "_nonzero", true,
                std::abs(lam) > ktol, std::abs(lam) - ktol);
        }
        const double quad =
            (1.0 - d) * beta * beta - d * alpha * lam + lam * lam + beta * mu;
        add("direction_" + std::to_string(i) + "_inequality", true,
            quad >= -1e-7 * quad_scale, quad);
    }
    return rec;
}

} // namespace discdist
