#include "discdist/basis_matrices.hpp"

#include <cmath>
#include <string>

#include "discdist/errors.hpp"
#include "discdist/multi_index.hpp"

namespace discdist {

BasisMatrices basis_matrices(int n, int d, const Eigen::VectorXd& x) {
    const MonomialBasis& basis = MonomialBasis::get(n, d);
    if (x.size() != n) {
        throw ShapeError("basis_matrices: point has dimension " +
                         std::to_string(x.size()) + ", expected " +
                         std::to_string(n));
    }
    if (x.norm() <= 1e-14) {
        throw DegenerateError(
            "basis_matrices: the basis derivative matrix is singular at the "
            "origin");
    }

    const int N = basis.size();
    const Eigen::VectorXd& scale = basis.orthonormal_scale();

    // Powers x_i^k for k = 0..d, so each monomial is a product of lookups.
    Eigen::MatrixXd pow(n, d + 1);
    for (int i = 0; i < n; ++i) {
        pow(i, 0) = 1.0;
        for (int k = 1; k <= d; ++k) pow(i, k) = pow(i, k - 1) * x[i];
    }

    BasisMatrices out;
    out.C.resize(N);
    out.B.setZero(n, N);
    for (int j = 0; j < N; ++j) {
        const MultiIndex& alpha = basis.alpha(j);
        double mono = 1.0;
        for (int i = 0; i < n; ++i) mono *= pow(i, alpha[i]);
        out.C[j] = scale[j] * mono;
        for (int i = 0; i < n; ++i) {
            const int a = alpha[i];
            if (a == 0) continue;
            // d/dx_i of x^alpha = a_i x^(alpha - chi_i).
            double dm = static_cast<double>(a);
            for (int l = 0; l < n; ++l) {
                dm *= pow(l, l == i ? alpha[l] - 1 : alpha[l]);
            }
            out.B(i, j) = scale[j] * dm;
        }
    }

    out.A = out.B * out.B.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.A);
    if (es.info() != Eigen::Success) {
        throw ConditioningError(
            "basis_matrices: eigendecomposition of A failed");
    }
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double lo = ev[0];
    const double hi = ev[n - 1];
    if (!(lo > 0.0) || hi / lo > 1e12) {
        throw ConditioningError(
            "basis_matrices: A is numerically singular (eigenvalue range [" +
            std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }
    out.M = es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
            es.eigenvectors().transpose();
    return out;
}

double distance_general_at(const HomogeneousPoly& p,
                           const Eigen::VectorXd& x) {
    const BasisMatrices bm = basis_matrices(p.n(), p.d(), x);
    const Eigen::VectorXd g = gradient(p, x);
    const double q = g.dot(bm.M * g);
    return std::sqrt(std::max(q, 0.0));
}

} // namespace discdist
