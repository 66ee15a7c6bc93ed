#include "popalign/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "popalign/errors.hpp"

namespace popalign {

int SpectralDecomposition::sigma1_multiplicity() const {
    if (sigma.size() == 0) return 0;
    const double s1 = sigma[0];
    const double tol = 1e-8 * std::max(1.0, s1);
    int count = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (s1 - sigma[i] <= tol) ++count;
    return count;
}

std::vector<double> SpectralDecomposition::sigma_squared() const {
    std::vector<double> s(static_cast<std::size_t>(sigma.size()));
    for (Eigen::Index i = 0; i < sigma.size(); ++i) s[static_cast<std::size_t>(i)] = sigma[i] * sigma[i];
    return s;
}

std::vector<double> SpectralDecomposition::sigma_squared_padded(std::size_t length) const {
    std::vector<double> s = sigma_squared();
    if (s.size() > length)
        throw std::invalid_argument("sigma_squared_padded: length below min(n, m)");
    s.resize(length, 0.0);
    return s;
}

SpectralDecomposition svd(const Eigen::MatrixXd& Y, double rank_tol) {
    SpectralDecomposition D;
    const Eigen::Index n = Y.rows(), m = Y.cols();
    if (n == 0 || m == 0) {
        D.sigma = Eigen::VectorXd(0);
        D.left_vectors = Eigen::MatrixXd(n, 0);
        D.right_vectors = Eigen::MatrixXd(m, 0);
        D.rank_tol = std::max(0.0, rank_tol);
        D.effective_rank = 0;
        return D;
    }

    Eigen::BDCSVD<Eigen::MatrixXd> solver(Y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("svd: BDCSVD did not converge on a " + std::to_string(n) + " x " +
                               std::to_string(m) + " matrix (nonzero singular values computed: " +
                               std::to_string(solver.nonzeroSingularValues()) + ")");

    D.sigma = solver.singularValues();
    D.left_vectors = solver.matrixU();
    D.right_vectors = solver.matrixV();

    // deterministic sign: first largest-|.| entry of q_i made positive
    for (Eigen::Index i = 0; i < D.right_vectors.cols(); ++i) {
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index j = 0; j < D.right_vectors.rows(); ++j) {
            const double a = std::abs(D.right_vectors(j, i));
            if (a > best) {
                best = a;
                arg = j;
            }
        }
        if (D.right_vectors(arg, i) < 0.0) {
            D.right_vectors.col(i) = -D.right_vectors.col(i);
            D.left_vectors.col(i) = -D.left_vectors.col(i);
        }
    }

    const double sigma1 = D.sigma.size() > 0 ? D.sigma[0] : 0.0;
    D.rank_tol = rank_tol >= 0.0
                     ? rank_tol
                     : static_cast<double>(std::max(n, m)) *
                           std::numeric_limits<double>::epsilon() * sigma1;
    D.effective_rank = 0;
    for (Eigen::Index i = 0; i < D.sigma.size(); ++i)
        if (D.sigma[i] > D.rank_tol) ++D.effective_rank;
    return D;
}

SpectralDecomposition svd(const InteractionMatrix& Y, double rank_tol) {
    return svd(Y.to_dense(), rank_tol);
}

Eigen::VectorXd principal_right_vector(const SpectralDecomposition& D) {
    if (D.effective_rank < 1)
        throw std::invalid_argument("principal_right_vector: effective rank is zero");
    const int mult = D.sigma1_multiplicity();
    if (mult > 1)
        throw DegenerateSpectrumError(
            "principal_right_vector: sigma_1 has multiplicity " + std::to_string(mult) +
                "; the Perron orientation is not unique",
            mult);

    Eigen::VectorXd q = D.right_vectors.col(0);
    const double tol = 1e-10;
    const bool any_pos = (q.array() > tol).any();
    const bool any_neg = (q.array() < -tol).any();
    if (any_neg && !any_pos) q = -q;
    if ((q.array() < -tol).any() && (q.array() > tol).any())
        throw DegenerateSpectrumError(
            "principal_right_vector: q_1 has mixed signs beyond tolerance", mult);
    return q.cwiseMax(0.0);
}

Eigen::MatrixXd truncate(const SpectralDecomposition& D, int ell) {
    if (ell < 0 || ell > D.effective_rank)
        throw std::out_of_range("truncate: ell = " + std::to_string(ell) +
                                " outside 0.." + std::to_string(D.effective_rank));
    const Eigen::Index n = D.left_vectors.rows(), m = D.right_vectors.rows();
    if (ell == 0) return Eigen::MatrixXd::Zero(n, m);
    return D.left_vectors.leftCols(ell) * D.sigma.head(ell).asDiagonal() *
           D.right_vectors.leftCols(ell).transpose();
}

AlignmentProfile alignment_profile(const InteractionMatrix& Y, const SpectralDecomposition& D) {
    const std::size_t n = Y.users();
    const Eigen::MatrixXd Yd = Y.to_dense();
    const Eigen::VectorXd r = Yd.colwise().sum().transpose();
    const double vol2 = r.squaredNorm();
    if (vol2 <= 0.0)
        throw std::invalid_argument("alignment_profile: zero popularity vector (no edges)");

    AlignmentProfile prof;
    prof.mu_ratio = vol2 / static_cast<double>(n);

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    const Eigen::VectorXd c = D.left_vectors.transpose() * ones;   // c_i = p_i' 1
    const Eigen::VectorXd t = D.right_vectors.transpose() * r;     // t_i = q_i' r

    prof.alpha.resize(static_cast<std::size_t>(c.size()));
    double alpha_sum = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        prof.alpha[static_cast<std::size_t>(i)] = c[i] * c[i] / static_cast<double>(n);
        alpha_sum += prof.alpha[static_cast<std::size_t>(i)];
    }
    prof.alpha_residual = std::max(0.0, 1.0 - alpha_sum);

    // spectral-route denominator: sum_j sigma_j^2 c_j^2 (equals ||r||^2)
    double denom_spec = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i)
        denom_spec += D.sigma[i] * D.sigma[i] * c[i] * c[i];

    prof.cos_theta.reserve(static_cast<std::size_t>(D.effective_rank));
    prof.kappa.reserve(static_cast<std::size_t>(D.effective_rank));
    double cum_proj = 0.0, cum_spec = 0.0;
    for (int k = 1; k <= D.effective_rank; ++k) {
        const Eigen::Index i = k - 1;
        cum_proj += t[i] * t[i];
        cum_spec += D.sigma[i] * D.sigma[i] * c[i] * c[i];
        const double kappa_proj = cum_proj / vol2;
        const double kappa_spec = denom_spec > 0.0 ? cum_spec / denom_spec : 0.0;
        if (std::abs(kappa_proj - kappa_spec) > 1e-8)
            throw std::logic_error("alignment_profile: projector and spectral kappa disagree (" +
                                   std::to_string(kappa_proj) + " vs " + std::to_string(kappa_spec) +
                                   " at k = " + std::to_string(k) + ")");
        const double kappa = std::min(1.0, kappa_proj);
        prof.kappa.push_back(kappa);
        prof.cos_theta.push_back(std::sqrt(kappa));
    }
    return prof;
}

} // namespace popalign
