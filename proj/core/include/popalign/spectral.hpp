#ifndef POPALIGN_SPECTRAL_HPP
#define POPALIGN_SPECTRAL_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "popalign/interaction_matrix.hpp"

namespace popalign {

/// Thin SVD of the biadjacency matrix with a deterministic sign convention:
/// each (p_i, q_i) pair is flipped so that the largest-magnitude entry of
/// q_i is positive (first such entry on ties). For a connected graph this
/// makes q_1 the entrywise-nonnegative Perron vector.
struct SpectralDecomposition {
    Eigen::VectorXd sigma;          // nonincreasing, length min(n, m)
    Eigen::MatrixXd left_vectors;   // n x min(n, m), orthonormal columns p_i
    Eigen::MatrixXd right_vectors;  // m x min(n, m), orthonormal columns q_i
    double rank_tol = 0.0;
    int effective_rank = 0;         // count of sigma_i > rank_tol

    /// Multiplicity of sigma_1 within 1e-8 * max(1, sigma_1); 0 if empty.
    int sigma1_multiplicity() const;

    std::vector<double> sigma_squared() const;
    /// sigma_i^2 padded with zeros to `length` (= the eigenvalues of YY'
    /// when length == n, or of Y'Y when length == m).
    std::vector<double> sigma_squared_padded(std::size_t length) const;
};

/// rank_tol < 0 selects the default max(n, m) * machine_eps * sigma_1.
SpectralDecomposition svd(const InteractionMatrix& Y, double rank_tol = -1.0);
SpectralDecomposition svd(const Eigen::MatrixXd& Y, double rank_tol = -1.0);

/// q_1 in the Perron orientation: entrywise >= 0 with tiny negative residue
/// clamped to zero. Throws DegenerateSpectrumError when sigma_1 is multiple
/// or the entries have genuinely mixed signs (disconnected graph).
Eigen::VectorXd principal_right_vector(const SpectralDecomposition& D);

/// Best rank-ell approximation (truncated SVD); 0 <= ell <= effective_rank.
Eigen::MatrixXd truncate(const SpectralDecomposition& D, int ell);

/// Alignment of the popularity vector r = Y' 1 with the leading right
/// singular subspaces, plus the spectrum-only quantities (mu, alpha) that
/// the LP bounds consume.
struct AlignmentProfile {
    std::vector<double> cos_theta;  // entry k-1 holds cos(theta_k), k = 1..effective_rank
    std::vector<double> kappa;      // cos^2(theta_k)
    double mu_ratio = 0.0;          // ||r||^2 / n
    std::vector<double> alpha;      // alpha_i = (p_i' 1)^2 / n, per singular triplet
    double alpha_residual = 0.0;    // mass of 1 outside span{p_i}; nonzero only when n > m
};

/// Requires at least one edge. kappa is computed both from the projector
/// (cumulative (q_i' r)^2) and from the spectral expansion (sigma_i^2 c_i^2);
/// the two routes must agree to 1e-8 or an internal error is raised.
AlignmentProfile alignment_profile(const InteractionMatrix& Y, const SpectralDecomposition& D);

} // namespace popalign

#endif
