#ifndef POPALIGN_PIK_BOUNDS_HPP
#define POPALIGN_PIK_BOUNDS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "popalign/interaction_matrix.hpp"
#include "popalign/spectral.hpp"

namespace popalign {

/// Everything the subset bounds consume about a pair (S, k): popularity mass
/// on S and its complement, the volume deficit delta_S, the inverse-spectrum
/// sum H_k, and the spectrum of the column-deleted Gram matrix B_S' B_S.
/// Exact reference values (tau_S, lambda_1(M_S), cos theta_k) are always
/// carried along; bound evaluation is the whole point, so ground truth is
/// kept available at desk scale.
struct SubsetContext {
    std::vector<std::size_t> items;  // S, sorted ascending
    int k = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    double r_S_sum = 0.0;      // sum of r_s over S
    double r_S_norm_sq = 0.0;  // sum of r_s^2 over S
    double r_Sc_norm_sq = 0.0;
    double vol1 = 0.0;
    double vol2 = 0.0;
    double delta_S = 0.0;  // vol1 - r_S_sum
    double H_k = 0.0;      // sum_{j<=k} sigma_j^-2
    std::vector<double> sigma_sq;      // sigma_j^2 of Y, nonincreasing
    std::vector<double> bs_gram_eigs;  // eig(B_S'B_S), nonincreasing, length min(n, m-|S|)

    // exact reference values
    double tau_exact = 0.0;        // tr((Pi_k)_SS)
    double lambda1_MS = 0.0;       // top eigenvalue of (Pi_k)_SS
    double r_proj_sq = 0.0;        // r' Pi_k r
    double cos_theta_exact = 0.0;  // sqrt(r_proj_sq / vol2)
};

/// Validates S (nonempty, in range, duplicates rejected) and k
/// (1 <= k <= effective rank) and precomputes the context.
SubsetContext make_subset_context(const InteractionMatrix& Y, const SpectralDecomposition& D,
                                  const std::vector<std::size_t>& items, int k);

/// tau_S >= k - delta_S * H_k (volume-deficit route; not clamped).
double tau_lower_deficit(const SubsetContext& ctx);

struct TauBracket {
    double lower = 0.0;
    double upper = 0.0;
};

/// Ky Fan bracket:
///   k - (sum of k largest eig(B_S'B_S)) / sigma_k^2  <=  tau_S
///   tau_S  <=  k - (sum of k smallest eig(B_S B_S')) / sigma_1^2,
/// where the smallest-eigenvalue sum runs over the n x n Gram form, i.e.
/// its n - min(n, m-|S|) structural zeros are counted.
TauBracket tau_bounds_kyfan(const SubsetContext& ctx);

struct QuadraticBracket {
    double lower = 0.0;  // floored at 0: r' Pi_k r is never negative
    double upper = 0.0;
};

/// Bracket on the quadratic form r' Pi_k r built from bounds on tau_S:
///   lower = [L_tau - (|S|-1)]_+ * ||r_S||^2 - 2 ||r_S|| ||r_Sc||
///   upper = min(1, U_tau) * ||r_S||^2 + 2 ||r_S|| ||r_Sc|| + ||r_Sc||^2.
/// Normalizing by vol2 is the caller's step.
QuadraticBracket projector_quadratic_bracket(double L_tau, double U_tau, const SubsetContext& ctx);

/// Lower-bound family on cos theta_k. A* use the volume-deficit tau bound,
/// B1/B2 the Ky Fan sum, and the B3 variants replace eig(B_S'B_S) with
/// sigma_j^2 by Cauchy interlacing (basis-invariant but weaker).
/// A2/B2/B3_from_B2 require |S| == k.
enum class LowerBoundKind { A1, A2, B1, B2, B3_from_B1, B3_from_B2 };

/// Upper-bound family on cos theta_k. C1 uses the exact lambda_1(M_S)
/// (capped at min(1, U_tau)), C2 the Ky Fan upper tau bound, and C3 its
/// interlacing relaxation sigma_{j+|S|}^2.
enum class UpperBoundKind { C1, C2, C3 };

double bound_family_lower(const SubsetContext& ctx, LowerBoundKind which);
double bound_family_upper(const SubsetContext& ctx, UpperBoundKind which);

double bound_family_lower(const InteractionMatrix& Y, const SpectralDecomposition& D,
                          const std::vector<std::size_t>& items, int k, LowerBoundKind which);
double bound_family_upper(const InteractionMatrix& Y, const SpectralDecomposition& D,
                          const std::vector<std::size_t>& items, int k, UpperBoundKind which);

/// All bounds for one (S, k), with the tau brackets and exact reference
/// values used to build them. a2/b2/b3_from_b2 are absent when |S| != k.
struct PikBoundSet {
    double a1 = 0.0;
    std::optional<double> a2;
    double b1 = 0.0;
    std::optional<double> b2;
    double b3_from_b1 = 0.0;
    std::optional<double> b3_from_b2;
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 1.0;
    double tau_lower_deficit = 0.0;
    double tau_lower_kyfan = 0.0;
    double tau_upper_kyfan = 0.0;
    struct Witnesses {
        double tau_exact = 0.0;
        double lambda1_MS = 0.0;
        double cos_theta_exact = 0.0;
        double r_S_norm = 0.0;
        double r_Sc_norm = 0.0;
        double delta_S = 0.0;
        double H_k = 0.0;
    } witnesses;
    bool c2_vacuous = false;  // the smallest-eigenvalue sum was all structural zeros
};

PikBoundSet evaluate_pik_bounds(const SubsetContext& ctx);
PikBoundSet evaluate_pik_bounds(const InteractionMatrix& Y, const SpectralDecomposition& D,
                                const std::vector<std::size_t>& items, int k);

/// Indices of the j most popular items; ties broken toward the lower index.
/// The result is sorted ascending.
std::vector<std::size_t> top_k_items(const std::vector<std::uint32_t>& popularity, std::size_t j);

/// Principal submatrix M_S = (Pi_k)_SS of the rank-k right projector.
Eigen::MatrixXd projector_principal_submatrix(const SpectralDecomposition& D,
                                              const std::vector<std::size_t>& items, int k);

/// tr((Pi_k)_SS), the top-k singular mass sitting on S.
double exact_tau(const SpectralDecomposition& D, const std::vector<std::size_t>& items, int k);

/// r' Pi_k r evaluated through the projector.
double exact_projector_quadratic(const SpectralDecomposition& D, const Eigen::VectorXd& r, int k);

} // namespace popalign

#endif
