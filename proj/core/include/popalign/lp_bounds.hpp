#ifndef POPALIGN_LP_BOUNDS_HPP
#define POPALIGN_LP_BOUNDS_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace popalign {

/// Two-sided bounds on kappa_k = cos^2(theta_k) that depend only on the
/// squared spectrum s_i = sigma_i^2 (padded with zeros to the Gram
/// dimension) and the scalar mu = ||r||^2 / n. Both optima are attained at
/// vertices of the feasible polytope with at most two positive weights.

enum class LpLowerRegime { vacuous_zero, gap_active };
enum class LpUpperRegime { interior, saturated_one };
enum class LpSide { lower, upper };

const char* to_string(LpLowerRegime r);
const char* to_string(LpUpperRegime r);

/// A feasible vertex: at most two nonzero weights alpha over the spectrum
/// positions, summing to 1 with sum s_i alpha_i = mu.
struct LpWitness {
    std::vector<std::pair<std::size_t, double>> weights;  // (0-based index, weight)
    double objective = 0.0;  // sum over i < k of s_i alpha_i
    double kappa = 0.0;      // objective / mu
};

struct LpBoundResult {
    double kappa_lower = 0.0;
    double kappa_upper = 1.0;
    LpLowerRegime regime_lower = LpLowerRegime::vacuous_zero;
    LpUpperRegime regime_upper = LpUpperRegime::interior;
    LpWitness witness_lower;
    LpWitness witness_upper;
    bool degenerate_spectrum = false;  // flat-spectrum convention applied
};

/// Lower branch: 0 while mu <= s_{k+1}, else (s_1/mu)(mu - s_{k+1})/(s_1 - s_{k+1}).
/// s must be nonincreasing and mu must lie in [s_back, s_front] up to 1e-9
/// slack (InfeasibleError otherwise); mu > 0; 1 <= k <= s.size() with
/// k == s.size() giving the exact value 1.
///
/// Flat-head convention (s_1 == s_{k+1}): 0 unless mu == s_1, in which case
/// k divided by the multiplicity of s_1, clamped to [0, 1].
double lp_lower(const std::vector<double>& s, double mu, int k);

/// Upper branch: (s_k/mu)(mu - s_n)/(s_k - s_n) while mu <= s_k, else 1.
/// Flat-tail convention (s_k == s_n): 1.
double lp_upper(const std::vector<double>& s, double mu, int k);

/// Vertex attaining the requested side. Lower/gap-active sits on {1, k+1},
/// upper/interior on {k, n}; the saturated and vacuous regimes pick a
/// bracketing pair inside the head (resp. tail), collapsing to a single
/// index when mu equals one of the s_j.
LpWitness lp_witness(const std::vector<double>& s, double mu, int k, LpSide side);

LpBoundResult lp_bounds(const std::vector<double>& s, double mu, int k);

} // namespace popalign

#endif
