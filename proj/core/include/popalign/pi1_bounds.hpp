#ifndef POPALIGN_PI1_BOUNDS_HPP
#define POPALIGN_PI1_BOUNDS_HPP

#include <cstdint>
#include <string>

#include "popalign/interaction_matrix.hpp"

namespace popalign {

enum class Pi1Variant { exact, linearized_2nd, linearized_1st, distributional };
enum class LinearizationOrder { second, first };

const char* to_string(Pi1Variant v);

/// Lower bound on cos(r, q_1). `value` is clamped to [0, 1] for reporting;
/// `raw` keeps the unclamped number (a negative raw marks the vacuous
/// regime, which is informative in itself).
struct Pi1Bound {
    double value = 0.0;
    double raw = 0.0;
    Pi1Variant variant = Pi1Variant::exact;
    struct Inputs {
        double sigma1_sq = 0.0;  // the proxy L for the linearized variants
        double vol1 = 0.0;
        double vol2 = 0.0;
        double r_used = 0.0;
    } inputs;
};

/// cos(r, q_1) >= (sigma1^2 / sqrt(vol2)) * sqrt(1 - (vol1 - r_s) / sigma1^2),
/// with the radicand clamped below at zero. Valid for any item degree r_s;
/// the bound is nondecreasing in r_s, so r_max is the strongest choice.
Pi1Bound pi1_lower_bound(double sigma1_sq, double vol1, double vol2, double r_s);

/// Polynomial relaxations of the radical via
/// sqrt(1-a) >= 1 - a/2 - a^2/2 >= 1 - a, evaluated at a proxy L <= sigma1^2
/// (typically the Kumar lower bound). Each order is weaker than the exact
/// form at the same L.
Pi1Bound pi1_lower_bound_linearized(double L, double vol1, double vol2, double r_max,
                                    LinearizationOrder order);

/// Same bound evaluated at distribution-level volumes vol1_rho >= vol1 and
/// vol2_rho >= vol2 (dominance is what keeps the inequality direction);
/// the actual graph volumes are required so dominance can be verified.
/// Throws InfeasibleError when dominance is violated.
Pi1Bound pi1_lower_bound_distributional(double vol1_rho, double vol2_rho,
                                        double sigma1_sq, double r_max,
                                        double actual_vol1, double actual_vol2);

/// Two-sided estimate of sigma_1^2 from the mean and variance of the
/// squared-singular-value multiset padded to p = floor((n+m)/2) entries:
///   m_bar + s/sqrt(p-1) <= sigma_1^2 <= m_bar + s*sqrt(p-1),
/// with s^2 = tr(A^4)/(2p) - m_bar^2 decomposing into degree variance plus
/// wedge and butterfly densities (exactly when n + m is even).
struct KumarBound {
    double lower = 0.0;
    double upper = 0.0;
    double mean_deg = 0.0;  // m_bar = e / p
    double s = 0.0;
    std::uint64_t p = 0;
    struct Decomposition {
        double var_d = 0.0;           // (sum_v d_v^2) / (2p) - m_bar^2
        double wedge_term = 0.0;      // W / p
        double butterfly_term = 0.0;  // 4 c4 / p
    } decomposition;
    bool even_total = false;  // n + m even: the decomposition identity is exact
};

/// Requires n + m >= 4 and at least one edge.
KumarBound kumar_bounds(const InteractionMatrix& Y);

} // namespace popalign

#endif
