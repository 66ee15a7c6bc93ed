#include "popalign/pi1_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "popalign/degree.hpp"
#include "popalign/errors.hpp"
#include "popalign/motifs.hpp"

namespace popalign {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

const char* to_string(Pi1Variant v) {
    switch (v) {
        case Pi1Variant::exact: return "exact";
        case Pi1Variant::linearized_2nd: return "linearized_2nd";
        case Pi1Variant::linearized_1st: return "linearized_1st";
        case Pi1Variant::distributional: return "distributional";
    }
    return "unknown";
}

Pi1Bound pi1_lower_bound(double sigma1_sq, double vol1, double vol2, double r_s) {
    if (sigma1_sq <= 0.0) throw std::invalid_argument("pi1_lower_bound: sigma1_sq must be positive");
    if (vol2 <= 0.0) throw std::invalid_argument("pi1_lower_bound: vol2 must be positive");
    if (vol1 < 0.0 || r_s < 0.0) throw std::invalid_argument("pi1_lower_bound: negative volume input");
    if (r_s > vol1) throw std::invalid_argument("pi1_lower_bound: r_s exceeds vol1");

    const double radicand = std::max(0.0, 1.0 - (vol1 - r_s) / sigma1_sq);
    Pi1Bound b;
    b.raw = sigma1_sq / std::sqrt(vol2) * std::sqrt(radicand);
    b.value = clamp01(b.raw);
    b.variant = Pi1Variant::exact;
    b.inputs = {sigma1_sq, vol1, vol2, r_s};
    return b;
}

Pi1Bound pi1_lower_bound_linearized(double L, double vol1, double vol2, double r_max,
                                    LinearizationOrder order) {
    if (L <= 0.0) throw std::invalid_argument("pi1_lower_bound_linearized: proxy L must be positive");
    if (vol2 <= 0.0) throw std::invalid_argument("pi1_lower_bound_linearized: vol2 must be positive");
    if (vol1 < 0.0 || r_max < 0.0)
        throw std::invalid_argument("pi1_lower_bound_linearized: negative volume input");

    const double a = (vol1 - r_max) / L;
    const double poly = order == LinearizationOrder::second ? 1.0 - a / 2.0 - a * a / 2.0 : 1.0 - a;
    Pi1Bound b;
    b.raw = L / std::sqrt(vol2) * poly;
    b.value = clamp01(b.raw);
    b.variant = order == LinearizationOrder::second ? Pi1Variant::linearized_2nd
                                                    : Pi1Variant::linearized_1st;
    b.inputs = {L, vol1, vol2, r_max};
    return b;
}

Pi1Bound pi1_lower_bound_distributional(double vol1_rho, double vol2_rho, double sigma1_sq,
                                        double r_max, double actual_vol1, double actual_vol2) {
    const double tol = 1e-9 * std::max(1.0, std::max(actual_vol1, actual_vol2));
    if (vol1_rho < actual_vol1 - tol || vol2_rho < actual_vol2 - tol)
        throw InfeasibleError(
            "pi1_lower_bound_distributional: distribution volumes must dominate the graph volumes "
            "(vol1_rho = " + std::to_string(vol1_rho) + " vs " + std::to_string(actual_vol1) +
            ", vol2_rho = " + std::to_string(vol2_rho) + " vs " + std::to_string(actual_vol2) + ")");
    Pi1Bound b = pi1_lower_bound(sigma1_sq, std::max(vol1_rho, r_max), vol2_rho, r_max);
    b.variant = Pi1Variant::distributional;
    b.inputs.vol1 = vol1_rho;
    return b;
}

KumarBound kumar_bounds(const InteractionMatrix& Y) {
    const std::size_t n = Y.users(), m = Y.items();
    if (n + m < 4)
        throw std::invalid_argument("kumar_bounds: need n + m >= 4 (p >= 2)");
    const std::uint64_t e = Y.edge_count();
    if (e == 0) throw std::invalid_argument("kumar_bounds: need at least one edge");

    KumarBound kb;
    kb.p = (n + m) / 2;
    kb.even_total = (n + m) % 2 == 0;
    const double p = static_cast<double>(kb.p);
    kb.mean_deg = static_cast<double>(e) / p;

    const MotifCounts motifs = motif_counts(Y);
    const double M = static_cast<double>(motifs.trace_a4);
    const double s_sq = M / (2.0 * p) - kb.mean_deg * kb.mean_deg;
    if (s_sq < -1e-9 * std::max(1.0, M))
        throw std::invalid_argument(
            "kumar_bounds: tr(A^4)/(2p) fell below m_bar^2 (tr(A^4) = " + std::to_string(M) +
            ", p = " + std::to_string(kb.p) + ", m_bar = " + std::to_string(kb.mean_deg) + ")");
    kb.s = std::sqrt(std::max(0.0, s_sq));

    const double root = std::sqrt(p - 1.0);
    kb.lower = kb.mean_deg + kb.s / root;
    kb.upper = kb.mean_deg + kb.s * root;

    const DegreeSummary deg = degree_summary(Y);
    std::uint64_t sum_d_sq = 0;
    for (std::uint32_t d : deg.user_degrees) sum_d_sq += static_cast<std::uint64_t>(d) * d;
    for (std::uint32_t d : deg.item_degrees) sum_d_sq += static_cast<std::uint64_t>(d) * d;
    kb.decomposition.var_d =
        static_cast<double>(sum_d_sq) / (2.0 * p) - kb.mean_deg * kb.mean_deg;
    kb.decomposition.wedge_term = static_cast<double>(motifs.wedges) / p;
    kb.decomposition.butterfly_term = 4.0 * static_cast<double>(motifs.butterflies) / p;
    return kb;
}

} // namespace popalign
