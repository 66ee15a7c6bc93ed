#ifndef POPALIGN_DEGREE_HPP
#define POPALIGN_DEGREE_HPP

#include <cstdint>
#include <vector>

#include "popalign/interaction_matrix.hpp"

namespace popalign {

/// Degree and volume summary of the interaction graph. Item-side volumes
/// follow the vol_k convention: vol1 = sum of degrees (= edge count),
/// vol2 = sum of squared degrees.
struct DegreeSummary {
    std::vector<std::uint32_t> item_degrees;  // r, the popularity vector
    std::vector<std::uint32_t> user_degrees;  // d_u
    std::uint64_t vol1_items = 0;
    std::uint64_t vol2_items = 0;
    std::uint32_t r_max = 0;
    double d_bar = 0.0;          // 2e / (n + m), mean degree over both sides
    double d_tilde_items = 0.0;  // vol2 / vol1; 0 for an edgeless graph
};

DegreeSummary degree_summary(const InteractionMatrix& Y);

/// Sum of k-th powers over an arbitrary degree sequence. Only k in {0, 1, 2}
/// is exercised by the analysis, but the general form is cheap to keep.
std::uint64_t vol_k(const std::vector<std::uint32_t>& degrees, unsigned k);

} // namespace popalign

#endif
