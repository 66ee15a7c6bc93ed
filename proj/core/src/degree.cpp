#include "popalign/degree.hpp"

#include <algorithm>

namespace popalign {

DegreeSummary degree_summary(const InteractionMatrix& Y) {
    DegreeSummary s;
    s.item_degrees = Y.item_degrees();
    s.user_degrees = Y.user_degrees();
    for (std::uint32_t r : s.item_degrees) {
        s.vol1_items += r;
        s.vol2_items += static_cast<std::uint64_t>(r) * r;
    }
    s.r_max = s.item_degrees.empty()
                  ? 0
                  : *std::max_element(s.item_degrees.begin(), s.item_degrees.end());
    const double total = static_cast<double>(Y.users() + Y.items());
    s.d_bar = 2.0 * static_cast<double>(s.vol1_items) / total;
    s.d_tilde_items = s.vol1_items == 0 ? 0.0
                                        : static_cast<double>(s.vol2_items) /
                                              static_cast<double>(s.vol1_items);
    return s;
}

std::uint64_t vol_k(const std::vector<std::uint32_t>& degrees, unsigned k) {
    std::uint64_t total = 0;
    for (std::uint32_t d : degrees) {
        std::uint64_t term = 1;
        for (unsigned j = 0; j < k; ++j) term *= d;
        total += term;
    }
    return total;
}

} // namespace popalign
