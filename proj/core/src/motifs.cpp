#include "popalign/motifs.hpp"

#include <unordered_map>
#include <vector>

namespace popalign {

namespace {

inline std::uint64_t choose2(std::uint64_t d) { return d * (d - 1) / 2; }

// c4 accumulated over pairs on the side with `pair_count` vertices: every
// vertex of the other side contributes C(2) pairs among its neighbours, and
// each pair's co-degree c yields C(c, 2) butterflies. The dense triangular
// buffer is used while it stays small; beyond that a hash map takes over.
std::uint64_t codegree_butterflies(std::size_t pair_count,
                                   const std::vector<std::vector<std::uint32_t>>& other_side_adj) {
    std::uint64_t total = 0;
    if (pair_count < 2) return 0;
    const std::size_t dense_limit = 8192;
    if (pair_count <= dense_limit) {
        const std::size_t t = pair_count;
        std::vector<std::uint32_t> codeg(t * (t - 1) / 2, 0);
        auto tri = [t](std::size_t a, std::size_t b) {  // a < b
            return a * (2 * t - a - 1) / 2 + (b - a - 1);
        };
        for (const auto& nbrs : other_side_adj)
            for (std::size_t x = 0; x + 1 < nbrs.size(); ++x)
                for (std::size_t y = x + 1; y < nbrs.size(); ++y)
                    ++codeg[tri(nbrs[x], nbrs[y])];
        for (std::uint32_t c : codeg) total += choose2(c);
    } else {
        std::unordered_map<std::uint64_t, std::uint32_t> codeg;
        for (const auto& nbrs : other_side_adj)
            for (std::size_t x = 0; x + 1 < nbrs.size(); ++x)
                for (std::size_t y = x + 1; y < nbrs.size(); ++y)
                    ++codeg[(static_cast<std::uint64_t>(nbrs[x]) << 32) | nbrs[y]];
        for (const auto& [key, c] : codeg) {
            (void)key;
            total += choose2(c);
        }
    }
    return total;
}

}  // namespace

std::uint64_t wedge_count(const InteractionMatrix& Y) {
    std::uint64_t w = 0;
    for (std::uint32_t d : Y.user_degrees()) w += choose2(d);
    for (std::uint32_t d : Y.item_degrees()) w += choose2(d);
    return w;
}

std::uint64_t butterfly_count(const InteractionMatrix& Y) {
    const std::size_t n = Y.users(), m = Y.items();
    if (n < 1 || m < 1) return 0;
    // pair up the smaller side; co-degrees come from the other side's lists
    std::vector<std::vector<std::uint32_t>> adj;
    std::size_t pair_count;
    if (m <= n) {
        pair_count = m;
        adj.reserve(n);
        for (std::size_t u = 0; u < n; ++u) adj.push_back(Y.items_of_user(u));
    } else {
        pair_count = n;
        adj.reserve(m);
        for (std::size_t i = 0; i < m; ++i) adj.push_back(Y.users_of_item(i));
    }
    return codegree_butterflies(pair_count, adj);
}

std::uint64_t trace_a4(const InteractionMatrix& Y) {
    return 2 * Y.edge_count() + 4 * wedge_count(Y) + 8 * butterfly_count(Y);
}

MotifCounts motif_counts(const InteractionMatrix& Y) {
    MotifCounts c;
    c.wedges = wedge_count(Y);
    c.butterflies = butterfly_count(Y);
    c.trace_a4 = 2 * Y.edge_count() + 4 * c.wedges + 8 * c.butterflies;
    return c;
}

} // namespace popalign
