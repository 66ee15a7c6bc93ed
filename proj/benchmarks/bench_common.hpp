#ifndef POPALIGN_BENCH_COMMON_HPP
#define POPALIGN_BENCH_COMMON_HPP

#include "popalign/interaction_matrix.hpp"
#include "popalign/rng.hpp"

namespace popalign::bench {

inline InteractionMatrix random_matrix(std::uint64_t seed, std::size_t n, std::size_t m,
                                       double density) {
    InteractionMatrix Y(n, m);
    SplitMix64 stream(seed);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t i = 0; i < m; ++i)
            if (stream.next_double() < density) Y.set(u, i, true);
    if (Y.edge_count() == 0) Y.set(0, 0, true);
    return Y;
}

} // namespace popalign::bench

#endif
