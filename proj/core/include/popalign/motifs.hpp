#ifndef POPALIGN_MOTIFS_HPP
#define POPALIGN_MOTIFS_HPP

#include <cstdint>

#include "popalign/interaction_matrix.hpp"

namespace popalign {

/// Exact motif counts of the bipartite graph. Everything is integer
/// arithmetic, so tr(A^4) = 2e + 4W + 8c4 holds exactly.
struct MotifCounts {
    std::uint64_t wedges = 0;       // W = sum over all vertices of C(d_v, 2)
    std::uint64_t butterflies = 0;  // c4, distinct 4-cycles
    std::uint64_t trace_a4 = 0;     // trace of the 4th power of the adjacency
};

/// Open 2-paths, counted once per middle vertex and unordered endpoint pair.
std::uint64_t wedge_count(const InteractionMatrix& Y);

/// Distinct 4-cycles (all-ones 2x2 submatrices), each counted once.
/// Accumulates co-degrees over pairs on the smaller side of the bipartition.
std::uint64_t butterfly_count(const InteractionMatrix& Y);

std::uint64_t trace_a4(const InteractionMatrix& Y);

MotifCounts motif_counts(const InteractionMatrix& Y);

} // namespace popalign

#endif
