#ifndef POPALIGN_IO_HPP
#define POPALIGN_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "popalign/interaction_matrix.hpp"

namespace popalign {

enum class EdgeListFormat { csv, tsv };

struct ParsedInteractions {
    InteractionMatrix matrix;
    std::vector<std::string> user_ids;  // dense index -> original id
    std::vector<std::string> item_ids;
    std::size_t duplicates_collapsed = 0;
    std::size_t binarized_entries = 0;  // MatrixMarket values outside {0, 1}
};

/// Edge list with one "user<sep>item" row per interaction. IDs are arbitrary
/// strings mapped to dense indices in first-appearance order. A first row
/// whose fields contain no digits (letters/underscores only, e.g.
/// "user_id,item_id") is treated as a header and skipped. Blank lines are
/// ignored; any other malformed row raises ParseError with its line number.
ParsedInteractions parse_edge_list(std::istream& in, EdgeListFormat format);

/// MatrixMarket coordinate format, pattern or integer field, general
/// symmetry, 1-based indices. Nonzero integer values become 1 and are
/// counted in binarized_entries when they were not already 1.
ParsedInteractions parse_matrix_market(std::istream& in);

void write_matrix_market(std::ostream& out, const InteractionMatrix& Y);
void write_edge_list(std::ostream& out, const InteractionMatrix& Y, char sep = ',');

} // namespace popalign

#endif
