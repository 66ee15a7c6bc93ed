#ifndef POPALIGN_INTERACTION_MATRIX_HPP
#define POPALIGN_INTERACTION_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace popalign {

/// Binary biadjacency matrix of a bipartite user-item graph. Rows are users,
/// columns are items, entries are 0/1. Duplicate edges collapse to 1.
///
/// Column deletion may produce an n x 0 matrix (empty spectrum); everything
/// else requires at least one user and one item.
class InteractionMatrix {
public:
    InteractionMatrix(std::size_t n_users, std::size_t n_items);

    static InteractionMatrix all_ones(std::size_t n_users, std::size_t n_items);

    /// Builds from (user, item) index pairs. Out-of-range indices throw
    /// std::out_of_range. Duplicate pairs collapse; the collapse count is
    /// written to *duplicates when provided.
    static InteractionMatrix from_edges(std::size_t n_users, std::size_t n_items,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                        std::size_t* duplicates = nullptr);

    std::size_t users() const noexcept { return n_; }
    std::size_t items() const noexcept { return m_; }

    bool at(std::size_t u, std::size_t i) const { return cells_[u * m_ + i] != 0; }
    void set(std::size_t u, std::size_t i, bool present);

    std::uint64_t edge_count() const;

    std::vector<std::uint32_t> user_degrees() const;  // d_u, length n
    std::vector<std::uint32_t> item_degrees() const;  // r_i, length m

    /// Item indices adjacent to user u, ascending.
    std::vector<std::uint32_t> items_of_user(std::size_t u) const;
    /// User indices adjacent to item i, ascending.
    std::vector<std::uint32_t> users_of_item(std::size_t i) const;

    Eigen::MatrixXd to_dense() const;

    /// Swaps the two sides (users become items); spectrum is unchanged.
    InteractionMatrix transposed() const;

    bool operator==(const InteractionMatrix& other) const = default;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::uint8_t> cells_;  // row-major n*m
};

/// Y with the given item columns removed; the order of the remaining columns
/// is preserved. `items` must be nonempty with indices below Y.items();
/// removing every column yields an n x 0 matrix.
InteractionMatrix remove_columns(const InteractionMatrix& Y, const std::vector<std::size_t>& items);

} // namespace popalign

#endif
