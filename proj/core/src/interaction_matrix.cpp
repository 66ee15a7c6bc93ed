#include "popalign/interaction_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace popalign {

InteractionMatrix::InteractionMatrix(std::size_t n_users, std::size_t n_items)
    : n_(n_users), m_(n_items), cells_(n_users * n_items, 0) {
    if (n_users == 0) throw std::invalid_argument("InteractionMatrix: need at least one user");
}

InteractionMatrix InteractionMatrix::all_ones(std::size_t n_users, std::size_t n_items) {
    if (n_items == 0) throw std::invalid_argument("all_ones: need at least one item");
    InteractionMatrix Y(n_users, n_items);
    std::fill(Y.cells_.begin(), Y.cells_.end(), std::uint8_t{1});
    return Y;
}

InteractionMatrix InteractionMatrix::from_edges(
    std::size_t n_users, std::size_t n_items,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t* duplicates) {
    InteractionMatrix Y(n_users, n_items);
    std::size_t collapsed = 0;
    for (const auto& [u, i] : edges) {
        if (u >= n_users || i >= n_items)
            throw std::out_of_range("from_edges: edge (" + std::to_string(u) + ", " +
                                    std::to_string(i) + ") outside " + std::to_string(n_users) +
                                    " x " + std::to_string(n_items));
        std::uint8_t& cell = Y.cells_[u * n_items + i];
        if (cell) ++collapsed;
        cell = 1;
    }
    if (duplicates) *duplicates = collapsed;
    return Y;
}

void InteractionMatrix::set(std::size_t u, std::size_t i, bool present) {
    if (u >= n_ || i >= m_) throw std::out_of_range("InteractionMatrix::set: index out of range");
    cells_[u * m_ + i] = present ? 1 : 0;
}

std::uint64_t InteractionMatrix::edge_count() const {
    std::uint64_t e = 0;
    for (std::uint8_t c : cells_) e += c;
    return e;
}

std::vector<std::uint32_t> InteractionMatrix::user_degrees() const {
    std::vector<std::uint32_t> d(n_, 0);
    for (std::size_t u = 0; u < n_; ++u) {
        const std::uint8_t* row = cells_.data() + u * m_;
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < m_; ++i) s += row[i];
        d[u] = s;
    }
    return d;
}

std::vector<std::uint32_t> InteractionMatrix::item_degrees() const {
    std::vector<std::uint32_t> r(m_, 0);
    for (std::size_t u = 0; u < n_; ++u) {
        const std::uint8_t* row = cells_.data() + u * m_;
        for (std::size_t i = 0; i < m_; ++i) r[i] += row[i];
    }
    return r;
}

std::vector<std::uint32_t> InteractionMatrix::items_of_user(std::size_t u) const {
    if (u >= n_) throw std::out_of_range("items_of_user: user index out of range");
    std::vector<std::uint32_t> out;
    const std::uint8_t* row = cells_.data() + u * m_;
    for (std::size_t i = 0; i < m_; ++i)
        if (row[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

std::vector<std::uint32_t> InteractionMatrix::users_of_item(std::size_t i) const {
    if (i >= m_) throw std::out_of_range("users_of_item: item index out of range");
    std::vector<std::uint32_t> out;
    for (std::size_t u = 0; u < n_; ++u)
        if (cells_[u * m_ + i]) out.push_back(static_cast<std::uint32_t>(u));
    return out;
}

Eigen::MatrixXd InteractionMatrix::to_dense() const {
    Eigen::MatrixXd Y(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(m_));
    for (std::size_t u = 0; u < n_; ++u)
        for (std::size_t i = 0; i < m_; ++i)
            Y(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(i)) = cells_[u * m_ + i];
    return Y;
}

InteractionMatrix InteractionMatrix::transposed() const {
    InteractionMatrix T(m_, n_);
    for (std::size_t u = 0; u < n_; ++u)
        for (std::size_t i = 0; i < m_; ++i)
            if (cells_[u * m_ + i]) T.set(i, u, true);
    return T;
}

InteractionMatrix remove_columns(const InteractionMatrix& Y, const std::vector<std::size_t>& items) {
    if (items.empty()) throw std::invalid_argument("remove_columns: empty item set");
    std::vector<std::size_t> sorted = items;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.back() >= Y.items())
        throw std::out_of_range("remove_columns: item index " + std::to_string(sorted.back()) +
                                " outside 0.." + std::to_string(Y.items() - 1));

    std::vector<bool> removed(Y.items(), false);
    for (std::size_t i : sorted) removed[i] = true;

    InteractionMatrix B(Y.users(), Y.items() - sorted.size());
    std::size_t col = 0;
    for (std::size_t i = 0; i < Y.items(); ++i) {
        if (removed[i]) continue;
        for (std::size_t u = 0; u < Y.users(); ++u)
            if (Y.at(u, i)) B.set(u, col, true);
        ++col;
    }
    return B;
}

} // namespace popalign
