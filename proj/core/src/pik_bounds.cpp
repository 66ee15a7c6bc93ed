#include "popalign/pik_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "popalign/errors.hpp"

namespace popalign {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::vector<std::size_t> sorted_unique(const std::vector<std::size_t>& items) {
    std::vector<std::size_t> s = items;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("subset contains duplicate item indices");
    return s;
}

// Count of structural zero eigenvalues the n x n Gram form B_S B_S' has on
// top of the shared nonzero block.
std::size_t gram_zero_padding(const SubsetContext& ctx) {
    return ctx.n - ctx.bs_gram_eigs.size();
}

double normalized_lower(const QuadraticBracket& bracket, double vol2) {
    return clamp01(std::sqrt(std::max(0.0, bracket.lower) / vol2));
}

double normalized_upper(double coef, const SubsetContext& ctx) {
    const double rS = std::sqrt(ctx.r_S_norm_sq);
    const double rSc = std::sqrt(ctx.r_Sc_norm_sq);
    const double quad = coef * ctx.r_S_norm_sq + 2.0 * rS * rSc + ctx.r_Sc_norm_sq;
    return clamp01(std::sqrt(std::max(0.0, quad) / ctx.vol2));
}

void require_subset_size_k(const SubsetContext& ctx, const char* name) {
    if (ctx.items.size() != static_cast<std::size_t>(ctx.k))
        throw std::invalid_argument(std::string(name) + " requires |S| == k (got |S| = " +
                                    std::to_string(ctx.items.size()) + ", k = " +
                                    std::to_string(ctx.k) + ")");
}

// L_tau for the interlacing variants: eig(B_S'B_S) replaced by sigma_j^2.
double tau_lower_interlaced(const SubsetContext& ctx) {
    double head = 0.0;
    for (int j = 0; j < ctx.k; ++j) head += ctx.sigma_sq[static_cast<std::size_t>(j)];
    return ctx.k - head / ctx.sigma_sq[static_cast<std::size_t>(ctx.k - 1)];
}

}  // namespace

SubsetContext make_subset_context(const InteractionMatrix& Y, const SpectralDecomposition& D,
                                  const std::vector<std::size_t>& items, int k) {
    if (items.empty()) throw std::invalid_argument("make_subset_context: empty item subset");
    if (k < 1) throw std::invalid_argument("make_subset_context: k must be at least 1");
    if (k > D.effective_rank)
        throw std::invalid_argument("make_subset_context: k = " + std::to_string(k) +
                                    " exceeds effective rank " + std::to_string(D.effective_rank));

    SubsetContext ctx;
    ctx.items = sorted_unique(items);
    if (ctx.items.back() >= Y.items())
        throw std::out_of_range("make_subset_context: item index out of range");
    ctx.k = k;
    ctx.n = Y.users();
    ctx.m = Y.items();

    const std::vector<std::uint32_t> r = Y.item_degrees();
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double ri = static_cast<double>(r[i]);
        ctx.vol1 += ri;
        ctx.vol2 += ri * ri;
    }
    for (std::size_t s : ctx.items) {
        const double rs = static_cast<double>(r[s]);
        ctx.r_S_sum += rs;
        ctx.r_S_norm_sq += rs * rs;
    }
    ctx.r_Sc_norm_sq = std::max(0.0, ctx.vol2 - ctx.r_S_norm_sq);
    ctx.delta_S = ctx.vol1 - ctx.r_S_sum;

    ctx.sigma_sq = D.sigma_squared();
    for (int j = 0; j < k; ++j) ctx.H_k += 1.0 / ctx.sigma_sq[static_cast<std::size_t>(j)];

    // spectrum of the column-deleted Gram matrix, via the smaller form
    if (ctx.items.size() < ctx.m) {
        const InteractionMatrix B = remove_columns(Y, ctx.items);
        const Eigen::MatrixXd Bd = B.to_dense();
        const Eigen::MatrixXd gram = Bd.cols() <= Bd.rows()
                                         ? Eigen::MatrixXd(Bd.transpose() * Bd)
                                         : Eigen::MatrixXd(Bd * Bd.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
        if (eig.info() != Eigen::Success)
            throw ConvergenceError("make_subset_context: Gram eigendecomposition failed");
        const Eigen::VectorXd vals = eig.eigenvalues();  // ascending
        ctx.bs_gram_eigs.resize(static_cast<std::size_t>(vals.size()));
        for (Eigen::Index i = 0; i < vals.size(); ++i)
            ctx.bs_gram_eigs[static_cast<std::size_t>(vals.size() - 1 - i)] =
                std::max(0.0, vals[i]);
    }

    // exact reference values
    const Eigen::MatrixXd Qk = D.right_vectors.leftCols(k);
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(ctx.items.size()), k);
    for (std::size_t i = 0; i < ctx.items.size(); ++i)
        rows.row(static_cast<Eigen::Index>(i)) = Qk.row(static_cast<Eigen::Index>(ctx.items[i]));
    ctx.tau_exact = rows.squaredNorm();
    Eigen::JacobiSVD<Eigen::MatrixXd> rows_svd(rows);
    const double top = rows_svd.singularValues().size() > 0 ? rows_svd.singularValues()[0] : 0.0;
    ctx.lambda1_MS = top * top;

    Eigen::VectorXd rvec(static_cast<Eigen::Index>(ctx.m));
    for (std::size_t i = 0; i < ctx.m; ++i)
        rvec[static_cast<Eigen::Index>(i)] = static_cast<double>(r[i]);
    ctx.r_proj_sq = (Qk.transpose() * rvec).squaredNorm();
    ctx.cos_theta_exact = ctx.vol2 > 0.0 ? std::min(1.0, std::sqrt(ctx.r_proj_sq / ctx.vol2)) : 0.0;
    return ctx;
}

double tau_lower_deficit(const SubsetContext& ctx) {
    return ctx.k - ctx.delta_S * ctx.H_k;
}

TauBracket tau_bounds_kyfan(const SubsetContext& ctx) {
    const double sigma1_sq = ctx.sigma_sq[0];
    const double sigmak_sq = ctx.sigma_sq[static_cast<std::size_t>(ctx.k - 1)];

    const std::size_t k = static_cast<std::size_t>(ctx.k);
    double sum_largest = 0.0;
    for (std::size_t j = 0; j < std::min(k, ctx.bs_gram_eigs.size()); ++j)
        sum_largest += ctx.bs_gram_eigs[j];

    const std::size_t zeros = gram_zero_padding(ctx);
    double sum_smallest = 0.0;
    if (k > zeros) {
        const std::size_t take = k - zeros;  // smallest entries of the nonzero block
        for (std::size_t j = 0; j < std::min(take, ctx.bs_gram_eigs.size()); ++j)
            sum_smallest += ctx.bs_gram_eigs[ctx.bs_gram_eigs.size() - 1 - j];
    }

    TauBracket bracket;
    bracket.lower = ctx.k - sum_largest / sigmak_sq;
    bracket.upper = ctx.k - sum_smallest / sigma1_sq;
    return bracket;
}

QuadraticBracket projector_quadratic_bracket(double L_tau, double U_tau, const SubsetContext& ctx) {
    if (L_tau > U_tau + 1e-12)
        throw std::invalid_argument("projector_quadratic_bracket: L_tau exceeds U_tau");
    const double rS = std::sqrt(ctx.r_S_norm_sq);
    const double rSc = std::sqrt(ctx.r_Sc_norm_sq);
    const double size_minus_1 = static_cast<double>(ctx.items.size()) - 1.0;

    QuadraticBracket bracket;
    const double inner = std::max(0.0, L_tau - size_minus_1);
    bracket.lower = std::max(0.0, inner * ctx.r_S_norm_sq - 2.0 * rS * rSc);
    bracket.upper = std::min(1.0, U_tau) * ctx.r_S_norm_sq + 2.0 * rS * rSc + ctx.r_Sc_norm_sq;
    return bracket;
}

double bound_family_lower(const SubsetContext& ctx, LowerBoundKind which) {
    double L_tau = 0.0;
    switch (which) {
        case LowerBoundKind::A2:
            require_subset_size_k(ctx, "A2");
            [[fallthrough]];
        case LowerBoundKind::A1:
            L_tau = tau_lower_deficit(ctx);
            break;
        case LowerBoundKind::B2:
            require_subset_size_k(ctx, "B2");
            [[fallthrough]];
        case LowerBoundKind::B1:
            L_tau = tau_bounds_kyfan(ctx).lower;
            break;
        case LowerBoundKind::B3_from_B2:
            require_subset_size_k(ctx, "B3_from_B2");
            [[fallthrough]];
        case LowerBoundKind::B3_from_B1:
            L_tau = tau_lower_interlaced(ctx);
            break;
    }
    // only the lower side of the bracket is consumed; pass a safe upper
    const QuadraticBracket bracket =
        projector_quadratic_bracket(L_tau, std::max(L_tau, static_cast<double>(ctx.k)), ctx);
    return normalized_lower(bracket, ctx.vol2);
}

double bound_family_upper(const SubsetContext& ctx, UpperBoundKind which) {
    const TauBracket kyfan = tau_bounds_kyfan(ctx);
    double coef = 1.0;
    switch (which) {
        case UpperBoundKind::C1:
            coef = std::min({ctx.lambda1_MS, 1.0, kyfan.upper});
            break;
        case UpperBoundKind::C2:
            coef = std::min(1.0, kyfan.upper);
            break;
        case UpperBoundKind::C3: {
            // interlacing relaxation: the j-th smallest Gram eigenvalue is at
            // least sigma^2_{j+|S|} (padded), terms beyond n dropping to zero
            const std::size_t size = ctx.items.size();
            const std::size_t k = static_cast<std::size_t>(ctx.k);
            double sum = 0.0;
            if (size < k) {
                const std::size_t survivors = k - size;  // indices n-k+1+|S| .. n
                std::vector<double> padded = ctx.sigma_sq;
                padded.resize(ctx.n, 0.0);
                for (std::size_t j = 0; j < survivors; ++j) sum += padded[ctx.n - 1 - j];
            }
            coef = std::min(1.0, ctx.k - sum / ctx.sigma_sq[0]);
            break;
        }
    }
    return normalized_upper(coef, ctx);
}

double bound_family_lower(const InteractionMatrix& Y, const SpectralDecomposition& D,
                          const std::vector<std::size_t>& items, int k, LowerBoundKind which) {
    return bound_family_lower(make_subset_context(Y, D, items, k), which);
}

double bound_family_upper(const InteractionMatrix& Y, const SpectralDecomposition& D,
                          const std::vector<std::size_t>& items, int k, UpperBoundKind which) {
    return bound_family_upper(make_subset_context(Y, D, items, k), which);
}

PikBoundSet evaluate_pik_bounds(const SubsetContext& ctx) {
    PikBoundSet set;
    const bool square = ctx.items.size() == static_cast<std::size_t>(ctx.k);

    set.a1 = bound_family_lower(ctx, LowerBoundKind::A1);
    set.b1 = bound_family_lower(ctx, LowerBoundKind::B1);
    set.b3_from_b1 = bound_family_lower(ctx, LowerBoundKind::B3_from_B1);
    if (square) {
        set.a2 = bound_family_lower(ctx, LowerBoundKind::A2);
        set.b2 = bound_family_lower(ctx, LowerBoundKind::B2);
        set.b3_from_b2 = bound_family_lower(ctx, LowerBoundKind::B3_from_B2);
    }
    set.c1 = bound_family_upper(ctx, UpperBoundKind::C1);
    set.c2 = bound_family_upper(ctx, UpperBoundKind::C2);
    set.c3 = bound_family_upper(ctx, UpperBoundKind::C3);

    const TauBracket kyfan = tau_bounds_kyfan(ctx);
    set.tau_lower_deficit = tau_lower_deficit(ctx);
    set.tau_lower_kyfan = kyfan.lower;
    set.tau_upper_kyfan = kyfan.upper;
    set.c2_vacuous = gram_zero_padding(ctx) >= static_cast<std::size_t>(ctx.k);

    set.witnesses.tau_exact = ctx.tau_exact;
    set.witnesses.lambda1_MS = ctx.lambda1_MS;
    set.witnesses.cos_theta_exact = ctx.cos_theta_exact;
    set.witnesses.r_S_norm = std::sqrt(ctx.r_S_norm_sq);
    set.witnesses.r_Sc_norm = std::sqrt(ctx.r_Sc_norm_sq);
    set.witnesses.delta_S = ctx.delta_S;
    set.witnesses.H_k = ctx.H_k;
    return set;
}

PikBoundSet evaluate_pik_bounds(const InteractionMatrix& Y, const SpectralDecomposition& D,
                                const std::vector<std::size_t>& items, int k) {
    return evaluate_pik_bounds(make_subset_context(Y, D, items, k));
}

std::vector<std::size_t> top_k_items(const std::vector<std::uint32_t>& popularity, std::size_t j) {
    if (j < 1 || j > popularity.size())
        throw std::out_of_range("top_k_items: j = " + std::to_string(j) + " outside 1.." +
                                std::to_string(popularity.size()));
    std::vector<std::size_t> order(popularity.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return popularity[a] > popularity[b];  // stable: ties keep the lower index first
    });
    order.resize(j);
    std::sort(order.begin(), order.end());
    return order;
}

Eigen::MatrixXd projector_principal_submatrix(const SpectralDecomposition& D,
                                              const std::vector<std::size_t>& items, int k) {
    if (k < 1 || k > D.effective_rank)
        throw std::invalid_argument("projector_principal_submatrix: k outside 1..effective_rank");
    const std::vector<std::size_t> s = sorted_unique(items);
    if (s.empty() || s.back() >= static_cast<std::size_t>(D.right_vectors.rows()))
        throw std::out_of_range("projector_principal_submatrix: invalid item subset");
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(s.size()), k);
    for (std::size_t i = 0; i < s.size(); ++i)
        rows.row(static_cast<Eigen::Index>(i)) =
            D.right_vectors.row(static_cast<Eigen::Index>(s[i])).head(k);
    return rows * rows.transpose();
}

double exact_tau(const SpectralDecomposition& D, const std::vector<std::size_t>& items, int k) {
    return projector_principal_submatrix(D, items, k).trace();
}

double exact_projector_quadratic(const SpectralDecomposition& D, const Eigen::VectorXd& r, int k) {
    if (k < 0 || k > D.effective_rank)
        throw std::invalid_argument("exact_projector_quadratic: k outside 0..effective_rank");
    if (k == 0) return 0.0;
    return (D.right_vectors.leftCols(k).transpose() * r).squaredNorm();
}

} // namespace popalign
