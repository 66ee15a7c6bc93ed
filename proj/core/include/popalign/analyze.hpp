#ifndef POPALIGN_ANALYZE_HPP
#define POPALIGN_ANALYZE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "popalign/degree.hpp"
#include "popalign/interaction_matrix.hpp"
#include "popalign/lp_bounds.hpp"
#include "popalign/pi1_bounds.hpp"
#include "popalign/pik_bounds.hpp"
#include "popalign/synth.hpp"

namespace popalign {

inline constexpr const char* kToolVersion = "0.1.0";

enum class SubsetStrategy { top_k, explicit_set, exhaustive_small };

struct AnalyzeOptions {
    std::vector<int> k_list = {1, 2, 3};
    SubsetStrategy strategy = SubsetStrategy::top_k;
    std::vector<std::size_t> explicit_items;  // used by explicit_set
    double rank_tol = -1.0;                   // < 0: spectral default
    bool drop_zero_items = false;
    // analyze the user side instead: the matrix is transposed, so user
    // degrees play the popularity role against the same spectrum
    bool user_side = false;
    std::uint64_t seed = 0;  // provenance only
    std::string dataset_id = "dataset";
    int spectrum_count = 50;     // how many sigma^2 entries the report keeps
    double bracket_tol = 1e-9;   // lower <= cos + tol, upper >= cos - tol
};

/// One (k, S) evaluation. LP bounds are reported both on the kappa scale
/// (as computed) and on the cos scale (sqrt), so they compare directly with
/// the other bounds.
struct PerKRecord {
    int k = 0;
    std::vector<std::size_t> subset;
    std::vector<std::string> subset_ids;
    double cos_theta_exact = 0.0;
    std::optional<Pi1Bound> pi1_exact;            // k == 1 only
    std::optional<Pi1Bound> pi1_linearized_2nd;   // k == 1 only
    std::optional<Pi1Bound> pi1_linearized_1st;   // k == 1 only
    PikBoundSet pik;
    LpBoundResult lp;
    double lp_lower_cos = 0.0;
    double lp_upper_cos = 1.0;
    double best_lower = 0.0;
    double best_upper = 1.0;
    std::vector<std::string> flags;
    bool bracket_violation = false;
};

struct BoundReport {
    std::string dataset_id;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t e = 0;
    std::size_t duplicates_collapsed = 0;
    std::size_t binarized_entries = 0;
    std::size_t dropped_zero_items = 0;
    bool user_side = false;
    DegreeSummary degrees;
    std::vector<double> spectrum;  // sigma^2, nonincreasing, truncated
    int effective_rank = 0;
    int sigma1_multiplicity = 1;
    double mu_ratio = 0.0;
    std::optional<KumarBound> kumar;  // absent when n + m < 4
    std::vector<PerKRecord> per_k;
    struct Provenance {
        std::uint64_t input_hash = 0;
        std::uint64_t seed = 0;
        std::string tool_version = kToolVersion;
        double rank_tol = 0.0;
        double bracket_tol = 0.0;
    } provenance;
    bool any_violation = false;
};

/// Full pipeline on one matrix. Requires at least one edge. IDs, duplicate
/// and binarization counts from ingestion may be attached for the report.
BoundReport analyze(const InteractionMatrix& Y, const AnalyzeOptions& options,
                    const std::vector<std::string>* user_ids = nullptr,
                    const std::vector<std::string>* item_ids = nullptr,
                    std::size_t duplicates_collapsed = 0,
                    std::size_t binarized_entries = 0);

/// 64-bit FNV-1a over the canonical edge-list form of the matrix.
std::uint64_t matrix_content_hash(const InteractionMatrix& Y);

struct SweepCell {
    DistributionSpec distribution;  // m/seed filled by sweep
    std::size_t n_users = 0;
    std::size_t m_items = 0;
    RealizationModel model = RealizationModel::chung_lu;
    double density_cap = 1.0;
    std::string label;  // dataset_id of the cell
};

struct SweepOptions {
    std::vector<int> k_list = {1, 2, 3};
    std::uint64_t base_seed = 1;
    int threads = 1;
    double rank_tol = -1.0;
};

struct SweepCellResult {
    SweepCell cell;
    std::optional<BoundReport> report;
    std::string error;  // nonempty when the cell failed; other cells continue
};

/// Evaluates every cell (concurrently when threads > 1); cell seeds derive
/// from (base_seed, cell index), so results do not depend on thread count
/// and are assembled in grid order.
std::vector<SweepCellResult> sweep(const std::vector<SweepCell>& grid, const SweepOptions& options);

} // namespace popalign

#endif
