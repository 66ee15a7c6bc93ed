#ifndef POPALIGN_SYNTH_HPP
#define POPALIGN_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popalign/interaction_matrix.hpp"

namespace popalign {

enum class DistributionKind { power_law, log_normal, exponential, power_law_cutoff };

const char* to_string(DistributionKind k);

/// Parametric item-popularity law sampled in the continuous domain.
///  - power_law: density ~ x^-alpha on [x_min, inf), alpha > 1
///  - log_normal: exp(N(mu_ln, sigma_ln^2)), sigma_ln > 0
///  - exponential: x_min + Exp(rate), rate > 0
///  - power_law_cutoff: density ~ x^-alpha exp(-rate x) on [x_min, inf)
struct DistributionSpec {
    DistributionKind kind = DistributionKind::power_law;
    double alpha = 1.5;
    double mu_ln = 2.0;
    double sigma_ln = 1.0;
    double rate = 1.0;
    std::size_t m = 0;  // sample count (item count)
    double x_min = 1.0;
    std::uint64_t seed = 0;
};

/// Human-readable parameter string, e.g. "alpha=1.5" or "mu=2,sigma=1".
std::string params_to_string(const DistributionSpec& spec);

/// Parses "power_law:1.5", "log_normal:2.0:1.0", "exponential:0.7",
/// "power_law_cutoff:1.5:0.05" into a spec (m/seed left untouched).
DistributionSpec parse_distribution_token(const std::string& token);

enum class RealizationModel { chung_lu, configuration_dedup };

const char* to_string(RealizationModel m);

/// How item weights are turned into a binary bipartite graph.
///  - chung_lu: edge (u,i) independent with prob min(cap, a_u w_i / sum w),
///    user weights a rescaled so sum a = sum w; per-cell substreams make the
///    draw order (and thread count) irrelevant.
///  - configuration_dedup: round(w_i) stubs per item, each matched to a user
///    drawn with probability proportional to a_u, duplicates collapsed.
/// Empty user_weight_law means uniform users (a_u = sum w / n each).
struct RealizationSpec {
    std::size_t n_users = 0;
    RealizationModel model = RealizationModel::chung_lu;
    std::optional<DistributionSpec> user_weight_law;
    double target_density_cap = 1.0;
    std::uint64_t seed = 0;
};

/// m i.i.d. draws from the law; identical output for identical spec (the
/// per-index substream rule makes sampling order-independent).
std::vector<double> sample_item_weights(const DistributionSpec& spec);

/// Realizes a binary matrix from positive item weights. An all-zero
/// realization is retried with a derived seed up to 16 times, then throws.
InteractionMatrix realize_bipartite(const std::vector<double>& item_weights,
                                    const RealizationSpec& spec);

/// (rank, frequency) pairs with rank ascending from 1, sorted by descending
/// frequency; zero entries are excluded.
std::vector<std::pair<std::size_t, std::uint32_t>> rank_frequency(
    const std::vector<std::uint32_t>& popularity);

/// Curvature of the log-log rank-value curve: mean |second difference| of
/// smoothed log-values at log-spaced ranks (r/2, r, 2r) across the middle
/// of the rank range. Near zero for a pure power-law sample, visibly
/// positive for log-normal or cutoff tails. Needs at least 64 values.
double curvature_statistic(std::vector<double> values);

} // namespace popalign

#endif
