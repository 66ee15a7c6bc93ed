#include "popalign/analyze.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "popalign/errors.hpp"
#include "popalign/rng.hpp"
#include "popalign/spectral.hpp"

namespace popalign {

namespace {

// All size-j item subsets, evaluated for the best Ky Fan lower bound (B1).
// Only offered at small m; the combinatorial budget is C(15, 3) at most.
std::vector<std::size_t> best_subset_exhaustive(const InteractionMatrix& Y,
                                                const SpectralDecomposition& D, int k,
                                                std::size_t* searched) {
    const std::size_t m = Y.items();
    if (m > 15)
        throw std::invalid_argument("exhaustive subset search is limited to m <= 15 items (got " +
                                    std::to_string(m) + ")");
    std::vector<std::size_t> current(static_cast<std::size_t>(k));
    std::vector<std::size_t> best;
    double best_value = -1.0;
    std::size_t count = 0;

    auto recurse = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
        if (pos == current.size()) {
            ++count;
            const double value = bound_family_lower(Y, D, current, k, LowerBoundKind::B1);
            if (value > best_value) {
                best_value = value;
                best = current;
            }
            return;
        }
        for (std::size_t i = from; i < m; ++i) {
            current[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    recurse(recurse, 0, 0);
    if (searched) *searched = count;
    return best;
}

InteractionMatrix drop_zero_columns(const InteractionMatrix& Y,
                                    std::vector<std::string>* item_ids, std::size_t* dropped) {
    const std::vector<std::uint32_t> r = Y.item_degrees();
    std::vector<std::size_t> zero;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] == 0) zero.push_back(i);
    if (dropped) *dropped = zero.size();
    if (zero.empty()) return Y;
    if (zero.size() == r.size())
        throw std::invalid_argument("drop_zero_items would remove every item");
    if (item_ids && !item_ids->empty()) {
        std::vector<std::string> kept;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] > 0) kept.push_back((*item_ids)[i]);
        *item_ids = std::move(kept);
    }
    return remove_columns(Y, zero);
}

double sqrt_clamped(double kappa) { return std::sqrt(std::clamp(kappa, 0.0, 1.0)); }

}  // namespace

std::uint64_t matrix_content_hash(const InteractionMatrix& Y) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(Y.users());
    mix(Y.items());
    for (std::size_t u = 0; u < Y.users(); ++u)
        for (std::size_t i = 0; i < Y.items(); ++i)
            if (Y.at(u, i)) {
                mix(u);
                mix(i);
            }
    return h;
}

BoundReport analyze(const InteractionMatrix& Y_in, const AnalyzeOptions& options,
                    const std::vector<std::string>* user_ids,
                    const std::vector<std::string>* item_ids, std::size_t duplicates_collapsed,
                    std::size_t binarized_entries) {
    BoundReport report;
    report.dataset_id = options.dataset_id;
    report.duplicates_collapsed = duplicates_collapsed;
    report.binarized_entries = binarized_entries;
    report.user_side = options.user_side;

    // the user-side variant runs the identical pipeline on Y'; from here on
    // "items" means whichever side carries the popularity vector
    std::vector<std::string> items_kept;
    if (const auto* ids = options.user_side ? user_ids : item_ids) items_kept = *ids;
    const InteractionMatrix oriented = options.user_side ? Y_in.transposed() : Y_in;
    InteractionMatrix Y = options.drop_zero_items
                              ? drop_zero_columns(oriented, &items_kept, &report.dropped_zero_items)
                              : oriented;

    report.n = Y.users();
    report.m = Y.items();
    report.degrees = degree_summary(Y);
    report.e = report.degrees.vol1_items;
    if (report.e == 0) throw std::invalid_argument("analyze: the graph has no edges");

    const SpectralDecomposition D = svd(Y, options.rank_tol);
    const AlignmentProfile profile = alignment_profile(Y, D);
    report.effective_rank = D.effective_rank;
    report.sigma1_multiplicity = D.sigma1_multiplicity();
    report.mu_ratio = profile.mu_ratio;

    const std::vector<double> sigma_sq = D.sigma_squared();
    const std::size_t keep = std::min<std::size_t>(
        sigma_sq.size(), options.spectrum_count < 0 ? sigma_sq.size()
                                                    : static_cast<std::size_t>(options.spectrum_count));
    report.spectrum.assign(sigma_sq.begin(), sigma_sq.begin() + static_cast<std::ptrdiff_t>(keep));

    try {
        report.kumar = kumar_bounds(Y);
    } catch (const std::invalid_argument&) {
        report.kumar.reset();  // n + m < 4; flagged per record below
    }

    // k grid: sorted, deduplicated, trimmed to the effective rank
    std::vector<int> ks = options.k_list;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    bool trimmed = false;
    std::vector<int> usable;
    for (int k : ks) {
        if (k < 1) throw std::invalid_argument("analyze: k values must be positive");
        if (k > D.effective_rank) {
            trimmed = true;
            continue;
        }
        usable.push_back(k);
    }

    const std::vector<double> lp_spectrum = D.sigma_squared_padded(report.n);

    for (int k : usable) {
        PerKRecord rec;
        rec.k = k;
        if (trimmed) rec.flags.push_back("k_trimmed_to_rank");
        if (report.sigma1_multiplicity > 1) rec.flags.push_back("sigma1_degenerate");
        if (!report.kumar) rec.flags.push_back("kumar_unavailable");

        switch (options.strategy) {
            case SubsetStrategy::top_k:
                rec.subset = top_k_items(report.degrees.item_degrees, static_cast<std::size_t>(k));
                break;
            case SubsetStrategy::explicit_set:
                if (options.explicit_items.empty())
                    throw std::invalid_argument("analyze: explicit strategy needs a subset");
                rec.subset = options.explicit_items;
                std::sort(rec.subset.begin(), rec.subset.end());
                break;
            case SubsetStrategy::exhaustive_small: {
                std::size_t searched = 0;
                rec.subset = best_subset_exhaustive(Y, D, k, &searched);
                rec.flags.push_back("exhaustive_searched_" + std::to_string(searched));
                break;
            }
        }
        if (!items_kept.empty())
            for (std::size_t idx : rec.subset) rec.subset_ids.push_back(items_kept[idx]);

        const SubsetContext ctx = make_subset_context(Y, D, rec.subset, k);
        rec.pik = evaluate_pik_bounds(ctx);
        rec.cos_theta_exact = profile.cos_theta[static_cast<std::size_t>(k - 1)];
        if (rec.pik.c2_vacuous) rec.flags.push_back("c2_vacuous");
        if (rec.subset.size() != static_cast<std::size_t>(k))
            rec.flags.push_back("subset_size_differs_from_k");

        rec.lp = lp_bounds(lp_spectrum, profile.mu_ratio, k);
        if (rec.lp.degenerate_spectrum) rec.flags.push_back("degenerate_spectrum_convention");
        rec.lp_lower_cos = sqrt_clamped(rec.lp.kappa_lower);
        rec.lp_upper_cos = sqrt_clamped(rec.lp.kappa_upper);

        if (k == 1) {
            const double sigma1_sq = sigma_sq[0];
            const double vol1 = static_cast<double>(report.degrees.vol1_items);
            const double vol2 = static_cast<double>(report.degrees.vol2_items);
            const double r_max = static_cast<double>(report.degrees.r_max);
            rec.pi1_exact = pi1_lower_bound(sigma1_sq, vol1, vol2, r_max);
            double proxy = sigma1_sq;
            if (report.kumar) {
                proxy = report.kumar->lower;
            } else {
                rec.flags.push_back("pi1_proxy_is_sigma1_sq");
            }
            rec.pi1_linearized_2nd = pi1_lower_bound_linearized(proxy, vol1, vol2, r_max,
                                                                LinearizationOrder::second);
            rec.pi1_linearized_1st = pi1_lower_bound_linearized(proxy, vol1, vol2, r_max,
                                                                LinearizationOrder::first);
        }

        rec.best_lower = std::max({rec.pik.a1, rec.pik.b1, rec.pik.b3_from_b1,
                                   rec.pik.a2.value_or(0.0), rec.pik.b2.value_or(0.0),
                                   rec.pik.b3_from_b2.value_or(0.0), rec.lp_lower_cos,
                                   rec.pi1_exact ? rec.pi1_exact->value : 0.0});
        rec.best_upper = std::min({rec.pik.c1, rec.pik.c2, rec.pik.c3, rec.lp_upper_cos, 1.0});

        rec.bracket_violation = rec.best_lower > rec.cos_theta_exact + options.bracket_tol ||
                                rec.best_upper < rec.cos_theta_exact - options.bracket_tol;
        if (rec.bracket_violation) {
            rec.flags.push_back("bracket_violation");
            report.any_violation = true;
        }
        report.per_k.push_back(std::move(rec));
    }

    report.provenance.input_hash = matrix_content_hash(Y);
    report.provenance.seed = options.seed;
    report.provenance.tool_version = kToolVersion;
    report.provenance.rank_tol = D.rank_tol;
    report.provenance.bracket_tol = options.bracket_tol;
    return report;
}

std::vector<SweepCellResult> sweep(const std::vector<SweepCell>& grid, const SweepOptions& options) {
    std::vector<SweepCellResult> results(grid.size());
    if (grid.empty()) return results;

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= grid.size()) return;
            SweepCellResult& out = results[idx];
            out.cell = grid[idx];
            try {
                DistributionSpec dist = grid[idx].distribution;
                dist.m = grid[idx].m_items;
                dist.seed = substream_seed(options.base_seed, 2, idx);

                RealizationSpec realize;
                realize.n_users = grid[idx].n_users;
                realize.model = grid[idx].model;
                realize.target_density_cap = grid[idx].density_cap;
                realize.seed = substream_seed(options.base_seed, 3, idx);

                const std::vector<double> weights = sample_item_weights(dist);
                const InteractionMatrix Y = realize_bipartite(weights, realize);

                AnalyzeOptions opts;
                opts.k_list = options.k_list;
                opts.rank_tol = options.rank_tol;
                opts.seed = dist.seed;
                opts.dataset_id = grid[idx].label.empty()
                                      ? std::string(to_string(dist.kind)) + "_cell" +
                                            std::to_string(idx)
                                      : grid[idx].label;
                out.report = analyze(Y, opts);
            } catch (const std::exception& ex) {
                out.report.reset();
                out.error = ex.what();
            }
        }
    };

    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return results;
}

} // namespace popalign
