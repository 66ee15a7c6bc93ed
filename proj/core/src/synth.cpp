#include "popalign/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "popalign/errors.hpp"
#include "popalign/rng.hpp"

namespace popalign {

namespace {

// substream tags
constexpr std::uint64_t kTagItemWeight = 1;
constexpr std::uint64_t kTagUserWeight = 2;
constexpr std::uint64_t kTagRealizeAttempt = 3;
constexpr std::uint64_t kTagCell = 4;
constexpr std::uint64_t kTagStub = 5;

void validate_spec(const DistributionSpec& spec) {
    if (spec.m == 0) throw std::invalid_argument("sample_item_weights: m must be positive");
    if (spec.x_min <= 0.0) throw std::invalid_argument("sample_item_weights: x_min must be positive");
    switch (spec.kind) {
        case DistributionKind::power_law:
            if (spec.alpha <= 1.0)
                throw std::invalid_argument("power_law: alpha must exceed 1 for a normalizable tail");
            break;
        case DistributionKind::log_normal:
            if (spec.sigma_ln <= 0.0) throw std::invalid_argument("log_normal: sigma must be positive");
            break;
        case DistributionKind::exponential:
            if (spec.rate <= 0.0) throw std::invalid_argument("exponential: rate must be positive");
            break;
        case DistributionKind::power_law_cutoff:
            if (spec.alpha <= 1.0)
                throw std::invalid_argument("power_law_cutoff: alpha must exceed 1");
            if (spec.rate <= 0.0) throw std::invalid_argument("power_law_cutoff: rate must be positive");
            break;
    }
}

double standard_normal(SplitMix64& stream) {
    // Box-Muller; explicit formula keeps the draw portable across platforms
    const double u1 = stream.next_double_open0();
    const double u2 = stream.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double draw_power_law(SplitMix64& stream, double x_min, double alpha) {
    // inverse CDF of the Pareto density ~ x^-alpha on [x_min, inf)
    return x_min * std::pow(stream.next_double_open0(), -1.0 / (alpha - 1.0));
}

double draw_weight(const DistributionSpec& spec, SplitMix64& stream) {
    switch (spec.kind) {
        case DistributionKind::power_law:
            return draw_power_law(stream, spec.x_min, spec.alpha);
        case DistributionKind::log_normal:
            return std::exp(spec.mu_ln + spec.sigma_ln * standard_normal(stream));
        case DistributionKind::exponential:
            return spec.x_min - std::log(stream.next_double_open0()) / spec.rate;
        case DistributionKind::power_law_cutoff: {
            // rejection from the pure power law with acceptance exp(-rate (x - x_min))
            for (int attempt = 0; attempt < 100000; ++attempt) {
                const double x = draw_power_law(stream, spec.x_min, spec.alpha);
                if (stream.next_double() < std::exp(-spec.rate * (x - spec.x_min))) return x;
            }
            throw ConvergenceError("power_law_cutoff: rejection sampler exhausted its attempt budget");
        }
    }
    throw std::logic_error("draw_weight: unknown distribution kind");
}

std::vector<double> sample_weights(const DistributionSpec& spec, std::uint64_t tag) {
    validate_spec(spec);
    std::vector<double> w(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) {
        SplitMix64 stream(substream_seed(spec.seed, tag, i));
        w[i] = draw_weight(spec, stream);
    }
    return w;
}

// weighted index draw by inverse-CDF over the cumulative sums
std::size_t draw_index(const std::vector<double>& cumulative, double total, SplitMix64& stream) {
    const double x = stream.next_double() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

}  // namespace

const char* to_string(DistributionKind k) {
    switch (k) {
        case DistributionKind::power_law: return "power_law";
        case DistributionKind::log_normal: return "log_normal";
        case DistributionKind::exponential: return "exponential";
        case DistributionKind::power_law_cutoff: return "power_law_cutoff";
    }
    return "unknown";
}

const char* to_string(RealizationModel m) {
    return m == RealizationModel::chung_lu ? "chung_lu" : "configuration_dedup";
}

std::string params_to_string(const DistributionSpec& spec) {
    auto fmt = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    switch (spec.kind) {
        case DistributionKind::power_law: return "alpha=" + fmt(spec.alpha);
        case DistributionKind::log_normal:
            return "mu=" + fmt(spec.mu_ln) + ",sigma=" + fmt(spec.sigma_ln);
        case DistributionKind::exponential: return "rate=" + fmt(spec.rate);
        case DistributionKind::power_law_cutoff:
            return "alpha=" + fmt(spec.alpha) + ",rate=" + fmt(spec.rate);
    }
    return "";
}

DistributionSpec parse_distribution_token(const std::string& token) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= token.size()) {
        const std::size_t colon = token.find(':', start);
        if (colon == std::string::npos) {
            parts.push_back(token.substr(start));
            break;
        }
        parts.push_back(token.substr(start, colon - start));
        start = colon + 1;
    }
    if (parts.empty()) throw std::invalid_argument("empty distribution token");

    auto num = [&](std::size_t idx, const char* what) {
        if (idx >= parts.size())
            throw std::invalid_argument("distribution token '" + token + "' is missing " + what);
        try {
            return std::stod(parts[idx]);
        } catch (const std::exception&) {
            throw std::invalid_argument("distribution token '" + token + "': bad number for " + what);
        }
    };

    DistributionSpec spec;
    if (parts[0] == "power_law") {
        spec.kind = DistributionKind::power_law;
        spec.alpha = num(1, "alpha");
    } else if (parts[0] == "log_normal") {
        spec.kind = DistributionKind::log_normal;
        spec.mu_ln = num(1, "mu");
        spec.sigma_ln = num(2, "sigma");
    } else if (parts[0] == "exponential") {
        spec.kind = DistributionKind::exponential;
        spec.rate = num(1, "rate");
    } else if (parts[0] == "power_law_cutoff") {
        spec.kind = DistributionKind::power_law_cutoff;
        spec.alpha = num(1, "alpha");
        spec.rate = num(2, "rate");
    } else {
        throw std::invalid_argument("unknown distribution '" + parts[0] + "'");
    }
    return spec;
}

std::vector<double> sample_item_weights(const DistributionSpec& spec) {
    return sample_weights(spec, kTagItemWeight);
}

InteractionMatrix realize_bipartite(const std::vector<double>& item_weights,
                                    const RealizationSpec& spec) {
    if (item_weights.empty()) throw std::invalid_argument("realize_bipartite: no item weights");
    for (double w : item_weights)
        if (!(w > 0.0)) throw std::invalid_argument("realize_bipartite: weights must be positive");
    if (spec.n_users == 0) throw std::invalid_argument("realize_bipartite: need at least one user");
    if (!(spec.target_density_cap > 0.0) || spec.target_density_cap > 1.0)
        throw std::invalid_argument("realize_bipartite: density cap must lie in (0, 1]");

    const std::size_t n = spec.n_users, m = item_weights.size();
    const double item_total = std::accumulate(item_weights.begin(), item_weights.end(), 0.0);

    // user weights, rescaled so both sides carry the same total mass
    std::vector<double> user_weights(n, item_total / static_cast<double>(n));
    if (spec.user_weight_law) {
        DistributionSpec law = *spec.user_weight_law;
        law.m = n;
        user_weights = sample_weights(law, kTagUserWeight);
        const double user_total = std::accumulate(user_weights.begin(), user_weights.end(), 0.0);
        for (double& a : user_weights) a *= item_total / user_total;
    }

    for (int attempt = 0; attempt < 16; ++attempt) {
        const std::uint64_t attempt_seed = substream_seed(spec.seed, kTagRealizeAttempt, attempt);
        InteractionMatrix Y(n, m);

        if (spec.model == RealizationModel::chung_lu) {
            for (std::size_t u = 0; u < n; ++u) {
                for (std::size_t i = 0; i < m; ++i) {
                    const double p = std::min(spec.target_density_cap,
                                              user_weights[u] * item_weights[i] / item_total);
                    SplitMix64 cell(substream_seed(attempt_seed, kTagCell, u * m + i));
                    if (cell.next_double() < p) Y.set(u, i, true);
                }
            }
        } else {
            std::vector<double> user_cum(n);
            double acc = 0.0;
            for (std::size_t u = 0; u < n; ++u) {
                acc += user_weights[u];
                user_cum[u] = acc;
            }
            std::size_t stub = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const auto stubs = static_cast<std::uint64_t>(std::llround(item_weights[i]));
                for (std::uint64_t c = 0; c < stubs; ++c, ++stub) {
                    SplitMix64 stream(substream_seed(attempt_seed, kTagStub, stub));
                    const std::size_t u = draw_index(user_cum, acc, stream);
                    Y.set(u, i, true);  // duplicate stubs collapse here
                }
            }
        }

        if (Y.edge_count() > 0) return Y;
    }
    throw std::runtime_error("realize_bipartite: all-zero realization after 16 attempts");
}

std::vector<std::pair<std::size_t, std::uint32_t>> rank_frequency(
    const std::vector<std::uint32_t>& popularity) {
    if (popularity.empty()) throw std::invalid_argument("rank_frequency: empty popularity vector");
    std::vector<std::uint32_t> sorted;
    sorted.reserve(popularity.size());
    for (std::uint32_t v : popularity)
        if (v > 0) sorted.push_back(v);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    std::vector<std::pair<std::size_t, std::uint32_t>> rf;
    rf.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) rf.emplace_back(i + 1, sorted[i]);
    return rf;
}

double curvature_statistic(std::vector<double> values) {
    if (values.size() < 64)
        throw std::invalid_argument("curvature_statistic: need at least 64 values");
    std::sort(values.begin(), values.end(), std::greater<>());
    const std::size_t m = values.size();
    const std::size_t window = std::max<std::size_t>(1, m / 500);

    auto smoothed_log = [&](std::size_t rank) {
        const std::size_t lo = rank >= window ? rank - window : 0;
        const std::size_t hi = std::min(m - 1, rank + window);
        double acc = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) acc += std::log(std::max(values[i], 1e-300));
        return acc / static_cast<double>(hi - lo + 1);
    };

    // second difference of log-value at ranks (r/2, r, 2r): zero for an exact
    // power law, where log-value is affine in log-rank
    const double fractions[] = {0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
    double acc = 0.0;
    int used = 0;
    for (double f : fractions) {
        const auto r = static_cast<std::size_t>(f * static_cast<double>(m));
        if (r / 2 < 1 || 2 * r >= m) continue;
        const double second_diff = smoothed_log(r / 2) - 2.0 * smoothed_log(r) + smoothed_log(2 * r);
        acc += std::abs(second_diff);
        ++used;
    }
    if (used == 0) throw std::invalid_argument("curvature_statistic: rank range too small");
    return acc / used;
}

} // namespace popalign
