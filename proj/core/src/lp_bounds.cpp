#include "popalign/lp_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "popalign/errors.hpp"

namespace popalign {

namespace {

constexpr double kFeasTol = 1e-9;

void validate(const std::vector<double>& s, double mu, int k) {
    if (s.empty()) throw std::invalid_argument("lp bounds: empty spectrum");
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] < s[i + 1] - 1e-12 * std::max(1.0, s[i + 1]))
            throw std::invalid_argument("lp bounds: spectrum must be nonincreasing");
    if (s.back() < -1e-12) throw std::invalid_argument("lp bounds: spectrum must be nonnegative");
    if (mu <= 0.0) throw std::invalid_argument("lp bounds: mu must be positive");
    if (k < 1 || static_cast<std::size_t>(k) > s.size())
        throw std::invalid_argument("lp bounds: k = " + std::to_string(k) + " outside 1.." +
                                    std::to_string(s.size()));
    const double slack = kFeasTol * std::max(1.0, s.front());
    if (mu > s.front() + slack || mu < s.back() - slack)
        throw InfeasibleError("lp bounds: mu = " + std::to_string(mu) + " outside [s_n, s_1] = [" +
                              std::to_string(s.back()) + ", " + std::to_string(s.front()) + "]");
}

bool close(double a, double b, double scale) {
    return std::abs(a - b) <= kFeasTol * std::max(1.0, scale);
}

std::size_t multiplicity_of_front(const std::vector<double>& s) {
    std::size_t t = 1;
    while (t < s.size() && close(s[t], s.front(), s.front())) ++t;
    return t;
}

// Two-point vertex on (i, j) with s_j <= mu <= s_i; collapses to a single
// index when mu matches an endpoint or the pair is degenerate.
LpWitness vertex_on(const std::vector<double>& s, double mu, int k, std::size_t i, std::size_t j) {
    LpWitness w;
    const double si = s[i], sj = s[j];
    if (i == j || close(si, sj, std::max(1.0, si))) {
        w.weights = {{close(mu, si, std::max(1.0, si)) ? i : j, 1.0}};
    } else if (close(mu, si, std::max(1.0, si))) {
        w.weights = {{i, 1.0}};
    } else if (close(mu, sj, std::max(1.0, sj))) {
        w.weights = {{j, 1.0}};
    } else {
        const double ai = (mu - sj) / (si - sj);
        w.weights = {{i, ai}, {j, 1.0 - ai}};
    }
    for (const auto& [idx, weight] : w.weights)
        if (idx < static_cast<std::size_t>(k)) w.objective += s[idx] * weight;
    w.kappa = std::clamp(w.objective / mu, 0.0, 1.0);
    return w;
}

// Flat-head convention witness: uniform mass over the multiplicity block of
// s_1 (feasible because mu == s_1 there). This is the one place a witness may
// carry more than two entries.
LpWitness flat_block_witness(const std::vector<double>& s, double mu, int k) {
    const std::size_t t = multiplicity_of_front(s);
    LpWitness w;
    w.weights.reserve(t);
    for (std::size_t j = 0; j < t; ++j) w.weights.emplace_back(j, 1.0 / static_cast<double>(t));
    for (const auto& [idx, weight] : w.weights)
        if (idx < static_cast<std::size_t>(k)) w.objective += s[idx] * weight;
    w.kappa = std::clamp(w.objective / mu, 0.0, 1.0);
    return w;
}

}  // namespace

const char* to_string(LpLowerRegime r) {
    return r == LpLowerRegime::vacuous_zero ? "vacuous_zero" : "gap_active";
}

const char* to_string(LpUpperRegime r) {
    return r == LpUpperRegime::interior ? "interior" : "saturated_one";
}

double lp_lower(const std::vector<double>& s, double mu, int k) {
    validate(s, mu, k);
    if (static_cast<std::size_t>(k) == s.size()) return 1.0;  // every position is in the head
    const double s1 = s.front();
    const double sk1 = s[static_cast<std::size_t>(k)];  // s_{k+1} in 1-based terms

    if (close(s1, sk1, s1)) {
        // flat head: the branch formula assumes s_1 > s_{k+1}; fall back to
        // the counting convention k / multiplicity(s_1) when mu == s_1
        if (!close(mu, s1, s1)) return 0.0;
        const double t = static_cast<double>(multiplicity_of_front(s));
        return std::clamp(static_cast<double>(k) / t, 0.0, 1.0);
    }
    if (mu <= sk1) return 0.0;
    return std::clamp((s1 / mu) * (mu - sk1) / (s1 - sk1), 0.0, 1.0);
}

double lp_upper(const std::vector<double>& s, double mu, int k) {
    validate(s, mu, k);
    if (static_cast<std::size_t>(k) == s.size()) return 1.0;
    const double sk = s[static_cast<std::size_t>(k - 1)];
    const double sn = s.back();
    if (close(sk, sn, std::max(1.0, sk))) return 1.0;  // flat tail: head and tail indistinct
    if (mu > sk) return 1.0;
    return std::clamp((sk / mu) * (mu - sn) / (sk - sn), 0.0, 1.0);
}

LpWitness lp_witness(const std::vector<double>& s, double mu, int k, LpSide side) {
    validate(s, mu, k);
    const std::size_t len = s.size();
    const std::size_t uk = static_cast<std::size_t>(k);

    if (uk == len)  // whole spectrum is the head; any bracketing pair gives kappa = 1
        return vertex_on(s, mu, k, 0, len - 1);

    if (side == LpSide::lower) {
        const double s1 = s.front();
        const double sk1 = s[uk];
        if (close(s1, sk1, s1))
            return close(mu, s1, s1) ? flat_block_witness(s, mu, k)
                                     : vertex_on(s, mu, k, uk, len - 1);
        if (mu <= sk1) return vertex_on(s, mu, k, uk, len - 1);  // tail pair, objective 0
        return vertex_on(s, mu, k, 0, uk);                       // {1, k+1}
    }

    const double sk = s[uk - 1];
    const double sn = s.back();
    if (close(sk, sn, std::max(1.0, sk)) || mu > sk)
        return vertex_on(s, mu, k, 0, uk - 1);        // head pair, objective mu, kappa 1
    return vertex_on(s, mu, k, uk - 1, len - 1);      // {k, n}
}

LpBoundResult lp_bounds(const std::vector<double>& s, double mu, int k) {
    LpBoundResult result;
    result.kappa_lower = lp_lower(s, mu, k);
    result.kappa_upper = lp_upper(s, mu, k);

    const std::size_t uk = static_cast<std::size_t>(k);
    const bool full_head = uk == s.size();
    const bool head_flat = !full_head && close(s.front(), s[uk], s.front());
    const bool tail_flat = close(s[uk - 1], s.back(), std::max(1.0, s[uk - 1]));
    result.degenerate_spectrum = head_flat || (tail_flat && !full_head);

    result.regime_lower = result.kappa_lower > 0.0 ? LpLowerRegime::gap_active
                                                   : LpLowerRegime::vacuous_zero;
    result.regime_upper = (full_head || tail_flat || mu > s[uk - 1])
                              ? LpUpperRegime::saturated_one
                              : LpUpperRegime::interior;
    result.witness_lower = lp_witness(s, mu, k, LpSide::lower);
    result.witness_upper = lp_witness(s, mu, k, LpSide::upper);
    return result;
}

} // namespace popalign
