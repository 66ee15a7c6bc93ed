#include <doctest.h>

#include <cmath>

#include "popalign/degree.hpp"
#include "popalign/errors.hpp"
#include "popalign/pi1_bounds.hpp"
#include "popalign/spectral.hpp"
#include "test_util.hpp"

using namespace popalign;
using namespace popalign::testutil;

TEST_CASE("pi1_lower_bound anchors") {
    SUBCASE("all-ones is exactly tight") {
        // sigma1^2 = nm, vol1 = nm, vol2 = m n^2, r_s = n collapses to 1
        for (const auto& [n, m] : {std::pair{2, 2}, {3, 4}, {5, 7}}) {
            const double nm = static_cast<double>(n) * m;
            const Pi1Bound b = pi1_lower_bound(nm, nm, m * double(n) * n, n);
            CHECK(b.value == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    SUBCASE("[[1,1],[0,1]] hand oracle") {
        const double s1sq = (3.0 + std::sqrt(5.0)) / 2.0;
        const Pi1Bound b = pi1_lower_bound(s1sq, 3.0, 5.0, 2.0);
        CHECK(b.value == doctest::Approx(0.920).epsilon(1e-3));
        // actual cos(r, q1) ~ 0.996 dominates the bound
        const InteractionMatrix Y = from_rows({{1, 1}, {0, 1}});
        const AlignmentProfile prof = alignment_profile(Y, svd(Y));
        CHECK(prof.cos_theta[0] >= b.value);
    }
    SUBCASE("nonpositive radicand clamps to zero") {
        const Pi1Bound b = pi1_lower_bound(1.0, 10.0, 4.0, 2.0);  // 1 - 8/1 < 0
        CHECK(b.value == 0.0);
        CHECK(b.raw == 0.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(pi1_lower_bound(0.0, 1.0, 1.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(pi1_lower_bound(1.0, 1.0, -1.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(pi1_lower_bound(1.0, 1.0, 1.0, 2.0), std::invalid_argument);
    }
}

TEST_CASE("pi1_lower_bound_linearized") {
    SUBCASE("all-ones n = m = 2 at L = 4") {
        const Pi1Bound second =
            pi1_lower_bound_linearized(4.0, 4.0, 8.0, 2.0, LinearizationOrder::second);
        CHECK(second.value == doctest::Approx(std::sqrt(2.0) * 0.625).epsilon(1e-12));
        const Pi1Bound exact = pi1_lower_bound(4.0, 4.0, 8.0, 2.0);
        CHECK(exact.value >= second.value);
    }
    SUBCASE("a = 0 collapses the chain") {
        // r_max = vol1: single-item mass
        const Pi1Bound exact = pi1_lower_bound(2.0, 3.0, 9.0, 3.0);
        const Pi1Bound second =
            pi1_lower_bound_linearized(2.0, 3.0, 9.0, 3.0, LinearizationOrder::second);
        const Pi1Bound first =
            pi1_lower_bound_linearized(2.0, 3.0, 9.0, 3.0, LinearizationOrder::first);
        CHECK(exact.value == doctest::Approx(second.value).epsilon(1e-14));
        CHECK(second.value == doctest::Approx(first.value).epsilon(1e-14));
        CHECK(first.value == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("a = 1 zeroes both orders") {
        // vol1 - r_max = L
        const Pi1Bound second =
            pi1_lower_bound_linearized(2.0, 3.0, 9.0, 1.0, LinearizationOrder::second);
        const Pi1Bound first =
            pi1_lower_bound_linearized(2.0, 3.0, 9.0, 1.0, LinearizationOrder::first);
        CHECK(first.value == 0.0);
        CHECK(second.value == 0.0);
        CHECK(second.raw <= 0.0);
    }
    SUBCASE("L must be positive") {
        CHECK_THROWS_AS(pi1_lower_bound_linearized(0.0, 1.0, 1.0, 1.0, LinearizationOrder::first),
                        std::invalid_argument);
    }
}

TEST_CASE("linearization chain ordering exact >= 2nd >= 1st when a in [0,1]") {
    SplitMix64 stream(909);
    for (int trial = 0; trial < 200; ++trial) {
        const double L = 0.5 + 10.0 * stream.next_double();
        const double r_max = 1.0 + 5.0 * stream.next_double();
        const double a = stream.next_double();  // in [0, 1)
        const double vol1 = r_max + a * L;
        const double vol2 = vol1 * vol1 / (1.0 + 3.0 * stream.next_double());
        const double exact = pi1_lower_bound(L, vol1, vol2, r_max).value;
        const double second =
            pi1_lower_bound_linearized(L, vol1, vol2, r_max, LinearizationOrder::second).value;
        const double first =
            pi1_lower_bound_linearized(L, vol1, vol2, r_max, LinearizationOrder::first).value;
        CHECK(exact >= second - 1e-12);
        CHECK(second >= first - 1e-12);
    }
}

TEST_CASE("pi1 bound is below the exact alignment on random graphs") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        SplitMix64 pick(seed * 733);
        const std::size_t n = 2 + pick.next_u64() % 39, m = 2 + pick.next_u64() % 39;
        const double density = 0.05 + 0.85 * pick.next_double();
        const InteractionMatrix Y = random_matrix(seed, n, m, density);
        const SpectralDecomposition D = svd(Y);
        const DegreeSummary deg = degree_summary(Y);
        const AlignmentProfile prof = alignment_profile(Y, D);
        const Pi1Bound b =
            pi1_lower_bound(D.sigma[0] * D.sigma[0], static_cast<double>(deg.vol1_items),
                            static_cast<double>(deg.vol2_items), deg.r_max);
        CAPTURE(seed);
        CHECK(b.value <= prof.cos_theta[0] + 1e-9);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("pi1 bound is nondecreasing in r_s") {
    SplitMix64 stream(4242);
    for (int trial = 0; trial < 100; ++trial) {
        const double s1sq = 1.0 + 20.0 * stream.next_double();
        const double vol1 = 1.0 + 30.0 * stream.next_double();
        const double vol2 = vol1 * (1.0 + 5.0 * stream.next_double());
        const double r_lo = vol1 * stream.next_double();
        const double r_hi = r_lo + (vol1 - r_lo) * stream.next_double();
        CHECK(pi1_lower_bound(s1sq, vol1, vol2, r_hi).value >=
              pi1_lower_bound(s1sq, vol1, vol2, r_lo).value - 1e-12);
    }
}

TEST_CASE("distributional variant") {
    SUBCASE("degenerate substitution reproduces the exact bound") {
        const Pi1Bound base = pi1_lower_bound(5.0, 6.0, 14.0, 3.0);
        const Pi1Bound rho = pi1_lower_bound_distributional(6.0, 14.0, 5.0, 3.0, 6.0, 14.0);
        CHECK(rho.value == doctest::Approx(base.value).epsilon(1e-14));
        CHECK(rho.variant == Pi1Variant::distributional);
    }
    SUBCASE("doubling vol2 shrinks the all-ones bound by sqrt(2)") {
        // 2x2 all-ones: sigma1^2 = 4, vol1 = 4, vol2 = 8, r_max = 2
        const Pi1Bound base = pi1_lower_bound(4.0, 4.0, 8.0, 2.0);
        const Pi1Bound rho = pi1_lower_bound_distributional(4.0, 16.0, 4.0, 2.0, 4.0, 8.0);
        CHECK(rho.value == doctest::Approx(base.value / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("dominance violations are rejected") {
        CHECK_THROWS_AS(pi1_lower_bound_distributional(3.0, 14.0, 5.0, 2.0, 6.0, 14.0),
                        InfeasibleError);
        CHECK_THROWS_AS(pi1_lower_bound_distributional(6.0, 10.0, 5.0, 2.0, 6.0, 14.0),
                        InfeasibleError);
    }
    SUBCASE("power-law tail sums dominate a matched synthetic graph") {
        // rank-frequency law f(i) = c i^{-2} (the alpha = 1.5 regime after
        // ranking) with c chosen to dominate; tail sums by direct summation
        const InteractionMatrix Y = random_matrix(99, 12, 100, 0.08);
        const DegreeSummary deg = degree_summary(Y);
        const SpectralDecomposition D = svd(Y);
        double c = deg.r_max;
        double vol1_rho = 0.0, vol2_rho = 0.0;
        for (;;) {
            vol1_rho = vol2_rho = 0.0;
            for (std::size_t i = 1; i <= 100; ++i) {
                const double f = c / (static_cast<double>(i) * i);
                vol1_rho += f;
                vol2_rho += f * f;
            }
            if (vol1_rho >= static_cast<double>(deg.vol1_items) &&
                vol2_rho >= static_cast<double>(deg.vol2_items))
                break;
            c *= 2.0;
        }
        const double s1sq = D.sigma[0] * D.sigma[0];
        const Pi1Bound exact_vol =
            pi1_lower_bound(s1sq, static_cast<double>(deg.vol1_items),
                            static_cast<double>(deg.vol2_items), deg.r_max);
        const Pi1Bound rho = pi1_lower_bound_distributional(
            vol1_rho, vol2_rho, s1sq, deg.r_max, static_cast<double>(deg.vol1_items),
            static_cast<double>(deg.vol2_items));
        CHECK(rho.value <= exact_vol.value + 1e-12);
    }
}

TEST_CASE("kumar_bounds anchors") {
    SUBCASE("K_2,2 is tight on both sides") {
        const KumarBound kb = kumar_bounds(InteractionMatrix::all_ones(2, 2));
        CHECK(kb.p == 2);
        CHECK(kb.mean_deg == doctest::Approx(2.0));
        CHECK(kb.s == doctest::Approx(2.0));
        CHECK(kb.lower == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(kb.upper == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("K_2,3 is tight at 6") {
        const KumarBound kb = kumar_bounds(InteractionMatrix::all_ones(2, 3));
        CHECK(kb.p == 2);
        CHECK(kb.s == doctest::Approx(3.0));
        CHECK(kb.lower == doctest::Approx(6.0).epsilon(1e-12));
        CHECK(kb.upper == doctest::Approx(6.0).epsilon(1e-12));
    }
    SUBCASE("[[1,1],[0,1]] reaches sigma_1^2") {
        const KumarBound kb = kumar_bounds(from_rows({{1, 1}, {0, 1}}));
        CHECK(kb.mean_deg == doctest::Approx(1.5));
        CHECK(kb.s == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
        const double s1sq = (3.0 + std::sqrt(5.0)) / 2.0;
        CHECK(kb.lower == doctest::Approx(s1sq).epsilon(1e-12));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(kumar_bounds(InteractionMatrix::all_ones(1, 2)), std::invalid_argument);
        CHECK_THROWS_AS(kumar_bounds(InteractionMatrix(2, 2)), std::invalid_argument);
    }
}

TEST_CASE("kumar bracket and decomposition on random graphs") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        SplitMix64 pick(seed * 577);
        const std::size_t n = 2 + pick.next_u64() % 14, m = 2 + pick.next_u64() % 14;
        const InteractionMatrix Y = random_matrix(seed, n, m, 0.15 + 0.7 * pick.next_double());
        const KumarBound kb = kumar_bounds(Y);
        const SpectralDecomposition D = svd(Y);
        const double s1sq = D.sigma[0] * D.sigma[0];
        CAPTURE(seed);
        CHECK(kb.lower <= s1sq + 1e-8);
        CHECK(kb.upper >= s1sq - 1e-8);
        if (kb.even_total) {
            const double decomposed = kb.decomposition.var_d + kb.decomposition.wedge_term +
                                      kb.decomposition.butterfly_term;
            CHECK(kb.s * kb.s == doctest::Approx(decomposed).epsilon(1e-10));
        }
    }
}

TEST_CASE("kumar tightness pattern on complete bipartite graphs") {
    // the upper side is tight for every K_{n,m} (rank-one spectrum padded
    // with zeros); the lower side is tight exactly when p = 2
    for (const auto& [n, m] : {std::pair{2, 2}, {2, 3}, {3, 3}, {2, 6}, {4, 4}, {3, 5}}) {
        const KumarBound kb =
            kumar_bounds(InteractionMatrix::all_ones(static_cast<std::size_t>(n),
                                                     static_cast<std::size_t>(m)));
        const double s1sq = static_cast<double>(n) * m;
        CAPTURE(n); CAPTURE(m);
        CHECK(kb.upper == doctest::Approx(s1sq).epsilon(1e-8));
        if (kb.p == 2) {
            CHECK(kb.lower == doctest::Approx(s1sq).epsilon(1e-8));
        } else {
            CHECK(kb.lower == doctest::Approx(2.0 * s1sq / static_cast<double>(kb.p)).epsilon(1e-8));
        }
    }
}
