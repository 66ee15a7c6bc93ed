#include "popalign/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "popalign/analyze.hpp"
#include "popalign/motifs.hpp"
#include "popalign/pi1_bounds.hpp"
#include "popalign/pik_bounds.hpp"
#include "popalign/rng.hpp"
#include "popalign/spectral.hpp"

namespace popalign {

namespace {

InteractionMatrix random_matrix(std::uint64_t seed, std::size_t n, std::size_t m, double density) {
    InteractionMatrix Y(n, m);
    SplitMix64 stream(seed);
    bool any = false;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t i = 0; i < m; ++i)
            if (stream.next_double() < density) {
                Y.set(u, i, true);
                any = true;
            }
    if (!any) Y.set(0, 0, true);
    return Y;
}

}  // namespace

int run_selftest(std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        out << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    };

    // complete bipartite anchors
    {
        const InteractionMatrix k22 = InteractionMatrix::all_ones(2, 2);
        const InteractionMatrix k23 = InteractionMatrix::all_ones(2, 3);
        check("trace_a4(K_2,2) == 32", trace_a4(k22) == 32);
        check("trace_a4(K_2,3) == 72", trace_a4(k23) == 72);
        const KumarBound kb22 = kumar_bounds(k22);
        const KumarBound kb23 = kumar_bounds(k23);
        check("kumar tight on K_2,2", std::abs(kb22.lower - 4.0) < 1e-8 &&
                                          std::abs(kb22.upper - 4.0) < 1e-8);
        check("kumar tight on K_2,3", std::abs(kb23.lower - 6.0) < 1e-8 &&
                                          std::abs(kb23.upper - 6.0) < 1e-8);
    }

    // all-ones principal bound is exactly tight
    {
        const InteractionMatrix ones = InteractionMatrix::all_ones(3, 4);
        const SpectralDecomposition D = svd(ones);
        const DegreeSummary deg = degree_summary(ones);
        const Pi1Bound bound =
            pi1_lower_bound(D.sigma[0] * D.sigma[0], static_cast<double>(deg.vol1_items),
                            static_cast<double>(deg.vol2_items), deg.r_max);
        const AlignmentProfile prof = alignment_profile(ones, D);
        check("all-ones pi1 bound == cos theta_1 == 1",
              std::abs(bound.value - 1.0) < 1e-12 && std::abs(prof.cos_theta[0] - 1.0) < 1e-12);
    }

    // bracket validity on random instances
    {
        bool ok = true;
        for (std::uint64_t seed = 1; seed <= 40 && ok; ++seed) {
            SplitMix64 stream(seed * 977);
            const std::size_t n = 2 + stream.next_u64() % 14;
            const std::size_t m = 2 + stream.next_u64() % 14;
            const double density = 0.1 + 0.8 * stream.next_double();
            const InteractionMatrix Y = random_matrix(seed, n, m, density);
            AnalyzeOptions opts;
            opts.dataset_id = "selftest";
            const BoundReport report = analyze(Y, opts);
            ok = !report.any_violation;
        }
        check("bound bracket valid on 40 random instances", ok);
    }

    // LP bounds against a tiny exact case: s = (4, 1, 0), mu = 2, k = 1
    {
        const std::vector<double> s = {4.0, 1.0, 0.0};
        const double lower = lp_lower(s, 2.0, 1);
        const double upper = lp_upper(s, 2.0, 1);
        check("lp_lower((4,1,0), mu=2, k=1) == 2/3", std::abs(lower - 2.0 / 3.0) < 1e-12);
        check("lp_upper((4,1,0), mu=2, k=1) == 1", std::abs(upper - 1.0) < 1e-12);
    }

    out << (failures == 0 ? "selftest: all checks passed\n"
                          : "selftest: " + std::to_string(failures) + " check(s) failed\n");
    return failures;
}

} // namespace popalign
