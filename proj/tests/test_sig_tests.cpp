#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "scorecmp/rng.hpp"
#include "scorecmp/sig_tests.hpp"
#include "welch_fixtures.hpp"

using namespace scorecmp;

namespace {

std::vector<InstanceStats> perfect_runs(int n) {
    return std::vector<InstanceStats>(static_cast<std::size_t>(n),
                                      InstanceStats::spans(1, 0, 0));
}

std::vector<InstanceStats> failed_runs(int n) {
    return std::vector<InstanceStats>(static_cast<std::size_t>(n),
                                      InstanceStats::spans(0, 1, 1));
}

std::vector<InstanceStats> random_span_stats(Xoshiro256ss& rng, int n) {
    std::vector<InstanceStats> out;
    for (int i = 0; i < n; ++i)
        out.push_back(InstanceStats::spans(
            static_cast<std::uint32_t>(rng.next_below(4)),
            static_cast<std::uint32_t>(rng.next_below(3)),
            static_cast<std::uint32_t>(rng.next_below(3))));
    return out;
}

double score_of(const std::vector<InstanceStats>& s) {
    return InstanceSeries(s).score();
}

// exhaustive bootstrap oracle: every index sequence of length n is equally
// likely, so the resampling distribution can be enumerated for tiny n
double exact_bootstrap_p(const std::vector<InstanceStats>& a,
                         const std::vector<InstanceStats>& b) {
    const std::size_t n = a.size();
    const double delta = std::fabs(score_of(a) - score_of(b));
    const auto& hi = score_of(a) >= score_of(b) ? a : b;
    const auto& lo = score_of(a) >= score_of(b) ? b : a;
    std::vector<std::size_t> idx(n, 0);
    std::uint64_t total = 0, exceed = 0;
    while (true) {
        StatsSums sh, sl;
        sh.mode = sl.mode = a.front().mode;
        for (std::size_t i = 0; i < n; ++i) {
            sh.add(hi[idx[i]]);
            sl.add(lo[idx[i]]);
        }
        ++total;
        if (sh.score() - sl.score() > 2.0 * delta) ++exceed;
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == n) idx[pos++] = 0;
        if (pos == n) break;
    }
    return static_cast<double>(exceed) / static_cast<double>(total);
}

// recompute-from-scratch oracle for the exhaustive randomization test
double exact_randomization_oracle(const std::vector<InstanceStats>& a,
                                  const std::vector<InstanceStats>& b) {
    const std::size_t n = a.size();
    const double d = std::fabs(score_of(a) - score_of(b));
    std::uint64_t at_least = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        StatsSums sa, sb;
        sa.mode = sb.mode = a.front().mode;
        for (std::size_t i = 0; i < n; ++i) {
            const bool swap = (mask >> i) & 1u;
            sa.add(swap ? b[i] : a[i]);
            sb.add(swap ? a[i] : b[i]);
        }
        if (std::fabs(sa.score() - sb.score()) >= d) ++at_least;
    }
    return static_cast<double>(at_least) / static_cast<double>(std::uint64_t{1} << n);
}

}  // namespace

TEST_CASE("paired bootstrap") {
    SUBCASE("equal aggregate scores, distinct instances: p near one half") {
        // antisymmetric layout, so delta = 0 exactly and delta* is symmetric
        std::vector<InstanceStats> a, b;
        for (int i = 0; i < 1000; ++i) {
            const bool even = i % 2 == 0;
            a.push_back(even ? InstanceStats::spans(1, 0, 0) : InstanceStats::spans(0, 1, 1));
            b.push_back(even ? InstanceStats::spans(0, 1, 1) : InstanceStats::spans(1, 0, 0));
        }
        const auto res = paired_bootstrap(a, b, 10000, 99);
        CHECK(res.statistic == 0.0);
        CHECK(std::fabs(res.p_value - 0.5) <= 0.02);
        CHECK(res.p_value >= 0.05);
    }
    SUBCASE("strict dominance: p = 0") {
        const auto res = paired_bootstrap(perfect_runs(50), failed_runs(50), 10000, 1);
        CHECK(res.p_value == 0.0);
        CHECK(res.statistic == doctest::Approx(100.0));
    }
    SUBCASE("identical inputs count no strict exceedance") {
        const auto one = paired_bootstrap(perfect_runs(1), perfect_runs(1), 1000, 3);
        CHECK(one.p_value == 0.0);
        const auto many = paired_bootstrap(failed_runs(40), failed_runs(40), 2000, 3);
        CHECK(many.p_value == 0.0);
    }
    SUBCASE("swap is recorded in the statistic sign") {
        const auto res = paired_bootstrap(failed_runs(20), perfect_runs(20), 1000, 5);
        CHECK(res.statistic == doctest::Approx(-100.0));
        CHECK(res.p_value == 0.0);
    }
    SUBCASE("deterministic given seed; resample count recorded") {
        Xoshiro256ss rng(7);
        const auto a = random_span_stats(rng, 60);
        const auto b = random_span_stats(rng, 60);
        const auto r1 = paired_bootstrap(a, b, 2000, 42);
        const auto r2 = paired_bootstrap(a, b, 2000, 42);
        CHECK(r1.p_value == r2.p_value);
        CHECK(r1.resamples == 2000);
        CHECK(r1.seed == 42);
    }
    SUBCASE("preconditions") {
        const auto a = perfect_runs(5);
        CHECK_THROWS_AS(paired_bootstrap(a, perfect_runs(4), 1000, 0), std::invalid_argument);
        CHECK_THROWS_AS(paired_bootstrap(a, a, 999, 0), std::invalid_argument);
        std::vector<InstanceStats> acc(5, InstanceStats::counts(1, 1));
        CHECK_THROWS_AS(paired_bootstrap(a, acc, 1000, 0), std::invalid_argument);
    }
    SUBCASE("tiny-n estimates match exhaustive enumeration (span path)") {
        Xoshiro256ss rng(21);
        for (int trial = 0; trial < 6; ++trial) {
            const int n = 4 + static_cast<int>(rng.next_below(2));
            const auto a = random_span_stats(rng, n);
            const auto b = random_span_stats(rng, n);
            const double exact = exact_bootstrap_p(a, b);
            const auto mc = paired_bootstrap(a, b, 20000, 1000 + trial);
            const double se = std::sqrt(std::max(exact * (1 - exact), 1e-4) / 20000.0);
            CHECK(std::fabs(mc.p_value - exact) <= 5.0 * se + 1e-9);
        }
    }
    SUBCASE("tiny-n estimates match exhaustive enumeration (packed path)") {
        Xoshiro256ss rng(22);
        for (int trial = 0; trial < 6; ++trial) {
            const int n = 5;
            std::vector<InstanceStats> a, b;
            for (int i = 0; i < n; ++i) {
                a.push_back(InstanceStats::counts(rng.next_below(2), 1));
                b.push_back(InstanceStats::counts(rng.next_below(2), 1));
            }
            CHECK(InstanceSeries(a).packed());
            const double exact = exact_bootstrap_p(a, b);
            const auto mc = paired_bootstrap(a, b, 20000, 2000 + trial);
            const double se = std::sqrt(std::max(exact * (1 - exact), 1e-4) / 20000.0);
            CHECK(std::fabs(mc.p_value - exact) <= 5.0 * se + 1e-9);
        }
    }
}

TEST_CASE("approximate randomization") {
    SUBCASE("identical inputs give p = 1") {
        const auto a = perfect_runs(30);
        const auto res = approx_randomization(a, a, 2000, 8);
        CHECK(res.p_value == 1.0);
    }
    SUBCASE("strict dominance is maximally significant") {
        const auto res = approx_randomization(perfect_runs(50), failed_runs(50), 10000, 8);
        CHECK(res.p_value <= 0.001);
        // +1/+1 smoothing never reports zero
        CHECK(res.p_value > 0.0);
        CHECK(res.p_value == doctest::Approx(1.0 / 10001.0));
    }
    SUBCASE("matches the exhaustive oracle for small n") {
        Xoshiro256ss rng(31);
        for (int trial = 0; trial < 8; ++trial) {
            const int n = 6 + static_cast<int>(rng.next_below(7));  // 6..12
            const auto a = random_span_stats(rng, n);
            const auto b = random_span_stats(rng, n);
            const auto approx = approx_randomization(a, b, 10000, 500 + trial);
            const auto exact = exact_randomization(a, b);
            CHECK(std::fabs(approx.p_value - exact.p_value) <= 0.02);
        }
    }
    SUBCASE("swapping the systems leaves p unchanged for the same seed") {
        Xoshiro256ss rng(33);
        const auto a = random_span_stats(rng, 25);
        const auto b = random_span_stats(rng, 25);
        CHECK(approx_randomization(a, b, 5000, 77).p_value
              == approx_randomization(b, a, 5000, 77).p_value);
    }
    SUBCASE("packed path agrees with the exhaustive oracle") {
        Xoshiro256ss rng(35);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<InstanceStats> a, b;
            for (int i = 0; i < 12; ++i) {
                a.push_back(InstanceStats::counts(rng.next_below(2), 1));
                b.push_back(InstanceStats::counts(rng.next_below(2), 1));
            }
            const auto approx = approx_randomization(a, b, 10000, 900 + trial);
            const auto exact = exact_randomization(a, b);
            CHECK(std::fabs(approx.p_value - exact.p_value) <= 0.02);
        }
    }
}

TEST_CASE("exact randomization") {
    SUBCASE("n = 1 with different metrics: both assignments reach d") {
        const auto res = exact_randomization(perfect_runs(1), failed_runs(1));
        CHECK(res.p_value == 1.0);
    }
    SUBCASE("identical inputs give p = 1") {
        const auto a = perfect_runs(6);
        CHECK(exact_randomization(a, a).p_value == 1.0);
    }
    SUBCASE("gray-code walk equals recompute-from-scratch enumeration") {
        Xoshiro256ss rng(41);
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = random_span_stats(rng, 8);
            const auto b = random_span_stats(rng, 8);
            CHECK(exact_randomization(a, b).p_value
                  == exact_randomization_oracle(a, b));
        }
    }
    SUBCASE("size guard") {
        const auto a = perfect_runs(21);
        CHECK_THROWS_AS(exact_randomization(a, a), std::invalid_argument);
        CHECK_NOTHROW(exact_randomization(perfect_runs(4), failed_runs(4), 4));
    }
}

TEST_CASE("welch t test") {
    SUBCASE("identical samples") {
        std::vector<double> x{1, 2, 3};
        const auto res = welch_t(x, x);
        CHECK(res.statistic == 0.0);
        CHECK(res.p_value == 1.0);
    }
    SUBCASE("large shift is decisive") {
        std::vector<double> x{1, 2, 3, 4}, y{1001, 1002, 1003, 1004};
        CHECK(welch_t(x, y).p_value < 1e-6);
    }
    SUBCASE("hand fixture") {
        std::vector<double> x{2, 4, 6}, y{1, 3, 5, 7, 9};
        const auto res = welch_t(x, y);
        CHECK(res.statistic == doctest::Approx(-0.54772255750516611).epsilon(1e-12));
        CHECK(res.p_value == doctest::Approx(0.60402669138608233).epsilon(1e-9));
    }
    SUBCASE("frozen fixtures match to 1e-9 relative") {
        for (const auto& f : welch_fixtures()) {
            const auto res = welch_t(f.x, f.y);
            CHECK(std::fabs(res.statistic - f.t) <= 1e-9 * std::fabs(f.t));
            CHECK(std::fabs(res.p_value - f.p) <= 1e-9 * f.p);
        }
    }
    SUBCASE("degenerate variances") {
        std::vector<double> c1{5, 5, 5}, c2{7, 7, 7};
        CHECK(welch_t(c1, c1).p_value == 1.0);
        CHECK(welch_t(c1, c2).p_value == 0.0);
        std::vector<double> x{1, 2, 3};
        CHECK(welch_t(x, c2).p_value < 1.0);  // one-sided zero variance is fine
        std::vector<double> tiny{1};
        CHECK_THROWS_AS(welch_t(tiny, x), std::invalid_argument);
    }
    SUBCASE("swapping the samples negates t, keeps p") {
        std::vector<double> x{2, 4, 6}, y{1, 3, 5, 7, 9};
        const auto xy = welch_t(x, y);
        const auto yx = welch_t(y, x);
        CHECK(xy.statistic == -yx.statistic);
        CHECK(xy.p_value == yx.p_value);
    }
    SUBCASE("resample metadata appears only on resampling methods") {
        std::vector<double> x{2, 4, 6}, y{1, 3, 5, 7, 9};
        CHECK_FALSE(welch_t(x, y).resamples);
        CHECK_FALSE(wilcoxon_signed_rank(x, x).resamples);
        CHECK_FALSE(mann_whitney_u(x, y).resamples);
        CHECK_FALSE(exact_randomization(perfect_runs(3), failed_runs(3)).resamples);
        CHECK(paired_bootstrap(perfect_runs(3), failed_runs(3), 1000, 1).resamples);
        CHECK(approx_randomization(perfect_runs(3), failed_runs(3), 1000, 1).seed);
    }
}

TEST_CASE("wilcoxon signed-rank test") {
    SUBCASE("six uniform wins is the smallest two-tailed significance") {
        std::vector<double> x{5, 6, 7, 8, 9, 10}, y{1, 2, 3, 4, 5, 6};
        const auto res = wilcoxon_signed_rank(x, y);
        CHECK(res.p_value == 0.03125);  // 2 / 2^6, exactly representable
        std::vector<double> x5{5, 6, 7, 8, 9}, y5{1, 2, 3, 4, 5};
        CHECK(wilcoxon_signed_rank(x5, y5).p_value == 0.0625);
    }
    SUBCASE("identical samples: all differences drop, p = 1") {
        std::vector<double> x{3, 1, 4, 1, 5};
        const auto res = wilcoxon_signed_rank(x, x);
        CHECK(res.p_value == 1.0);
    }
    SUBCASE("shift invariance of matched pairs") {
        Xoshiro256ss rng(55);
        std::vector<double> x, y;
        for (int i = 0; i < 12; ++i) {
            x.push_back(rng.next_normal());
            y.push_back(rng.next_normal());
        }
        const double p0 = wilcoxon_signed_rank(x, y).p_value;
        std::vector<double> xs(x), ys(y);
        for (auto& v : xs) v += 123.25;
        for (auto& v : ys) v += 123.25;
        CHECK(wilcoxon_signed_rank(xs, ys).p_value == p0);
    }
    SUBCASE("normal approximation is close to exact near the boundary") {
        // n = 26 uses the approximation; compare against n = 25 exact scale
        Xoshiro256ss rng(66);
        std::vector<double> x, y;
        for (int i = 0; i < 26; ++i) {
            x.push_back(rng.next_normal() + 0.6);
            y.push_back(rng.next_normal());
        }
        const double p = wilcoxon_signed_rank(x, y).p_value;
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
    SUBCASE("length mismatch is an error") {
        std::vector<double> x{1, 2, 3}, y{1, 2};
        CHECK_THROWS_AS(wilcoxon_signed_rank(x, y), std::invalid_argument);
    }
}

TEST_CASE("mann-whitney u test") {
    SUBCASE("full separation of 3 vs 3") {
        std::vector<double> x{1, 2, 3}, y{4, 5, 6};
        const auto res = mann_whitney_u(x, y);
        CHECK(res.statistic == 0.0);
        CHECK(res.p_value == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("equal multisets under ties") {
        std::vector<double> x{1, 2, 2, 3}, y{3, 2, 1, 2};
        CHECK(mann_whitney_u(x, y).p_value == 1.0);
    }
    SUBCASE("full separation of 10 vs 10") {
        std::vector<double> x, y;
        for (int i = 0; i < 10; ++i) {
            x.push_back(i);
            y.push_back(100 + i);
        }
        const auto res = mann_whitney_u(x, y);
        // exact: 2 / C(20, 10)
        CHECK(res.p_value == doctest::Approx(2.0 / 184756.0).epsilon(1e-9));
        CHECK(res.p_value < 0.001);
    }
    SUBCASE("empty sample is an error") {
        std::vector<double> x{1.0}, none;
        CHECK_THROWS_AS(mann_whitney_u(x, none), std::invalid_argument);
    }
    SUBCASE("approximation path engages for large or tied inputs") {
        std::vector<double> x, y;
        for (int i = 0; i < 30; ++i) {
            x.push_back(i % 7);
            y.push_back((i + 3) % 7);
        }
        const double p = mann_whitney_u(x, y).p_value;
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("null rejection rates sit near the nominal level") {
    // both samples from one generator; rejection at p < 0.05 should stay
    // within [0.035, 0.065] over 2000 trials
    const int trials = 2000;
    const int n = 25;
    int rej_welch = 0, rej_wilcoxon = 0, rej_mw = 0;
    for (int t = 0; t < trials; ++t) {
        Xoshiro256ss rng(derive_stream(20250809, static_cast<std::uint64_t>(t)));
        std::vector<double> x, y;
        for (int i = 0; i < n; ++i) {
            x.push_back(90.0 + 0.5 * rng.next_normal());
            y.push_back(90.0 + 0.5 * rng.next_normal());
        }
        if (welch_t(x, y).p_value < 0.05) ++rej_welch;
        if (wilcoxon_signed_rank(x, y).p_value < 0.05) ++rej_wilcoxon;
        if (mann_whitney_u(x, y).p_value < 0.05) ++rej_mw;
    }
    const double denom = trials;
    CHECK(rej_welch / denom >= 0.035);
    CHECK(rej_welch / denom <= 0.065);
    CHECK(rej_wilcoxon / denom >= 0.035);
    CHECK(rej_wilcoxon / denom <= 0.065);
    CHECK(rej_mw / denom >= 0.035);
    CHECK(rej_mw / denom <= 0.065);
}
