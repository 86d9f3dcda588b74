#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scorecmp/matrix.hpp"
#include "scorecmp/sig_tests.hpp"

// The four evaluation protocols over twin score matrices, and the summary
// statistics reported for them (threshold tau, % significant, delta
// percentiles, dev/test rank correlation, n-sweeps).

namespace scorecmp {

enum class PairedTest { none, bootstrap, approx_rand, exact_rand };

std::string paired_test_name(PairedTest t);

struct ProtocolOptions {
    PairedTest method = PairedTest::bootstrap;
    double p_threshold = 0.05;
    std::int64_t resamples = 10000;
    std::uint64_t seed = 0;
};

struct ProtocolReport {
    std::string protocol;                      // "eval1" .. "eval4"
    std::optional<double> pct_significant;     // fraction in [0, 1]
    std::optional<double> tau;                 // mean |test delta| of pairs with p in (0.04, 0.05)
    std::optional<double> delta95_dev;         // eval2 only
    double delta95_test = 0.0;
    double delta_max = 0.0;
    std::optional<double> spearman_dev_test;         // eval2: over matrix a
    std::optional<double> spearman_dev_test_pooled;  // eval2: over both matrices
    std::int64_t trials = 0;
    double p_threshold = 0.05;
};

// Highest dev score wins; ties go to the lowest column index.
std::size_t select_best_index(std::span<const RunRecord> row);
const RunRecord& select_best(std::span<const RunRecord> row);

// Evaluation 1: significance-test every cell pair A_i^(j) vs B_i^(j).
// Resampling methods require per-instance test stats on every cell;
// PairedTest::none reports the delta statistics only.
ProtocolReport run_eval1(const ScoreMatrix& a, const ScoreMatrix& b,
                         const ProtocolOptions& opts);

// Evaluation 2: per row, select each side's best-on-dev model and test the
// selected pair. Adds the dev-delta percentile and the dev/test Spearman
// correlation (matrix a, and both matrices pooled).
ProtocolReport run_eval2(const ScoreMatrix& a, const ScoreMatrix& b,
                         const ProtocolOptions& opts);

// A comparison verdict keeps the claim's direction separate from the
// p-value: superiority requires both.
struct DistComparison {
    SigTestResult test;
    double mean_a = 0.0;
    double mean_b = 0.0;
    bool a_better = false;
    bool significant = false;
};

// Evaluation 3: expected-score comparison via Welch's t test.
DistComparison run_eval3(std::span<const double> a_scores,
                         std::span<const double> b_scores,
                         double p_threshold = 0.05);

// Evaluation 4: better-model-probability comparison; Wilcoxon signed-rank
// for matched pairs, Mann-Whitney U otherwise. Requires at least 6 scores
// per side (the two-tailed minimum for p < 0.05).
DistComparison run_eval4(std::span<const double> a_scores,
                         std::span<const double> b_scores,
                         bool paired, double p_threshold = 0.05);

// Row-wise Monte-Carlo application of Evaluations 3/4 to a score grid:
// each row is one trial comparing n test scores per side.
ProtocolReport run_eval3_matrix(const ScoreMatrix& a, const ScoreMatrix& b,
                                double p_threshold = 0.05);
ProtocolReport run_eval4_matrix(const ScoreMatrix& a, const ScoreMatrix& b,
                                bool paired = true, double p_threshold = 0.05);

struct SweepPoint {
    std::int64_t n = 0;
    double pct_significant = 0.0;
};

// run_eval2 restricted to the first n columns, for each n.
std::vector<SweepPoint> sweep_n(const ScoreMatrix& a, const ScoreMatrix& b,
                                std::span<const std::int64_t> n_values,
                                const ProtocolOptions& opts);

struct MeanDeltaPoint {
    std::int64_t n = 0;
    double delta95 = 0.0;
};

// 95th percentile across rows of |mean of first n test scores (a) - same
// for (b)|: how far apart n-run mean scores of identical approaches drift.
std::vector<MeanDeltaPoint> mean_delta95(const ScoreMatrix& a, const ScoreMatrix& b,
                                         std::span<const std::int64_t> n_values);

}  // namespace scorecmp
