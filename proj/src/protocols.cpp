#include "scorecmp/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scorecmp/rng.hpp"

namespace scorecmp {

std::string paired_test_name(PairedTest t) {
    switch (t) {
        case PairedTest::none: return "none";
        case PairedTest::bootstrap: return "bootstrap";
        case PairedTest::approx_rand: return "approx_rand";
        case PairedTest::exact_rand: return "exact_rand";
    }
    return "unknown";
}

namespace {

void check_shapes(const ScoreMatrix& a, const ScoreMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("matrices must have identical shapes");
    if (a.rows == 0 || a.cols == 0)
        throw std::invalid_argument("matrices must be non-empty");
}

const InstanceSeries& require_stats(const RunRecord& rec) {
    if (!rec.test_stats)
        throw std::invalid_argument("run '" + rec.run_id
                                    + "' has no per-instance test stats; a resampling "
                                      "test needs them");
    return *rec.test_stats;
}

SigTestResult run_paired(PairedTest method, const InstanceSeries& a, const InstanceSeries& b,
                         const ProtocolOptions& opts, std::uint64_t seed) {
    switch (method) {
        case PairedTest::bootstrap:
            return paired_bootstrap(a, b, opts.resamples, seed);
        case PairedTest::approx_rand:
            return approx_randomization(a, b, opts.resamples, seed);
        case PairedTest::exact_rand:
            return exact_randomization(a, b);
        case PairedTest::none:
            break;
    }
    throw std::logic_error("no significance test selected");
}

// shared accumulation over compared pairs
struct PairTally {
    std::vector<double> deltas;
    std::int64_t significant = 0;
    double band_delta_sum = 0.0;
    std::int64_t band_count = 0;

    void observe(const RunRecord& ra, const RunRecord& rb,
                 const std::optional<SigTestResult>& res, double threshold) {
        const double delta = std::fabs(ra.test - rb.test);
        deltas.push_back(delta);
        if (!res) return;
        // a superiority claim needs a direction on top of p < threshold
        if (res->p_value < threshold && ra.test != rb.test) ++significant;
        if (res->p_value > 0.04 && res->p_value < 0.05) {
            band_delta_sum += delta;
            ++band_count;
        }
    }

    void fill(ProtocolReport& report, bool tested) const {
        report.trials = static_cast<std::int64_t>(deltas.size());
        if (tested)
            report.pct_significant = static_cast<double>(significant)
                / static_cast<double>(deltas.size());
        if (band_count > 0)
            report.tau = band_delta_sum / static_cast<double>(band_count);
        report.delta95_test = percentile(deltas, 0.95);
        report.delta_max = *std::max_element(deltas.begin(), deltas.end());
    }
};

std::vector<double> column(const ScoreMatrix& m, bool dev) {
    std::vector<double> out;
    out.reserve(m.cells.size());
    for (const auto& c : m.cells) out.push_back(dev ? c.dev : c.test);
    return out;
}

std::optional<double> safe_spearman(std::span<const double> x, std::span<const double> y) {
    try {
        return spearman_rho(x, y);
    } catch (const std::invalid_argument&) {
        return std::nullopt;  // degenerate (constant) scores
    }
}

ScoreMatrix first_columns(const ScoreMatrix& m, std::size_t n) {
    ScoreMatrix out;
    out.approach_id = m.approach_id;
    out.rows = m.rows;
    out.cols = n;
    out.cells.reserve(m.rows * n);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out.cells.push_back(m.at(r, c));
    return out;
}

std::vector<double> row_tests(const ScoreMatrix& m, std::size_t r) {
    std::vector<double> out;
    out.reserve(m.cols);
    for (std::size_t c = 0; c < m.cols; ++c) out.push_back(m.at(r, c).test);
    return out;
}

double mean(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// direction of the rank evidence, >0 when a tends higher
double signed_rank_direction(std::span<const double> a, std::span<const double> b) {
    std::vector<double> abs_d;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d == 0.0) continue;
        abs_d.push_back(std::fabs(d));
        positive.push_back(d > 0.0);
    }
    if (abs_d.empty()) return 0.0;
    const auto ranks = average_ranks(abs_d);
    double w_plus = 0.0, w_minus = 0.0;
    for (std::size_t i = 0; i < abs_d.size(); ++i)
        (positive[i] ? w_plus : w_minus) += ranks[i];
    return w_plus - w_minus;
}

double rank_sum_direction(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = average_ranks(pooled);
    double ra = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) ra += ranks[i];
    const double ua = ra - 0.5 * static_cast<double>(a.size()) * static_cast<double>(a.size() + 1);
    return ua - (static_cast<double>(a.size()) * static_cast<double>(b.size()) - ua);
}

}  // namespace

std::size_t select_best_index(std::span<const RunRecord> row) {
    if (row.empty())
        throw std::invalid_argument("select_best: empty row");
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i)
        if (row[i].dev > row[best].dev) best = i;
    return best;
}

const RunRecord& select_best(std::span<const RunRecord> row) {
    return row[select_best_index(row)];
}

ProtocolReport run_eval1(const ScoreMatrix& a, const ScoreMatrix& b,
                         const ProtocolOptions& opts) {
    check_shapes(a, b);
    const bool tested = opts.method != PairedTest::none;
    PairTally tally;
    tally.deltas.reserve(a.cells.size());
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) {
            const RunRecord& ra = a.at(r, c);
            const RunRecord& rb = b.at(r, c);
            std::optional<SigTestResult> res;
            if (tested) {
                const std::uint64_t seed = derive_stream(opts.seed, r * a.cols + c);
                res = run_paired(opts.method, require_stats(ra), require_stats(rb), opts, seed);
            }
            tally.observe(ra, rb, res, opts.p_threshold);
        }
    }
    ProtocolReport report;
    report.protocol = "eval1";
    report.p_threshold = opts.p_threshold;
    tally.fill(report, tested);
    return report;
}

ProtocolReport run_eval2(const ScoreMatrix& a, const ScoreMatrix& b,
                         const ProtocolOptions& opts) {
    check_shapes(a, b);
    const bool tested = opts.method != PairedTest::none;
    PairTally tally;
    tally.deltas.reserve(a.rows);
    std::vector<double> dev_deltas;
    dev_deltas.reserve(a.rows);
    for (std::size_t r = 0; r < a.rows; ++r) {
        const RunRecord& ra = a.at(r, select_best_index(a.row(r)));
        const RunRecord& rb = b.at(r, select_best_index(b.row(r)));
        std::optional<SigTestResult> res;
        if (tested) {
            const std::uint64_t seed = derive_stream(opts.seed, r);
            res = run_paired(opts.method, require_stats(ra), require_stats(rb), opts, seed);
        }
        tally.observe(ra, rb, res, opts.p_threshold);
        dev_deltas.push_back(std::fabs(ra.dev - rb.dev));
    }
    ProtocolReport report;
    report.protocol = "eval2";
    report.p_threshold = opts.p_threshold;
    tally.fill(report, tested);
    report.delta95_dev = percentile(dev_deltas, 0.95);

    const auto dev_a = column(a, true);
    const auto test_a = column(a, false);
    report.spearman_dev_test = safe_spearman(dev_a, test_a);
    std::vector<double> dev_all = dev_a, test_all = test_a;
    const auto dev_b = column(b, true);
    const auto test_b = column(b, false);
    dev_all.insert(dev_all.end(), dev_b.begin(), dev_b.end());
    test_all.insert(test_all.end(), test_b.begin(), test_b.end());
    report.spearman_dev_test_pooled = safe_spearman(dev_all, test_all);
    return report;
}

DistComparison run_eval3(std::span<const double> a_scores,
                         std::span<const double> b_scores, double p_threshold) {
    DistComparison cmp;
    cmp.test = welch_t(a_scores, b_scores);
    cmp.mean_a = mean(a_scores);
    cmp.mean_b = mean(b_scores);
    cmp.a_better = cmp.mean_a > cmp.mean_b;
    cmp.significant = cmp.test.p_value < p_threshold && cmp.mean_a != cmp.mean_b;
    return cmp;
}

DistComparison run_eval4(std::span<const double> a_scores,
                         std::span<const double> b_scores,
                         bool paired, double p_threshold) {
    if (a_scores.size() < 6 || b_scores.size() < 6)
        throw std::invalid_argument(
            "Evaluation 4 needs at least 6 models per side for a two-tailed "
            "test to reach p < 0.05");
    DistComparison cmp;
    double direction = 0.0;
    if (paired) {
        cmp.test = wilcoxon_signed_rank(a_scores, b_scores);
        direction = signed_rank_direction(a_scores, b_scores);
    } else {
        cmp.test = mann_whitney_u(a_scores, b_scores);
        direction = rank_sum_direction(a_scores, b_scores);
    }
    cmp.mean_a = mean(a_scores);
    cmp.mean_b = mean(b_scores);
    cmp.a_better = direction > 0.0;
    cmp.significant = cmp.test.p_value < p_threshold && direction != 0.0;
    return cmp;
}

namespace {

ProtocolReport distribution_matrix_report(const ScoreMatrix& a, const ScoreMatrix& b,
                                          double p_threshold, bool eval4, bool paired) {
    check_shapes(a, b);
    std::vector<double> deltas;
    deltas.reserve(a.rows);
    std::int64_t significant = 0;
    for (std::size_t r = 0; r < a.rows; ++r) {
        const auto xs = row_tests(a, r);
        const auto ys = row_tests(b, r);
        const DistComparison cmp = eval4 ? run_eval4(xs, ys, paired, p_threshold)
                                         : run_eval3(xs, ys, p_threshold);
        if (cmp.significant) ++significant;
        deltas.push_back(std::fabs(cmp.mean_a - cmp.mean_b));
    }
    ProtocolReport report;
    report.protocol = eval4 ? "eval4" : "eval3";
    report.p_threshold = p_threshold;
    report.trials = static_cast<std::int64_t>(a.rows);
    report.pct_significant = static_cast<double>(significant) / static_cast<double>(a.rows);
    report.delta95_test = percentile(deltas, 0.95);
    report.delta_max = *std::max_element(deltas.begin(), deltas.end());
    return report;
}

}  // namespace

ProtocolReport run_eval3_matrix(const ScoreMatrix& a, const ScoreMatrix& b,
                                double p_threshold) {
    return distribution_matrix_report(a, b, p_threshold, false, false);
}

ProtocolReport run_eval4_matrix(const ScoreMatrix& a, const ScoreMatrix& b,
                                bool paired, double p_threshold) {
    return distribution_matrix_report(a, b, p_threshold, true, paired);
}

std::vector<SweepPoint> sweep_n(const ScoreMatrix& a, const ScoreMatrix& b,
                                std::span<const std::int64_t> n_values,
                                const ProtocolOptions& opts) {
    check_shapes(a, b);
    if (opts.method == PairedTest::none)
        throw std::invalid_argument("sweep_n requires a significance test");
    std::vector<SweepPoint> curve;
    curve.reserve(n_values.size());
    for (const std::int64_t n : n_values) {
        if (n < 1 || static_cast<std::size_t>(n) > a.cols)
            throw std::invalid_argument("sweep_n: n = " + std::to_string(n)
                                        + " outside matrix width");
        const auto sliced_a = first_columns(a, static_cast<std::size_t>(n));
        const auto sliced_b = first_columns(b, static_cast<std::size_t>(n));
        const ProtocolReport report = run_eval2(sliced_a, sliced_b, opts);
        curve.push_back({n, *report.pct_significant});
    }
    return curve;
}

std::vector<MeanDeltaPoint> mean_delta95(const ScoreMatrix& a, const ScoreMatrix& b,
                                         std::span<const std::int64_t> n_values) {
    check_shapes(a, b);
    std::vector<MeanDeltaPoint> out;
    out.reserve(n_values.size());
    for (const std::int64_t n : n_values) {
        if (n < 1 || static_cast<std::size_t>(n) > a.cols)
            throw std::invalid_argument("mean_delta95: n = " + std::to_string(n)
                                        + " outside matrix width");
        std::vector<double> deltas;
        deltas.reserve(a.rows);
        for (std::size_t r = 0; r < a.rows; ++r) {
            double ma = 0, mb = 0;
            for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) {
                ma += a.at(r, c).test;
                mb += b.at(r, c).test;
            }
            deltas.push_back(std::fabs(ma - mb) / static_cast<double>(n));
        }
        out.push_back({n, percentile(deltas, 0.95)});
    }
    return out;
}

}  // namespace scorecmp
