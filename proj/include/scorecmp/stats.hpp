#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

// Metric definitions over per-instance sufficient statistics, plus the
// shared descriptive statistics (percentiles, ranks, Spearman's rho).
//
// Scores are percentage points on a [0, 100] scale throughout.

namespace scorecmp {

using Score = double;

enum class MetricMode { span_f1, accuracy };

// Sufficient statistics of one evaluation instance (typically a sentence).
// span_f1 mode uses tp/fp/fn; accuracy mode uses correct/total. Any multiset
// of same-mode stats aggregates component-wise.
struct InstanceStats {
    MetricMode mode = MetricMode::span_f1;
    std::uint32_t tp = 0, fp = 0, fn = 0;
    std::uint32_t correct = 0, total = 0;

    static InstanceStats spans(std::uint32_t tp, std::uint32_t fp, std::uint32_t fn);
    static InstanceStats counts(std::uint32_t correct, std::uint32_t total);

    bool operator==(const InstanceStats&) const = default;
};

// Running 64-bit aggregate; the workhorse for resampling loops.
struct StatsSums {
    MetricMode mode = MetricMode::span_f1;
    std::int64_t tp = 0, fp = 0, fn = 0;
    std::int64_t correct = 0, total = 0;

    void add(const InstanceStats& s) {
        tp += s.tp; fp += s.fp; fn += s.fn;
        correct += s.correct; total += s.total;
    }
    void sub(const InstanceStats& s) {
        tp -= s.tp; fp -= s.fp; fn -= s.fn;
        correct -= s.correct; total -= s.total;
    }
    void clear() { tp = fp = fn = correct = total = 0; }

    Score score() const;
};

InstanceStats aggregate(std::span<const InstanceStats> stats);

Score f1_from_stats(std::span<const InstanceStats> stats);
Score accuracy_from_stats(std::span<const InstanceStats> stats);
// dispatches on the (uniform) mode of the sequence
Score score_from_stats(std::span<const InstanceStats> stats);

// Nearest-rank percentile: sort ascending, return the element at 1-based
// index ceil(q*n). No interpolation; the result is always a member of the
// input. q must lie in (0, 1].
double percentile(std::span<const double> values, double q);

// 1-based ranks with ties assigned the mean of their rank range.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average-ranked values. Requires equal lengths
// >= 2 and a non-constant sequence on each side.
double spearman_rho(std::span<const double> x, std::span<const double> y);

// --- packed per-instance outcomes -----------------------------------------

// One bit per instance; tail bits of the last word stay zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

// Per-instance outcomes of one run on one evaluation set. Accuracy-mode
// sequences whose instances all have total == 1 are canonicalized to a
// packed bit layout, so a series built from an explicit InstanceStats
// vector and one built directly from bits behave identically everywhere
// (including under seeded resampling).
class InstanceSeries {
public:
    InstanceSeries() = default;
    explicit InstanceSeries(std::vector<InstanceStats> items);
    static InstanceSeries accuracy_bits(BitVec bits);

    MetricMode mode() const { return mode_; }
    std::size_t size() const { return size_; }
    bool packed() const { return packed_; }

    const BitVec& bits() const;                        // packed layout only
    const std::vector<InstanceStats>& items() const;   // unpacked layout only
    InstanceStats at(std::size_t i) const;
    std::vector<InstanceStats> materialize() const;

    StatsSums sums() const;
    Score score() const;

private:
    MetricMode mode_ = MetricMode::span_f1;
    std::size_t size_ = 0;
    bool packed_ = false;
    std::vector<InstanceStats> items_;
    BitVec bits_;
};

}  // namespace scorecmp
