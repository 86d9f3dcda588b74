#include "scorecmp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace scorecmp {

InstanceStats InstanceStats::spans(std::uint32_t tp, std::uint32_t fp, std::uint32_t fn) {
    InstanceStats s;
    s.mode = MetricMode::span_f1;
    s.tp = tp; s.fp = fp; s.fn = fn;
    return s;
}

InstanceStats InstanceStats::counts(std::uint32_t correct, std::uint32_t total) {
    if (correct > total)
        throw std::invalid_argument("InstanceStats: correct exceeds total");
    InstanceStats s;
    s.mode = MetricMode::accuracy;
    s.correct = correct; s.total = total;
    return s;
}

Score StatsSums::score() const {
    if (mode == MetricMode::accuracy) {
        if (total <= 0) return 0.0;
        return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
    }
    const double p_den = static_cast<double>(tp + fp);
    const double r_den = static_cast<double>(tp + fn);
    const double p = p_den > 0.0 ? static_cast<double>(tp) / p_den : 0.0;
    const double r = r_den > 0.0 ? static_cast<double>(tp) / r_den : 0.0;
    if (p + r == 0.0) return 0.0;
    return 200.0 * p * r / (p + r);
}

namespace {

StatsSums sum_all(std::span<const InstanceStats> stats) {
    if (stats.empty())
        throw std::invalid_argument("empty stats sequence");
    StatsSums sums;
    sums.mode = stats.front().mode;
    for (const auto& s : stats) {
        if (s.mode != sums.mode)
            throw std::invalid_argument("mixed metric modes in stats sequence");
        sums.add(s);
    }
    return sums;
}

}  // namespace

InstanceStats aggregate(std::span<const InstanceStats> stats) {
    const StatsSums sums = sum_all(stats);
    InstanceStats out;
    out.mode = sums.mode;
    out.tp = static_cast<std::uint32_t>(sums.tp);
    out.fp = static_cast<std::uint32_t>(sums.fp);
    out.fn = static_cast<std::uint32_t>(sums.fn);
    out.correct = static_cast<std::uint32_t>(sums.correct);
    out.total = static_cast<std::uint32_t>(sums.total);
    return out;
}

Score f1_from_stats(std::span<const InstanceStats> stats) {
    const StatsSums sums = sum_all(stats);
    if (sums.mode != MetricMode::span_f1)
        throw std::invalid_argument("f1_from_stats requires span_f1 mode");
    return sums.score();
}

Score accuracy_from_stats(std::span<const InstanceStats> stats) {
    const StatsSums sums = sum_all(stats);
    if (sums.mode != MetricMode::accuracy)
        throw std::invalid_argument("accuracy_from_stats requires accuracy mode");
    return sums.score();
}

Score score_from_stats(std::span<const InstanceStats> stats) {
    return sum_all(stats).score();
}

double percentile(std::span<const double> values, double q) {
    if (values.empty())
        throw std::invalid_argument("percentile of empty sequence");
    if (!(q > 0.0) || q > 1.0)
        throw std::invalid_argument("percentile fraction must lie in (0, 1]");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    // the epsilon absorbs binary round-off of q*n at integer boundaries
    auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(v.size()) - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, v.size());
    return v[rank - 1];
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("spearman_rho: length mismatch");
    if (x.size() < 2)
        throw std::invalid_argument("spearman_rho: need at least 2 points");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += rx[i]; my += ry[i]; }
    mx /= n; my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mx, dy = ry[i] - my;
        sxx += dx * dx; syy += dy * dy; sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("spearman_rho: constant input, correlation undefined");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// --- InstanceSeries --------------------------------------------------------

InstanceSeries::InstanceSeries(std::vector<InstanceStats> items) {
    if (items.empty())
        throw std::invalid_argument("empty stats sequence");
    mode_ = items.front().mode;
    bool unit_totals = mode_ == MetricMode::accuracy;
    for (const auto& s : items) {
        if (s.mode != mode_)
            throw std::invalid_argument("mixed metric modes in stats sequence");
        if (s.mode == MetricMode::accuracy && s.correct > s.total)
            throw std::invalid_argument("InstanceStats: correct exceeds total");
        unit_totals = unit_totals && s.total == 1;
    }
    size_ = items.size();
    if (unit_totals) {
        BitVec bits(size_);
        for (std::size_t i = 0; i < size_; ++i) bits.set(i, items[i].correct != 0);
        bits_ = std::move(bits);
        packed_ = true;
    } else {
        items_ = std::move(items);
    }
}

InstanceSeries InstanceSeries::accuracy_bits(BitVec bits) {
    if (bits.size() == 0)
        throw std::invalid_argument("empty stats sequence");
    InstanceSeries s;
    s.mode_ = MetricMode::accuracy;
    s.size_ = bits.size();
    s.packed_ = true;
    s.bits_ = std::move(bits);
    return s;
}

const BitVec& InstanceSeries::bits() const {
    if (!packed_) throw std::logic_error("InstanceSeries: not packed");
    return bits_;
}

const std::vector<InstanceStats>& InstanceSeries::items() const {
    if (packed_) throw std::logic_error("InstanceSeries: packed layout");
    return items_;
}

InstanceStats InstanceSeries::at(std::size_t i) const {
    if (packed_) return InstanceStats::counts(bits_.get(i) ? 1 : 0, 1);
    return items_[i];
}

std::vector<InstanceStats> InstanceSeries::materialize() const {
    std::vector<InstanceStats> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back(at(i));
    return out;
}

StatsSums InstanceSeries::sums() const {
    StatsSums sums;
    sums.mode = mode_;
    if (packed_) {
        sums.correct = static_cast<std::int64_t>(bits_.count());
        sums.total = static_cast<std::int64_t>(size_);
    } else {
        for (const auto& s : items_) sums.add(s);
    }
    return sums;
}

Score InstanceSeries::score() const { return sums().score(); }

}  // namespace scorecmp
