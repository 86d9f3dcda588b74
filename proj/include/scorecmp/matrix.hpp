#pragma once

#include <memory>
#include <string>
#include <vector>

#include "scorecmp/stats.hpp"

namespace scorecmp {

// One trained model: its dev and test scores and, when available, the
// per-instance statistics those scores aggregate.
struct RunRecord {
    std::string run_id;
    Score dev = 0.0;
    Score test = 0.0;
    std::shared_ptr<const InstanceSeries> dev_stats;   // optional
    std::shared_ptr<const InstanceSeries> test_stats;  // optional
};

// Dense rows x cols grid of runs of one approach; row j holds the j-th
// repetition of training the approach cols times.
struct ScoreMatrix {
    std::string approach_id;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<RunRecord> cells;  // row-major

    RunRecord& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
    const RunRecord& at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }

    std::span<const RunRecord> row(std::size_t r) const {
        return {cells.data() + r * cols, cols};
    }
};

}  // namespace scorecmp
