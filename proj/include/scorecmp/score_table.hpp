#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "scorecmp/matrix.hpp"
#include "scorecmp/stats.hpp"

// CSV ingestion and emission.
//
// Score tables use the exact header "approach,row,col,dev,test" with 1-based
// row/col indices forming a dense rectangle per approach. Per-sentence stats
// tables use the exact header "sentence,tp,fp,fn".

namespace scorecmp {

struct ScoreRow {
    std::string approach;
    std::int64_t row = 0;
    std::int64_t col = 0;
    Score dev = 0.0;
    Score test = 0.0;
};

struct ScoreTable {
    std::vector<ScoreRow> rows;

    std::vector<std::string> approaches() const;
};

ScoreTable parse_score_csv(std::istream& in);
std::string serialize_score_csv(const ScoreTable& table);

ScoreMatrix table_to_matrix(const ScoreTable& table, const std::string& approach);
ScoreTable matrix_to_table(const ScoreMatrix& m);

std::vector<InstanceStats> parse_sentence_stats_csv(std::istream& in);
std::string serialize_sentence_stats_csv(std::span<const InstanceStats> stats);

}  // namespace scorecmp
