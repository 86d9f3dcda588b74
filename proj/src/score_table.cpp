#include "scorecmp/score_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "scorecmp/error.hpp"

namespace scorecmp {

namespace {

constexpr const char* kScoreHeader = "approach,row,col,dev,test";
constexpr const char* kStatsHeader = "sentence,tp,fp,fn";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::int64_t parse_int(const std::string& field, std::size_t line_no, const char* what) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what
                         + " '" + field + "'");
    return value;
}

double parse_score(const std::string& field, std::size_t line_no, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value))
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric " + what
                         + " '" + field + "'");
    return value;
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string read_header_line(std::istream& in, std::size_t& line_no) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("missing header line");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

std::vector<std::string> ScoreTable::approaches() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (std::find(out.begin(), out.end(), r.approach) == out.end())
            out.push_back(r.approach);
    return out;
}

ScoreTable parse_score_csv(std::istream& in) {
    std::size_t line_no = 0;
    if (read_header_line(in, line_no) != kScoreHeader)
        throw ParseError("expected header '" + std::string(kScoreHeader) + "'");

    ScoreTable table;
    std::set<std::tuple<std::string, std::int64_t, std::int64_t>> seen;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 5)
            throw ParseError("line " + std::to_string(line_no)
                             + ": expected 5 fields, got " + std::to_string(fields.size()));
        ScoreRow r;
        r.approach = fields[0];
        if (r.approach.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty approach id");
        r.row = parse_int(fields[1], line_no, "row index");
        r.col = parse_int(fields[2], line_no, "col index");
        if (r.row < 1 || r.col < 1)
            throw ParseError("line " + std::to_string(line_no) + ": indices are 1-based");
        r.dev = parse_score(fields[3], line_no, "dev score");
        r.test = parse_score(fields[4], line_no, "test score");
        if (!seen.insert({r.approach, r.row, r.col}).second)
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key ("
                             + r.approach + "," + std::to_string(r.row) + ","
                             + std::to_string(r.col) + ")");
        table.rows.push_back(std::move(r));
    }
    if (table.rows.empty())
        throw ParseError("score table has no records");

    // density: every approach must fill 1..R x 1..C exactly
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> extent;
    std::map<std::string, std::int64_t> counts;
    for (const auto& r : table.rows) {
        auto& e = extent[r.approach];
        e.first = std::max(e.first, r.row);
        e.second = std::max(e.second, r.col);
        ++counts[r.approach];
    }
    for (const auto& [approach, e] : extent) {
        if (counts[approach] != e.first * e.second)
            throw ParseError("approach '" + approach + "' is not a dense "
                             + std::to_string(e.first) + "x" + std::to_string(e.second)
                             + " rectangle");
    }
    return table;
}

std::string serialize_score_csv(const ScoreTable& table) {
    std::ostringstream out;
    out << kScoreHeader << '\n';
    for (const auto& r : table.rows)
        out << r.approach << ',' << r.row << ',' << r.col << ','
            << format_double(r.dev) << ',' << format_double(r.test) << '\n';
    return out.str();
}

ScoreMatrix table_to_matrix(const ScoreTable& table, const std::string& approach) {
    ScoreMatrix m;
    m.approach_id = approach;
    std::int64_t rows = 0, cols = 0;
    for (const auto& r : table.rows) {
        if (r.approach != approach) continue;
        rows = std::max(rows, r.row);
        cols = std::max(cols, r.col);
    }
    if (rows == 0)
        throw ParseError("approach '" + approach + "' not present in table");
    m.rows = static_cast<std::size_t>(rows);
    m.cols = static_cast<std::size_t>(cols);
    m.cells.resize(m.rows * m.cols);
    for (const auto& r : table.rows) {
        if (r.approach != approach) continue;
        auto& cell = m.at(static_cast<std::size_t>(r.row - 1),
                          static_cast<std::size_t>(r.col - 1));
        cell.run_id = approach + "[r" + std::to_string(r.row) + "c" + std::to_string(r.col) + "]";
        cell.dev = r.dev;
        cell.test = r.test;
    }
    return m;
}

ScoreTable matrix_to_table(const ScoreMatrix& m) {
    ScoreTable t;
    t.rows.reserve(m.rows * m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) {
            const auto& cell = m.at(r, c);
            t.rows.push_back({m.approach_id, static_cast<std::int64_t>(r + 1),
                              static_cast<std::int64_t>(c + 1), cell.dev, cell.test});
        }
    return t;
}

std::vector<InstanceStats> parse_sentence_stats_csv(std::istream& in) {
    std::size_t line_no = 0;
    if (read_header_line(in, line_no) != kStatsHeader)
        throw ParseError("expected header '" + std::string(kStatsHeader) + "'");
    std::vector<InstanceStats> out;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 4)
            throw ParseError("line " + std::to_string(line_no)
                             + ": expected 4 fields, got " + std::to_string(fields.size()));
        const auto tp = parse_int(fields[1], line_no, "tp");
        const auto fp = parse_int(fields[2], line_no, "fp");
        const auto fn = parse_int(fields[3], line_no, "fn");
        if (tp < 0 || fp < 0 || fn < 0)
            throw ParseError("line " + std::to_string(line_no) + ": negative count");
        out.push_back(InstanceStats::spans(static_cast<std::uint32_t>(tp),
                                           static_cast<std::uint32_t>(fp),
                                           static_cast<std::uint32_t>(fn)));
    }
    if (out.empty())
        throw ParseError("stats table has no records");
    return out;
}

std::string serialize_sentence_stats_csv(std::span<const InstanceStats> stats) {
    std::ostringstream out;
    out << kStatsHeader << '\n';
    for (std::size_t i = 0; i < stats.size(); ++i)
        out << (i + 1) << ',' << stats[i].tp << ',' << stats[i].fp << ','
            << stats[i].fn << '\n';
    return out.str();
}

}  // namespace scorecmp
