#include "scorecmp/synthgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "scorecmp/error.hpp"
#include "scorecmp/rng.hpp"

namespace scorecmp {

void SyntheticConfig::validate() const {
    if (dev_size < 1 || test_size < 1)
        throw std::invalid_argument("synthetic config: set sizes must be >= 1");
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("synthetic config: grid must be at least 1x1");
    if (!(true_sd >= 0.0))
        throw std::invalid_argument("synthetic config: true_sd must be >= 0");
    if (!std::isfinite(true_mean) || !std::isfinite(true_sd))
        throw std::invalid_argument("synthetic config: non-finite parameter");
}

SyntheticConfig default_synthetic_config() { return SyntheticConfig{}; }

namespace {

const char* model_name(InstanceModel m) {
    return m == InstanceModel::bernoulli_accuracy ? "bernoulli_accuracy" : "gaussian_additive";
}

InstanceModel model_from_name(const std::string& s, std::size_t line_no) {
    if (s == "bernoulli_accuracy") return InstanceModel::bernoulli_accuracy;
    if (s == "gaussian_additive") return InstanceModel::gaussian_additive;
    throw ParseError("line " + std::to_string(line_no) + ": unknown instance_model '" + s + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_num(const std::string& v, std::size_t line_no) {
    double out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" + v + "'");
    return out;
}

std::int64_t parse_count(const std::string& v, std::size_t line_no) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad count '" + v + "'");
    return out;
}

}  // namespace

SyntheticConfig parse_synthetic_config(std::istream& in) {
    SyntheticConfig cfg = default_synthetic_config();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "true_mean") cfg.true_mean = parse_num(value, line_no);
        else if (key == "true_sd") cfg.true_sd = parse_num(value, line_no);
        else if (key == "dev_size") cfg.dev_size = parse_count(value, line_no);
        else if (key == "test_size") cfg.test_size = parse_count(value, line_no);
        else if (key == "rows") cfg.rows = parse_count(value, line_no);
        else if (key == "cols") cfg.cols = parse_count(value, line_no);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_count(value, line_no));
        else if (key == "instance_model") cfg.instance_model = model_from_name(value, line_no);
        else throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

std::string serialize_synthetic_config(const SyntheticConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "true_mean = " << cfg.true_mean << '\n'
        << "true_sd = " << cfg.true_sd << '\n'
        << "dev_size = " << cfg.dev_size << '\n'
        << "test_size = " << cfg.test_size << '\n'
        << "rows = " << cfg.rows << '\n'
        << "cols = " << cfg.cols << '\n'
        << "seed = " << cfg.seed << '\n'
        << "instance_model = " << model_name(cfg.instance_model) << '\n';
    return out.str();
}

namespace {

void fill_row(ScoreMatrix& m, std::vector<double>& latent, std::size_t r,
              const SyntheticConfig& cfg, Xoshiro256ss& rng) {
    const auto cols = static_cast<std::size_t>(cfg.cols);
    const double dev_n = static_cast<double>(cfg.dev_size);
    const double test_n = static_cast<double>(cfg.test_size);
    const double p_bar = std::clamp(cfg.true_mean, 0.0, 100.0) / 100.0;
    const double dev_sd = 100.0 * std::sqrt(p_bar * (1.0 - p_bar) / dev_n);
    const double test_sd = 100.0 * std::sqrt(p_bar * (1.0 - p_bar) / test_n);

    for (std::size_t c = 0; c < cols; ++c) {
        RunRecord& cell = m.at(r, c);
        cell.run_id = m.approach_id + "[r" + std::to_string(r + 1)
            + "c" + std::to_string(c + 1) + "]";
        double true_score = cfg.true_mean + cfg.true_sd * rng.next_normal();
        if (cfg.instance_model == InstanceModel::bernoulli_accuracy) {
            true_score = std::clamp(true_score, 0.0, 100.0);
            const double p = true_score / 100.0;
            const std::int64_t dev_hits = rng.next_binomial(cfg.dev_size, p);
            cell.dev = 100.0 * static_cast<double>(dev_hits) / dev_n;
            BitVec bits(static_cast<std::size_t>(cfg.test_size));
            std::size_t hits = 0;
            for (std::size_t i = 0; i < bits.size(); ++i) {
                const bool hit = rng.next_bernoulli(p);
                bits.set(i, hit);
                hits += hit;
            }
            cell.test = 100.0 * static_cast<double>(hits) / test_n;
            cell.test_stats =
                std::make_shared<InstanceSeries>(InstanceSeries::accuracy_bits(std::move(bits)));
        } else {
            cell.dev = true_score + dev_sd * rng.next_normal();
            cell.test = true_score + test_sd * rng.next_normal();
        }
        latent[r * cols + c] = true_score;
    }
}

}  // namespace

SyntheticPopulation generate_population(const SyntheticConfig& cfg) {
    cfg.validate();
    const auto rows = static_cast<std::size_t>(cfg.rows);
    const auto cols = static_cast<std::size_t>(cfg.cols);

    SyntheticPopulation pop;
    pop.a.approach_id = "A";
    pop.b.approach_id = "A~";
    for (ScoreMatrix* m : {&pop.a, &pop.b}) {
        m->rows = rows;
        m->cols = cols;
        m->cells.resize(rows * cols);
    }
    pop.true_a.resize(rows * cols);
    pop.true_b.resize(rows * cols);

    for (std::size_t r = 0; r < rows; ++r) {
        Xoshiro256ss rng_a(derive_stream(cfg.seed, r));
        fill_row(pop.a, pop.true_a, r, cfg, rng_a);
        Xoshiro256ss rng_b(derive_stream(cfg.seed, rows + r));
        fill_row(pop.b, pop.true_b, r, cfg, rng_b);
    }
    return pop;
}

std::pair<Score, Score> decompose(const RunRecord& record, Score true_score) {
    return {record.dev - true_score, record.test - true_score};
}

}  // namespace scorecmp
