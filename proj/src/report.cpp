#include "scorecmp/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "scorecmp/error.hpp"

namespace scorecmp {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

InputDigest digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    std::ostringstream hex;
    hex << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0')
        << fnv1a64(bytes.data(), bytes.size());
    return {path, hex.str()};
}

namespace {

nlohmann::json finite_or_string(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

void put_optional(nlohmann::json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
}

std::string fixed2(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << v;
    return out.str();
}

std::string fixed3(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << v;
    return out.str();
}

}  // namespace

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["schema_version"] = "1";
    j["command"] = command;
    auto arr = nlohmann::json::array();
    for (const auto& in : inputs) arr.push_back({{"path", in.path}, {"digest", in.digest}});
    j["inputs"] = arr;
    if (seed) j["seed"] = *seed;
    j["results"] = results;
    return j;
}

Report Report::from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<std::string>() != "1")
        throw ParseError("unsupported report schema version");
    Report r;
    r.command = j.at("command").get<std::string>();
    for (const auto& in : j.at("inputs"))
        r.inputs.push_back({in.at("path").get<std::string>(),
                            in.at("digest").get<std::string>()});
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    r.results = j.at("results");
    return r;
}

nlohmann::json to_json(const SigTestResult& r) {
    nlohmann::json j;
    j["method"] = test_method_name(r.method);
    j["statistic"] = finite_or_string(r.statistic);
    j["p_value"] = r.p_value;
    if (r.resamples) j["resamples"] = *r.resamples;
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

nlohmann::json to_json(const ProtocolReport& r) {
    nlohmann::json j;
    j["protocol"] = r.protocol;
    put_optional(j, "pct_significant", r.pct_significant);
    put_optional(j, "tau", r.tau);
    put_optional(j, "delta95_dev", r.delta95_dev);
    j["delta95_test"] = r.delta95_test;
    j["delta_max"] = r.delta_max;
    put_optional(j, "spearman_dev_test", r.spearman_dev_test);
    put_optional(j, "spearman_dev_test_pooled", r.spearman_dev_test_pooled);
    j["trials"] = r.trials;
    j["p_threshold"] = r.p_threshold;
    return j;
}

nlohmann::json to_json(const DistComparison& c) {
    nlohmann::json j;
    j["test"] = to_json(c.test);
    j["mean_a"] = c.mean_a;
    j["mean_b"] = c.mean_b;
    j["a_better"] = c.a_better;
    j["significant"] = c.significant;
    return j;
}

nlohmann::json to_json(const LinearFit& f) {
    nlohmann::json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["n"] = f.n;
    j["s_y"] = f.s_y;
    j["s_x"] = f.s_x;
    j["mean_x"] = f.mean_x;
    return j;
}

nlohmann::json to_json(const IntervalSummary& s) {
    nlohmann::json j;
    j["fit"] = to_json(s.fit);
    j["alpha"] = s.alpha;
    j["mean_width"] = s.mean_width;
    return j;
}

std::string markdown_protocol_table(const ProtocolReport& r) {
    std::ostringstream out;
    const bool eval2 = r.protocol == "eval2";
    out << "| Protocol |";
    if (eval2) out << " Spearman rho |";
    out << " Threshold tau | % significant |";
    if (eval2) out << " Delta(dev)95 |";
    out << " Delta(test)95 | Delta(test)Max |\n";
    out << "|---|";
    for (int i = 0, cols = 4 + (eval2 ? 2 : 0); i < cols; ++i) out << "---|";
    out << "\n| " << r.protocol << " |";
    if (eval2)
        out << ' ' << (r.spearman_dev_test ? fixed3(*r.spearman_dev_test) : std::string("-")) << " |";
    out << ' ' << (r.tau ? fixed2(*r.tau) : std::string("-")) << " |";
    out << ' ' << (r.pct_significant ? fixed2(100.0 * *r.pct_significant) + "%" : std::string("-"))
        << " |";
    if (eval2)
        out << ' ' << (r.delta95_dev ? fixed2(*r.delta95_dev) : std::string("-")) << " |";
    out << ' ' << fixed2(r.delta95_test) << " | " << fixed2(r.delta_max) << " |\n";
    return out.str();
}

std::string markdown_sweep_table(const std::vector<SweepPoint>& pct,
                                 const std::vector<MeanDeltaPoint>& deltas) {
    std::ostringstream out;
    if (!pct.empty()) {
        out << "| n | % significant |\n|---|---|\n";
        for (const auto& p : pct)
            out << "| " << p.n << " | " << fixed2(100.0 * p.pct_significant) << "% |\n";
    }
    if (!deltas.empty()) {
        if (!pct.empty()) out << '\n';
        out << "| n | Delta95 of mean diff |\n|---|---|\n";
        for (const auto& d : deltas)
            out << "| " << d.n << " | " << fixed2(d.delta95) << " |\n";
    }
    return out.str();
}

std::string markdown_predint_table(const IntervalSummary& s) {
    std::ostringstream out;
    out << "| n | alpha | Predict. Interval (mean 2*zeta) |\n|---|---|---|\n";
    out << "| " << s.fit.n << " | " << fixed3(s.alpha) << " | " << fixed2(s.mean_width)
        << " |\n";
    return out.str();
}

}  // namespace scorecmp
