// scorecmp: compares learning approaches through score distributions rather
// than single model scores. See README.md for the file formats.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scorecmp/conll.hpp"
#include "scorecmp/error.hpp"
#include "scorecmp/predint.hpp"
#include "scorecmp/protocols.hpp"
#include "scorecmp/report.hpp"
#include "scorecmp/score_table.hpp"
#include "scorecmp/synthgen.hpp"

namespace sc = scorecmp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSignificant = 1;
constexpr int kExitInputError = 2;
constexpr int kExitPreconditionError = 3;

std::string fixed2(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << v;
    return out.str();
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sc::ParseError("cannot open '" + path + "'");
    return in;
}

void emit_report(const sc::Report& report, const std::string& json_target) {
    if (json_target.empty()) return;
    const std::string text = report.to_json().dump(2) + "\n";
    if (json_target == "-") {
        std::cout << text;
    } else {
        std::ofstream out(json_target, std::ios::binary);
        if (!out) throw sc::ParseError("cannot write '" + json_target + "'");
        out << text;
    }
}

sc::PairedTest parse_paired_test(const std::string& name) {
    if (name == "bootstrap") return sc::PairedTest::bootstrap;
    if (name == "ar" || name == "approx_rand") return sc::PairedTest::approx_rand;
    if (name == "exact" || name == "exact_rand") return sc::PairedTest::exact_rand;
    if (name == "none") return sc::PairedTest::none;
    throw CLI::ValidationError("--test", "unknown test '" + name + "'");
}

struct EvalInputs {
    std::string synthetic_cfg;
    std::vector<std::string> csv_paths;
    std::string approach_a, approach_b;
};

struct LoadedMatrices {
    sc::ScoreMatrix a, b;
    std::vector<sc::InputDigest> digests;
    bool synthetic = false;
};

LoadedMatrices load_matrices(const EvalInputs& in) {
    LoadedMatrices out;
    if (!in.synthetic_cfg.empty()) {
        auto stream = open_input(in.synthetic_cfg);
        const auto cfg = sc::parse_synthetic_config(stream);
        auto pop = sc::generate_population(cfg);
        out.a = std::move(pop.a);
        out.b = std::move(pop.b);
        out.digests.push_back(sc::digest_file(in.synthetic_cfg));
        out.synthetic = true;
        return out;
    }
    if (in.csv_paths.size() != 2)
        throw CLI::ValidationError("inputs",
                                   "expected two score CSV files or --synthetic CFG");
    auto pick = [](const std::string& path, const std::string& wanted) {
        auto stream = open_input(path);
        const auto table = sc::parse_score_csv(stream);
        std::string approach = wanted;
        if (approach.empty()) {
            const auto all = table.approaches();
            if (all.size() != 1)
                throw sc::ParseError("'" + path + "' holds " + std::to_string(all.size())
                                     + " approaches; pick one with --approach-a/--approach-b");
            approach = all.front();
        }
        return sc::table_to_matrix(table, approach);
    };
    out.a = pick(in.csv_paths[0], in.approach_a);
    out.b = pick(in.csv_paths[1], in.approach_b);
    out.digests.push_back(sc::digest_file(in.csv_paths[0]));
    out.digests.push_back(sc::digest_file(in.csv_paths[1]));
    return out;
}

sc::ScoreMatrix head_columns(const sc::ScoreMatrix& m, std::size_t n) {
    sc::ScoreMatrix out;
    out.approach_id = m.approach_id;
    out.rows = m.rows;
    out.cols = n;
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) out.cells.push_back(m.at(r, c));
    return out;
}

std::vector<double> all_test_scores(const sc::ScoreMatrix& m) {
    std::vector<double> out;
    out.reserve(m.cells.size());
    for (const auto& c : m.cells) out.push_back(c.test);
    return out;
}

void print_protocol_report(const sc::ProtocolReport& r) {
    std::cout << sc::markdown_protocol_table(r);
    std::cout << "trials " << r.trials << ", threshold p < " << r.p_threshold << "\n";
}

void print_comparison(const sc::DistComparison& c, double threshold) {
    std::cout << "method " << sc::test_method_name(c.test.method)
              << ", statistic " << fixed2(c.test.statistic)
              << ", p = " << c.test.p_value << "\n";
    std::cout << "mean a " << fixed2(c.mean_a) << ", mean b " << fixed2(c.mean_b) << "\n";
    if (c.significant)
        std::cout << "verdict: " << (c.a_better ? "a" : "b")
                  << " is superior at p < " << threshold << "\n";
    else
        std::cout << "verdict: no significant difference at p < " << threshold << "\n";
}

// ---- subcommand: score -----------------------------------------------------

struct ScoreArgs {
    std::string conll_path;
    std::string scheme = "bio";
    std::string per_sentence_path;
    std::string json_target;
};

int cmd_score(const ScoreArgs& args) {
    auto in = open_input(args.conll_path);
    const auto scheme = args.scheme == "iob2" ? sc::TagScheme::iob2_strict
                                              : sc::TagScheme::bio_lenient;
    const auto sentences = sc::parse_conll(in, scheme);
    std::vector<sc::InstanceStats> stats;
    stats.reserve(sentences.size());
    for (const auto& s : sentences) stats.push_back(sc::sentence_stats(s));
    const auto total = sc::aggregate(stats);
    const double p_den = total.tp + total.fp, r_den = total.tp + total.fn;
    const double precision = p_den > 0 ? 100.0 * total.tp / p_den : 0.0;
    const double recall = r_den > 0 ? 100.0 * total.tp / r_den : 0.0;
    const double f1 = sc::f1_from_stats(stats);

    std::cout << "sentences " << sentences.size() << ", gold spans "
              << total.tp + total.fn << ", predicted spans " << total.tp + total.fp << "\n";
    std::cout << "tp " << total.tp << ", fp " << total.fp << ", fn " << total.fn << "\n";
    std::cout << "precision " << fixed2(precision) << "%, recall " << fixed2(recall)
              << "%, f1 " << fixed2(f1) << "\n";

    if (!args.per_sentence_path.empty()) {
        std::ofstream out(args.per_sentence_path, std::ios::binary);
        if (!out) throw sc::ParseError("cannot write '" + args.per_sentence_path + "'");
        out << sc::serialize_sentence_stats_csv(stats);
        std::cout << "per-sentence stats written to " << args.per_sentence_path << "\n";
    }

    sc::Report report;
    report.command = "score";
    report.inputs = {sc::digest_file(args.conll_path)};
    report.results = {{"sentences", sentences.size()},
                      {"tp", total.tp},
                      {"fp", total.fp},
                      {"fn", total.fn},
                      {"precision", precision},
                      {"recall", recall},
                      {"f1", f1},
                      {"scheme", args.scheme == "iob2" ? "iob2_strict" : "bio_lenient"}};
    emit_report(report, args.json_target);
    return kExitOk;
}

// ---- subcommand: compare ---------------------------------------------------

struct CompareArgs {
    std::string stats_a, stats_b;
    std::string test = "bootstrap";
    std::int64_t resamples = 10000;
    std::uint64_t seed = 0;
    double p_threshold = 0.05;
    bool gate = false;
    std::string json_target;
};

int cmd_compare(const CompareArgs& args) {
    auto in_a = open_input(args.stats_a);
    auto in_b = open_input(args.stats_b);
    const auto a = sc::parse_sentence_stats_csv(in_a);
    const auto b = sc::parse_sentence_stats_csv(in_b);

    sc::SigTestResult res;
    switch (parse_paired_test(args.test)) {
        case sc::PairedTest::bootstrap:
            res = sc::paired_bootstrap(a, b, args.resamples, args.seed);
            break;
        case sc::PairedTest::approx_rand:
            res = sc::approx_randomization(a, b, args.resamples, args.seed);
            break;
        case sc::PairedTest::exact_rand:
            res = sc::exact_randomization(a, b);
            break;
        case sc::PairedTest::none:
            throw CLI::ValidationError("--test", "compare needs a test");
    }
    const double score_a = sc::f1_from_stats(a);
    const double score_b = sc::f1_from_stats(b);
    const bool significant = res.p_value < args.p_threshold && score_a != score_b;

    std::cout << "f1 a " << fixed2(score_a) << ", f1 b " << fixed2(score_b)
              << ", |delta| " << fixed2(std::abs(score_a - score_b)) << "\n";
    std::cout << "method " << sc::test_method_name(res.method) << ", p = " << res.p_value
              << (significant ? " (significant at p < " : " (not significant at p < ")
              << args.p_threshold << ")\n";

    sc::Report report;
    report.command = "compare";
    report.inputs = {sc::digest_file(args.stats_a), sc::digest_file(args.stats_b)};
    report.seed = args.seed;
    report.results = {{"test", sc::to_json(res)},
                      {"f1_a", score_a},
                      {"f1_b", score_b},
                      {"significant", significant},
                      {"p_threshold", args.p_threshold}};
    emit_report(report, args.json_target);
    return args.gate && significant ? kExitSignificant : kExitOk;
}

// ---- subcommand: eval ------------------------------------------------------

struct EvalArgs {
    int protocol = 0;
    EvalInputs inputs;
    std::string test = "bootstrap";
    std::int64_t resamples = 10000;
    std::uint64_t seed = 0;
    double p_threshold = 0.05;
    std::int64_t n = 0;  // 0: use the full width
    bool unpaired = false;
    bool gate = false;
    std::string dump_prefix;
    std::string json_target;
};

int cmd_eval(const EvalArgs& args) {
    auto loaded = load_matrices(args.inputs);
    if (!args.dump_prefix.empty()) {
        for (const auto* m : {&loaded.a, &loaded.b}) {
            const std::string path = args.dump_prefix
                + (m == &loaded.a ? "a.csv" : "b.csv");
            std::ofstream out(path, std::ios::binary);
            if (!out) throw sc::ParseError("cannot write '" + path + "'");
            out << sc::serialize_score_csv(sc::matrix_to_table(*m));
            std::cout << "scores written to " << path << "\n";
        }
    }
    if (args.n > 0) {
        if (static_cast<std::size_t>(args.n) > loaded.a.cols)
            throw std::invalid_argument("--n exceeds the matrix width");
        loaded.a = head_columns(loaded.a, static_cast<std::size_t>(args.n));
        loaded.b = head_columns(loaded.b, static_cast<std::size_t>(args.n));
    }

    sc::Report report;
    report.command = "eval" + std::to_string(args.protocol);
    report.inputs = loaded.digests;
    report.seed = args.seed;
    bool significant = false;

    if (args.protocol == 1 || args.protocol == 2) {
        sc::ProtocolOptions opts;
        opts.method = parse_paired_test(args.test);
        opts.p_threshold = args.p_threshold;
        opts.resamples = args.resamples;
        opts.seed = args.seed;
        const auto r = args.protocol == 1 ? sc::run_eval1(loaded.a, loaded.b, opts)
                                          : sc::run_eval2(loaded.a, loaded.b, opts);
        print_protocol_report(r);
        report.results = sc::to_json(r);
        significant = r.pct_significant.value_or(0.0) > 0.0;
    } else if (loaded.synthetic) {
        // row-wise Monte-Carlo application over the twin populations
        const auto r = args.protocol == 3
            ? sc::run_eval3_matrix(loaded.a, loaded.b, args.p_threshold)
            : sc::run_eval4_matrix(loaded.a, loaded.b, !args.unpaired, args.p_threshold);
        print_protocol_report(r);
        report.results = sc::to_json(r);
        significant = r.pct_significant.value_or(0.0) > 0.0;
    } else {
        const auto xs = all_test_scores(loaded.a);
        const auto ys = all_test_scores(loaded.b);
        const auto cmp = args.protocol == 3
            ? sc::run_eval3(xs, ys, args.p_threshold)
            : sc::run_eval4(xs, ys, !args.unpaired, args.p_threshold);
        print_comparison(cmp, args.p_threshold);
        report.results = sc::to_json(cmp);
        significant = cmp.significant;
    }
    emit_report(report, args.json_target);
    return args.gate && significant ? kExitSignificant : kExitOk;
}

// ---- subcommand: sweep -----------------------------------------------------

struct SweepArgs {
    EvalInputs inputs;
    std::vector<std::int64_t> n_list;
    std::string test = "bootstrap";
    std::int64_t resamples = 10000;
    std::uint64_t seed = 0;
    double p_threshold = 0.05;
    std::string json_target;
};

int cmd_sweep(const SweepArgs& args) {
    const auto loaded = load_matrices(args.inputs);

    std::vector<sc::SweepPoint> pct_curve;
    const auto method = parse_paired_test(args.test);
    const bool can_test = method != sc::PairedTest::none && loaded.synthetic;
    if (can_test) {
        sc::ProtocolOptions opts;
        opts.method = method;
        opts.p_threshold = args.p_threshold;
        opts.resamples = args.resamples;
        opts.seed = args.seed;
        pct_curve = sc::sweep_n(loaded.a, loaded.b, args.n_list, opts);
    } else {
        std::cout << "(no per-instance stats: emitting the mean-delta table only)\n";
    }
    const auto delta_curve = sc::mean_delta95(loaded.a, loaded.b, args.n_list);

    std::cout << sc::markdown_sweep_table(pct_curve, delta_curve);

    sc::Report report;
    report.command = "sweep";
    report.inputs = loaded.digests;
    report.seed = args.seed;
    auto pct_json = nlohmann::json::array();
    for (const auto& p : pct_curve)
        pct_json.push_back({{"n", p.n}, {"pct_significant", p.pct_significant}});
    auto delta_json = nlohmann::json::array();
    for (const auto& d : delta_curve)
        delta_json.push_back({{"n", d.n}, {"delta95", d.delta95}});
    report.results = {{"pct_significant", pct_json},
                      {"mean_delta95", delta_json},
                      {"p_threshold", args.p_threshold}};
    emit_report(report, args.json_target);
    return kExitOk;
}

// ---- subcommand: predint ---------------------------------------------------

struct PredintArgs {
    std::string csv_path;
    std::string approach;
    double pair_confidence = 0.05;
    std::string json_target;
};

int cmd_predint(const PredintArgs& args) {
    auto in = open_input(args.csv_path);
    const auto table = sc::parse_score_csv(in);
    std::vector<sc::DevTestPoint> points;
    for (const auto& row : table.rows) {
        if (!args.approach.empty() && row.approach != args.approach) continue;
        points.push_back({row.dev, row.test});
    }
    if (points.empty())
        throw sc::ParseError("no rows match approach '" + args.approach + "'");

    const auto summary = sc::interval_width_summary(points, args.pair_confidence);
    std::cout << sc::markdown_predint_table(summary);
    std::cout << "fit: test = " << summary.fit.slope << " * dev + "
              << summary.fit.intercept << ", residual sd " << fixed2(summary.fit.s_y)
              << "\n";

    sc::Report report;
    report.command = "predint";
    report.inputs = {sc::digest_file(args.csv_path)};
    report.results = sc::to_json(summary);
    report.results["pair_confidence"] = args.pair_confidence;
    emit_report(report, args.json_target);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compare learning approaches via score distributions"};
    app.require_subcommand(1);

    ScoreArgs score_args;
    auto* score = app.add_subcommand("score", "score a CoNLL file (gold + predicted tags)");
    score->add_option("conll", score_args.conll_path, "CoNLL column file")->required();
    score->add_option("--scheme", score_args.scheme, "tag scheme: bio (lenient) or iob2 (strict)")
        ->check(CLI::IsMember({"bio", "iob2"}));
    score->add_option("--per-sentence", score_args.per_sentence_path,
                      "write per-sentence tp/fp/fn CSV here");
    score->add_option("--json", score_args.json_target, "write the JSON report (- for stdout)");

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare",
                                       "significance-test two per-sentence stats files");
    compare->add_option("stats-a", compare_args.stats_a, "per-sentence stats CSV")->required();
    compare->add_option("stats-b", compare_args.stats_b, "per-sentence stats CSV")->required();
    compare->add_option("--test", compare_args.test, "bootstrap, ar, or exact")
        ->check(CLI::IsMember({"bootstrap", "ar", "exact"}));
    compare->add_option("--resamples", compare_args.resamples, "resample count (default 10000)");
    compare->add_option("--seed", compare_args.seed, "random seed");
    compare->add_option("--p-threshold", compare_args.p_threshold, "significance threshold");
    compare->add_flag("--gate", compare_args.gate, "exit 1 when significant");
    compare->add_option("--json", compare_args.json_target, "write the JSON report (- for stdout)");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "run one of the four evaluation protocols");
    eval->add_option("--protocol", eval_args.protocol, "1, 2, 3 or 4")
        ->required()->check(CLI::Range(1, 4));
    eval->add_option("csv", eval_args.inputs.csv_paths, "score CSVs for approaches a and b")
        ->expected(0, 2);
    eval->add_option("--synthetic", eval_args.inputs.synthetic_cfg,
                     "generate twin populations from this config file");
    eval->add_option("--approach-a", eval_args.inputs.approach_a, "approach id in the first CSV");
    eval->add_option("--approach-b", eval_args.inputs.approach_b, "approach id in the second CSV");
    eval->add_option("--test", eval_args.test, "bootstrap, ar, exact, or none (protocols 1-2)")
        ->check(CLI::IsMember({"bootstrap", "ar", "exact", "none"}));
    eval->add_option("--resamples", eval_args.resamples, "resample count (default 10000)");
    eval->add_option("--seed", eval_args.seed, "random seed");
    eval->add_option("--p-threshold", eval_args.p_threshold, "significance threshold");
    eval->add_option("--n", eval_args.n, "restrict to the first n columns");
    eval->add_flag("--unpaired", eval_args.unpaired, "protocol 4: use Mann-Whitney");
    eval->add_flag("--gate", eval_args.gate, "exit 1 when a significant difference is found");
    eval->add_option("--dump-scores", eval_args.dump_prefix,
                     "write the evaluated matrices as score CSVs <prefix>a.csv, <prefix>b.csv");
    eval->add_option("--json", eval_args.json_target, "write the JSON report (- for stdout)");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "protocol-2 significance and mean-delta curves over n");
    sweep->add_option("--n-list", sweep_args.n_list, "comma-separated n values")
        ->required()->delimiter(',');
    sweep->add_option("csv", sweep_args.inputs.csv_paths, "score CSVs for approaches a and b")
        ->expected(0, 2);
    sweep->add_option("--synthetic", sweep_args.inputs.synthetic_cfg, "synthetic config file");
    sweep->add_option("--approach-a", sweep_args.inputs.approach_a, "approach id in the first CSV");
    sweep->add_option("--approach-b", sweep_args.inputs.approach_b, "approach id in the second CSV");
    sweep->add_option("--test", sweep_args.test, "bootstrap, ar, exact, or none");
    sweep->add_option("--resamples", sweep_args.resamples, "resample count");
    sweep->add_option("--seed", sweep_args.seed, "random seed");
    sweep->add_option("--p-threshold", sweep_args.p_threshold, "significance threshold");
    sweep->add_option("--json", sweep_args.json_target, "write the JSON report (- for stdout)");

    PredintArgs predint_args;
    auto* predint = app.add_subcommand("predint", "dev-to-test prediction interval width");
    predint->add_option("csv", predint_args.csv_path, "score CSV with dev/test pairs")->required();
    predint->add_option("--approach", predint_args.approach, "restrict to one approach id");
    predint->add_option("--pair-confidence", predint_args.pair_confidence,
                        "two-point band-miss probability (default 0.05)");
    predint->add_option("--json", predint_args.json_target, "write the JSON report (- for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*score) return cmd_score(score_args);
        if (*compare) return cmd_compare(compare_args);
        if (*eval) return cmd_eval(eval_args);
        if (*sweep) return cmd_sweep(sweep_args);
        if (*predint) return cmd_predint(predint_args);
    } catch (const sc::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitPreconditionError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitPreconditionError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPreconditionError;
    }
    return kExitOk;
}
