#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "scorecmp/conll.hpp"
#include "scorecmp/error.hpp"
#include "scorecmp/predint.hpp"
#include "scorecmp/protocols.hpp"
#include "scorecmp/score_table.hpp"
#include "scorecmp/synthgen.hpp"
#include "scorecmp/tdist.hpp"

namespace py = pybind11;
using namespace scorecmp;

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

TagScheme scheme_from_name(const std::string& name) {
    if (name == "bio" || name == "bio_lenient") return TagScheme::bio_lenient;
    if (name == "iob2" || name == "iob2_strict") return TagScheme::iob2_strict;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

PairedTest paired_test_from_name(const std::string& name) {
    if (name == "bootstrap") return PairedTest::bootstrap;
    if (name == "approx_rand" || name == "ar") return PairedTest::approx_rand;
    if (name == "exact_rand" || name == "exact") return PairedTest::exact_rand;
    if (name == "none") return PairedTest::none;
    throw std::invalid_argument("unknown test '" + name + "'");
}

ProtocolOptions make_options(const std::string& test, double p_threshold,
                             std::int64_t resamples, std::uint64_t seed) {
    ProtocolOptions opts;
    opts.method = paired_test_from_name(test);
    opts.p_threshold = p_threshold;
    opts.resamples = resamples;
    opts.seed = seed;
    return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "score-distribution comparison of learning approaches";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::enum_<MetricMode>(m, "MetricMode")
        .value("span_f1", MetricMode::span_f1)
        .value("accuracy", MetricMode::accuracy);

    py::class_<InstanceStats>(m, "InstanceStats")
        .def_static("spans", &InstanceStats::spans, py::arg("tp"), py::arg("fp"), py::arg("fn"))
        .def_static("counts", &InstanceStats::counts, py::arg("correct"), py::arg("total"))
        .def_readonly("mode", &InstanceStats::mode)
        .def_readonly("tp", &InstanceStats::tp)
        .def_readonly("fp", &InstanceStats::fp)
        .def_readonly("fn", &InstanceStats::fn)
        .def_readonly("correct", &InstanceStats::correct)
        .def_readonly("total", &InstanceStats::total)
        .def("__eq__", [](const InstanceStats& a, const InstanceStats& b) { return a == b; })
        .def("__repr__", [](const InstanceStats& s) {
            std::ostringstream out;
            if (s.mode == MetricMode::span_f1)
                out << "InstanceStats.spans(" << s.tp << ", " << s.fp << ", " << s.fn << ")";
            else
                out << "InstanceStats.counts(" << s.correct << ", " << s.total << ")";
            return out.str();
        });

    m.def("f1_from_stats",
          [](const std::vector<InstanceStats>& s) { return f1_from_stats(s); },
          py::arg("stats"));
    m.def("accuracy_from_stats",
          [](const std::vector<InstanceStats>& s) { return accuracy_from_stats(s); },
          py::arg("stats"));
    m.def("score_from_stats",
          [](const std::vector<InstanceStats>& s) { return score_from_stats(s); },
          py::arg("stats"));
    m.def("percentile",
          [](const std::vector<double>& v, double q) { return percentile(v, q); },
          py::arg("values"), py::arg("q"));
    m.def("spearman_rho",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return spearman_rho(x, y);
          },
          py::arg("x"), py::arg("y"));
    m.def("t_cdf", &t_cdf, py::arg("t"), py::arg("df"));
    m.def("t_quantile", &t_quantile, py::arg("p"), py::arg("df"));

    py::class_<SigTestResult>(m, "SigTestResult")
        .def_property_readonly("method",
                               [](const SigTestResult& r) { return test_method_name(r.method); })
        .def_readonly("statistic", &SigTestResult::statistic)
        .def_readonly("p_value", &SigTestResult::p_value)
        .def_readonly("resamples", &SigTestResult::resamples)
        .def_readonly("seed", &SigTestResult::seed)
        .def("__repr__", [](const SigTestResult& r) {
            std::ostringstream out;
            out << "SigTestResult(" << test_method_name(r.method) << ", p=" << r.p_value << ")";
            return out.str();
        });

    m.def("paired_bootstrap",
          [](const std::vector<InstanceStats>& a, const std::vector<InstanceStats>& b,
             std::int64_t resamples, std::uint64_t seed) {
              return paired_bootstrap(a, b, resamples, seed);
          },
          py::arg("a"), py::arg("b"), py::arg("resamples") = 10000, py::arg("seed") = 0);
    m.def("approx_randomization",
          [](const std::vector<InstanceStats>& a, const std::vector<InstanceStats>& b,
             std::int64_t resamples, std::uint64_t seed) {
              return approx_randomization(a, b, resamples, seed);
          },
          py::arg("a"), py::arg("b"), py::arg("resamples") = 10000, py::arg("seed") = 0);
    m.def("exact_randomization",
          [](const std::vector<InstanceStats>& a, const std::vector<InstanceStats>& b,
             std::size_t max_n) { return exact_randomization(a, b, max_n); },
          py::arg("a"), py::arg("b"), py::arg("max_n") = 20);
    m.def("welch_t",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return welch_t(x, y);
          },
          py::arg("x"), py::arg("y"));
    m.def("wilcoxon_signed_rank",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return wilcoxon_signed_rank(x, y);
          },
          py::arg("x"), py::arg("y"));
    m.def("mann_whitney_u",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return mann_whitney_u(x, y);
          },
          py::arg("x"), py::arg("y"));

    m.def("extract_spans",
          [](const std::vector<std::string>& tags) {
              std::vector<std::tuple<std::size_t, std::size_t, std::string>> out;
              for (const auto& s : extract_spans(tags)) out.emplace_back(s.start, s.end, s.label);
              return out;
          },
          py::arg("tags"));
    m.def("score_conll_file",
          [](const std::string& path, const std::string& scheme) {
              auto in = open_or_throw(path);
              const auto sentences = parse_conll(in, scheme_from_name(scheme));
              std::vector<InstanceStats> stats;
              for (const auto& s : sentences) stats.push_back(sentence_stats(s));
              const auto total = aggregate(stats);
              py::dict out;
              out["sentences"] = sentences.size();
              out["tp"] = total.tp;
              out["fp"] = total.fp;
              out["fn"] = total.fn;
              out["f1"] = f1_from_stats(stats);
              out["per_sentence"] = stats;
              return out;
          },
          py::arg("path"), py::arg("scheme") = "bio");

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("run_id", &RunRecord::run_id)
        .def_readonly("dev", &RunRecord::dev)
        .def_readonly("test", &RunRecord::test);

    py::class_<ScoreMatrix>(m, "ScoreMatrix")
        .def_readonly("approach_id", &ScoreMatrix::approach_id)
        .def_readonly("rows", &ScoreMatrix::rows)
        .def_readonly("cols", &ScoreMatrix::cols)
        .def("cell", [](const ScoreMatrix& m, std::size_t r, std::size_t c) -> const RunRecord& {
                 if (r >= m.rows || c >= m.cols) throw py::index_error();
                 return m.at(r, c);
             },
             py::arg("row"), py::arg("col"), py::return_value_policy::reference_internal)
        .def("dev_scores", [](const ScoreMatrix& m) {
            std::vector<double> out;
            for (const auto& c : m.cells) out.push_back(c.dev);
            return out;
        })
        .def("test_scores", [](const ScoreMatrix& m) {
            std::vector<double> out;
            for (const auto& c : m.cells) out.push_back(c.test);
            return out;
        });

    m.def("load_score_matrix",
          [](const std::string& path, const std::string& approach) {
              auto in = open_or_throw(path);
              const auto table = parse_score_csv(in);
              std::string chosen = approach;
              if (chosen.empty()) {
                  const auto all = table.approaches();
                  if (all.size() != 1)
                      throw ParseError("file holds several approaches; name one");
                  chosen = all.front();
              }
              return table_to_matrix(table, chosen);
          },
          py::arg("path"), py::arg("approach") = "");

    py::enum_<InstanceModel>(m, "InstanceModel")
        .value("bernoulli_accuracy", InstanceModel::bernoulli_accuracy)
        .value("gaussian_additive", InstanceModel::gaussian_additive);

    py::class_<SyntheticConfig>(m, "SyntheticConfig")
        .def(py::init<>())
        .def_readwrite("true_mean", &SyntheticConfig::true_mean)
        .def_readwrite("true_sd", &SyntheticConfig::true_sd)
        .def_readwrite("dev_size", &SyntheticConfig::dev_size)
        .def_readwrite("test_size", &SyntheticConfig::test_size)
        .def_readwrite("rows", &SyntheticConfig::rows)
        .def_readwrite("cols", &SyntheticConfig::cols)
        .def_readwrite("seed", &SyntheticConfig::seed)
        .def_readwrite("instance_model", &SyntheticConfig::instance_model);

    m.def("default_synthetic_config", &default_synthetic_config);
    m.def("load_synthetic_config",
          [](const std::string& path) {
              auto in = open_or_throw(path);
              return parse_synthetic_config(in);
          },
          py::arg("path"));

    py::class_<SyntheticPopulation>(m, "SyntheticPopulation")
        .def_readonly("a", &SyntheticPopulation::a)
        .def_readonly("b", &SyntheticPopulation::b)
        .def_readonly("true_a", &SyntheticPopulation::true_a)
        .def_readonly("true_b", &SyntheticPopulation::true_b);

    m.def("generate_population", &generate_population, py::arg("config"));
    m.def("decompose",
          [](double dev, double test, double true_score) {
              RunRecord rec{"", dev, test, nullptr, nullptr};
              return decompose(rec, true_score);
          },
          py::arg("dev"), py::arg("test"), py::arg("true_score"));

    py::class_<ProtocolReport>(m, "ProtocolReport")
        .def_readonly("protocol", &ProtocolReport::protocol)
        .def_readonly("pct_significant", &ProtocolReport::pct_significant)
        .def_readonly("tau", &ProtocolReport::tau)
        .def_readonly("delta95_dev", &ProtocolReport::delta95_dev)
        .def_readonly("delta95_test", &ProtocolReport::delta95_test)
        .def_readonly("delta_max", &ProtocolReport::delta_max)
        .def_readonly("spearman_dev_test", &ProtocolReport::spearman_dev_test)
        .def_readonly("spearman_dev_test_pooled", &ProtocolReport::spearman_dev_test_pooled)
        .def_readonly("trials", &ProtocolReport::trials)
        .def_readonly("p_threshold", &ProtocolReport::p_threshold);

    py::class_<DistComparison>(m, "DistComparison")
        .def_readonly("test", &DistComparison::test)
        .def_readonly("mean_a", &DistComparison::mean_a)
        .def_readonly("mean_b", &DistComparison::mean_b)
        .def_readonly("a_better", &DistComparison::a_better)
        .def_readonly("significant", &DistComparison::significant);

    m.def("run_eval1",
          [](const ScoreMatrix& a, const ScoreMatrix& b, const std::string& test,
             double p_threshold, std::int64_t resamples, std::uint64_t seed) {
              return run_eval1(a, b, make_options(test, p_threshold, resamples, seed));
          },
          py::arg("a"), py::arg("b"), py::arg("test") = "bootstrap",
          py::arg("p_threshold") = 0.05, py::arg("resamples") = 10000, py::arg("seed") = 0);
    m.def("run_eval2",
          [](const ScoreMatrix& a, const ScoreMatrix& b, const std::string& test,
             double p_threshold, std::int64_t resamples, std::uint64_t seed) {
              return run_eval2(a, b, make_options(test, p_threshold, resamples, seed));
          },
          py::arg("a"), py::arg("b"), py::arg("test") = "bootstrap",
          py::arg("p_threshold") = 0.05, py::arg("resamples") = 10000, py::arg("seed") = 0);
    m.def("run_eval3",
          [](const std::vector<double>& a, const std::vector<double>& b, double p_threshold) {
              return run_eval3(a, b, p_threshold);
          },
          py::arg("a_scores"), py::arg("b_scores"), py::arg("p_threshold") = 0.05);
    m.def("run_eval4",
          [](const std::vector<double>& a, const std::vector<double>& b, bool paired,
             double p_threshold) { return run_eval4(a, b, paired, p_threshold); },
          py::arg("a_scores"), py::arg("b_scores"), py::arg("paired") = true,
          py::arg("p_threshold") = 0.05);
    m.def("run_eval3_matrix", &run_eval3_matrix, py::arg("a"), py::arg("b"),
          py::arg("p_threshold") = 0.05);
    m.def("run_eval4_matrix", &run_eval4_matrix, py::arg("a"), py::arg("b"),
          py::arg("paired") = true, py::arg("p_threshold") = 0.05);

    m.def("sweep_n",
          [](const ScoreMatrix& a, const ScoreMatrix& b, const std::vector<std::int64_t>& ns,
             const std::string& test, double p_threshold, std::int64_t resamples,
             std::uint64_t seed) {
              std::vector<std::pair<std::int64_t, double>> out;
              for (const auto& p :
                   sweep_n(a, b, ns, make_options(test, p_threshold, resamples, seed)))
                  out.emplace_back(p.n, p.pct_significant);
              return out;
          },
          py::arg("a"), py::arg("b"), py::arg("n_values"), py::arg("test") = "bootstrap",
          py::arg("p_threshold") = 0.05, py::arg("resamples") = 10000, py::arg("seed") = 0);
    m.def("mean_delta95",
          [](const ScoreMatrix& a, const ScoreMatrix& b, const std::vector<std::int64_t>& ns) {
              std::vector<std::pair<std::int64_t, double>> out;
              for (const auto& p : mean_delta95(a, b, ns)) out.emplace_back(p.n, p.delta95);
              return out;
          },
          py::arg("a"), py::arg("b"), py::arg("n_values"));

    py::class_<LinearFit>(m, "LinearFit")
        .def_readonly("slope", &LinearFit::slope)
        .def_readonly("intercept", &LinearFit::intercept)
        .def_readonly("n", &LinearFit::n)
        .def_readonly("s_y", &LinearFit::s_y)
        .def_readonly("s_x", &LinearFit::s_x)
        .def_readonly("mean_x", &LinearFit::mean_x)
        .def("predict", &LinearFit::predict, py::arg("dev"));

    py::class_<IntervalSummary>(m, "IntervalSummary")
        .def_readonly("fit", &IntervalSummary::fit)
        .def_readonly("alpha", &IntervalSummary::alpha)
        .def_readonly("mean_width", &IntervalSummary::mean_width);

    m.def("fit_dev_test",
          [](const std::vector<std::pair<double, double>>& pts) {
              std::vector<DevTestPoint> points;
              for (const auto& [d, t] : pts) points.push_back({d, t});
              return fit_dev_test(points);
          },
          py::arg("points"));
    m.def("prediction_interval", &prediction_interval, py::arg("fit"), py::arg("dev"),
          py::arg("alpha"));
    m.def("interval_width_summary",
          [](const std::vector<std::pair<double, double>>& pts, double pair_confidence) {
              std::vector<DevTestPoint> points;
              for (const auto& [d, t] : pts) points.push_back({d, t});
              return interval_width_summary(points, pair_confidence);
          },
          py::arg("points"), py::arg("pair_confidence") = 0.05);
}
