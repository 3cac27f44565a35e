#include "synapse/arbitration.hpp"
#include "synapse/evaluation.hpp"
#include "synapse/metrics.hpp"
#include "synapse/oracle_analysis.hpp"
#include "synapse/panel_io.hpp"
#include "synapse/quantile_dist.hpp"
#include "synapse/report.hpp"
#include "synapse/synthetic_bench.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace synapse;

namespace {

QuantileLevels levels_or_default(const std::optional<std::vector<double>>& levels) {
    return levels ? QuantileLevels(*levels) : QuantileLevels();
}

QuantileForecast make_forecast(std::vector<double> values, const std::optional<std::vector<double>>& levels) {
    return QuantileForecast(levels_or_default(levels), std::move(values));
}

std::vector<double> to_vector(const QuantileForecast& f) { return {f.values().begin(), f.values().end()}; }

harness::EvaluationConfig make_config(std::uint64_t seed, std::size_t workers, std::size_t n_total,
                                      std::optional<std::size_t> window, bool use_backtest) {
    harness::EvaluationConfig config;
    config.seed = seed;
    config.workers = workers;
    config.arbitrator.n_total = n_total;
    config.arbitrator.window_capacity = window;
    config.use_backtest = use_backtest;
    return config;
}

py::dict row_to_dict(const harness::ReportRow& r) {
    py::dict d;
    d["method"] = r.method;
    d["group"] = r.group;
    d["crps"] = r.crps;
    d["mase"] = r.mase;
    d["panels"] = r.panels;
    d["wins"] = r.wins;
    d["losses"] = r.losses;
    d["ties"] = r.ties;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantile forecast arbitration: metrics, inverse-CDF sampling and evaluation";

    // Exceptions: validation problems surface as ValueError subclasses.
    static py::exception<Error> error(m, "SynapseError", PyExc_RuntimeError);
    static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            py::set_error(validation, e.what());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("decile_levels", &decile_levels);

    m.def("pinball_loss", &metrics::pinball_loss, py::arg("alpha"), py::arg("q_hat"), py::arg("y"));
    m.def("weighted_quantile_loss", &metrics::weighted_quantile_loss, py::arg("alpha"), py::arg("q_hat"), py::arg("y"));
    m.def(
        "crps",
        [](std::vector<double> values, double y, std::optional<std::vector<double>> levels) {
            return metrics::crps_timestep(make_forecast(std::move(values), levels), y);
        },
        py::arg("values"), py::arg("y"), py::arg("levels") = py::none());
    m.def(
        "mase",
        [](std::vector<double> point, std::vector<double> actuals, std::vector<double> context, std::size_t m) {
            return metrics::mase(point, actuals, context, m);
        },
        py::arg("point_forecasts"), py::arg("actuals"), py::arg("context"), py::arg("seasonality"));
    m.def(
        "lumpiness",
        [](std::vector<double> series, std::optional<std::size_t> width) {
            return metrics::lumpiness(series, width.value_or(metrics::default_tile_width(series.size())));
        },
        py::arg("series"), py::arg("tile_width") = py::none());
    m.def(
        "pearson",
        [](std::vector<double> xs, std::vector<double> ys) { return metrics::pearson_correlation(xs, ys); },
        py::arg("xs"), py::arg("ys"));

    py::class_<InverseCdf>(m, "InverseCdf")
        .def(py::init([](std::vector<double> values, std::optional<std::vector<double>> levels) {
                 return fit_inverse_cdf(make_forecast(std::move(values), levels));
             }),
             py::arg("values"), py::arg("levels") = py::none())
        .def("__call__", &InverseCdf::operator(), py::arg("p"))
        .def("__call__",
             [](const InverseCdf& f, const std::vector<double>& ps) {
                 std::vector<double> out;
                 out.reserve(ps.size());
                 for (double p : ps) out.push_back(f(p));
                 return out;
             })
        .def_property_readonly("knot_slopes",
                               [](const InverseCdf& f) { return std::vector<double>(f.knot_slopes().begin(), f.knot_slopes().end()); })
        .def_property_readonly("tail_slopes",
                               [](const InverseCdf& f) { return std::pair{f.lower_tail_slope(), f.upper_tail_slope()}; })
        .def(
            "sample",
            [](const InverseCdf& f, std::size_t n, std::uint64_t seed) {
                RandomStream rng(seed);
                return sample(f, n, rng);
            },
            py::arg("n"), py::arg("seed"));

    m.def(
        "empirical_quantiles",
        [](std::vector<double> samples, std::optional<std::vector<double>> levels) {
            return to_vector(empirical_quantiles(samples, levels_or_default(levels)));
        },
        py::arg("samples"), py::arg("levels") = py::none());

    m.def(
        "compute_weights",
        [](std::vector<double> scores, double temperature) {
            ArbitratorConfig config;
            config.softmax_temperature = temperature;
            const auto w = compute_weights(scores, config);
            return std::vector<double>(w.values().begin(), w.values().end());
        },
        py::arg("scores"), py::arg("temperature") = 1.0);
    m.def(
        "allocate_samples",
        [](std::vector<double> weights, std::size_t n_total) { return allocate_samples(WeightVector(weights), n_total); },
        py::arg("weights"), py::arg("n_total") = 1500);

    m.def(
        "arbitrate",
        [](const std::filesystem::path& path, std::uint64_t seed, std::size_t n_total, std::optional<std::size_t> window,
           const std::string& weighting, bool use_backtest) {
            const auto docs = io::load_panels(path);
            const auto config = make_config(seed, 1, n_total, window, use_backtest);
            const auto mode = parse_weighting_mode(weighting);
            py::list out;
            for (const auto& doc : docs) {
                const auto trace = harness::arbitrate_document(doc, config, mode);
                py::list quantiles, weights, counts, truth, branches;
                for (const auto& step : trace.steps) {
                    quantiles.append(to_vector(step.forecast));
                    weights.append(std::vector<double>(step.weights.values().begin(), step.weights.values().end()));
                    counts.append(step.sample_counts);
                    truth.append(step.simulated_truth);
                    branches.append(std::string(to_string(step.branch)));
                }
                py::dict d;
                d["series_id"] = doc.panel.series_id();
                d["models"] = trace.model_names;
                d["quantiles"] = quantiles;
                d["weights"] = weights;
                d["sample_counts"] = counts;
                d["simulated_truth"] = truth;
                d["branch"] = branches;
                out.append(d);
            }
            return out;
        },
        py::arg("path"), py::arg("seed") = 0, py::arg("n_total") = 1500, py::arg("window") = py::none(),
        py::arg("weighting") = "dynamic", py::arg("use_backtest") = true);

    m.def(
        "evaluate",
        [](const std::filesystem::path& path, std::vector<std::string> methods, std::uint64_t seed, std::size_t workers,
           const std::string& reference, const std::string& aggregation) {
            const auto docs = io::load_panels(path);
            auto config = make_config(seed, workers, 1500, std::nullopt, true);
            config.reference_method = reference;
            config.aggregation = harness::parse_aggregation(aggregation);
            std::vector<harness::ReportRow> rows;
            {
                py::gil_scoped_release release;
                rows = harness::run_evaluation(docs, methods, config).rows;
            }
            py::list out;
            for (const auto& r : rows) out.append(row_to_dict(r));
            return out;
        },
        py::arg("path"),
        py::arg("methods") = std::vector<std::string>{"synapse", "synapse-static", "median", "mean", "per-model", "oracle"},
        py::arg("seed") = 0, py::arg("workers") = 1, py::arg("reference") = "median", py::arg("aggregation") = "series");

    m.def(
        "report",
        [](const std::filesystem::path& path, std::vector<std::string> methods, const std::string& format,
           std::uint64_t seed) {
            const auto docs = io::load_panels(path);
            const auto config = make_config(seed, 1, 1500, std::nullopt, true);
            const auto rows = harness::run_evaluation(docs, methods, config).rows;
            std::ostringstream out;
            switch (report::parse_format(format)) {
            case report::Format::table: report::write_table(out, rows); break;
            case report::Format::csv: report::write_csv(out, rows); break;
            case report::Format::json: report::write_json(out, rows); break;
            case report::Format::curves: report::write_curves(out, rows); break;
            }
            return out.str();
        },
        py::arg("path"), py::arg("methods"), py::arg("format") = "json", py::arg("seed") = 0);

    m.def(
        "oracle_selection",
        [](const std::filesystem::path& path) {
            py::list out;
            for (const auto& doc : io::load_panels(path)) {
                const auto trace = oracle::oracle_select(doc.panel);
                py::dict d;
                d["series_id"] = doc.panel.series_id();
                d["selected"] = trace.selected;
                d["switch_percentage"] = trace.switch_percentage;
                d["crps"] = oracle::oracle_crps(doc.panel);
                out.append(d);
            }
            return out;
        },
        py::arg("path"));

    m.def(
        "write_synthetic_suite",
        [](const std::filesystem::path& path, std::size_t panels, std::uint64_t seed, std::size_t min_models,
           std::size_t max_models) {
            synthetic::SuiteOptions options;
            options.min_models = min_models;
            options.max_models = max_models;
            io::write_panels(path, synthetic::build_benchmark_suite(panels, seed, options));
        },
        py::arg("path"), py::arg("panels"), py::arg("seed"), py::arg("min_models") = 2, py::arg("max_models") = 6);
}
