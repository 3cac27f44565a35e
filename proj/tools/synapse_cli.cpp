// Command-line front end: panel validation, evaluation sweeps, oracle
// diagnostics and synthetic suite generation.
//
// Exit codes: 0 success, 2 invalid input (validation or usage), 3 runtime failure.

#include "synapse/evaluation.hpp"
#include "synapse/metrics.hpp"
#include "synapse/panel_io.hpp"
#include "synapse/report.hpp"
#include "synapse/synthetic_bench.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace synapse;

struct CommonOptions {
    std::string input;
    bool lenient = false;
    std::uint64_t seed = 0;
    std::size_t window = 0;  // 0 = default
    std::size_t n_total = 1500;
    double temperature = 1.0;
    std::size_t workers = 0;  // 0 = hardware concurrency
    bool no_backtest = false;
    std::string format = "table";
    std::string out = "-";
    std::string aggregation = "series";

    harness::EvaluationConfig config() const {
        harness::EvaluationConfig c;
        c.seed = seed;
        c.arbitrator.n_total = n_total;
        if (window > 0) c.arbitrator.window_capacity = window;
        c.arbitrator.softmax_temperature = temperature;
        c.workers = workers > 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
        c.use_backtest = !no_backtest;
        c.aggregation = harness::parse_aggregation(aggregation);
        return c;
    }

    std::vector<PanelDocument> load() const { return io::load_panels(input, !lenient); }
};

void add_input(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("input", o.input, "Panel file (.jsonl) or directory of panel files")->required();
    cmd->add_flag("--lenient", o.lenient, "Accept unknown fields in panel records")->envname("SYNAPSE_LENIENT");
}

void add_run_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--seed", o.seed, "Run seed")->envname("SYNAPSE_SEED");
    cmd->add_option("--window", o.window, "Performance window length (default min(T, 16))")->envname("SYNAPSE_WINDOW");
    cmd->add_option("--n-total", o.n_total, "Pooled samples per timestep")->envname("SYNAPSE_N_TOTAL");
    cmd->add_option("--temperature", o.temperature, "Softmax fallback temperature")->envname("SYNAPSE_TEMPERATURE");
    cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->envname("SYNAPSE_WORKERS");
    cmd->add_flag("--no-backtest", o.no_backtest, "Start from an empty window even when backtests exist")
        ->envname("SYNAPSE_NO_BACKTEST");
}

void add_output(CLI::App* cmd, CommonOptions& o, std::vector<std::string> formats) {
    cmd->add_option("--format", o.format, "Output format")
        ->envname("SYNAPSE_FORMAT")
        ->check(CLI::IsMember(std::move(formats)));
    cmd->add_option("--out", o.out, "Output path, '-' for stdout")->envname("SYNAPSE_OUT");
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot write '" + path + "'");
    return file;
}

int cmd_validate(const CommonOptions& o) {
    const auto docs = o.load();
    std::size_t with_actuals = 0, with_backtest = 0;
    for (const auto& d : docs) {
        with_actuals += d.panel.has_actuals();
        with_backtest += !d.backtest.empty();
    }
    std::cout << docs.size() << " panels valid (" << with_actuals << " with actuals, " << with_backtest
              << " with backtests)\n";
    return 0;
}

int cmd_eval(const CommonOptions& o, const std::vector<std::string>& methods, const std::string& reference) {
    auto config = o.config();
    config.reference_method = reference;
    const auto docs = o.load();
    const auto result = harness::run_evaluation(docs, methods, config);
    report::emit_report(result.rows, report::parse_format(o.format), o.out);
    return 0;
}

int cmd_scale(const CommonOptions& o, std::vector<std::string> models) {
    const auto docs = o.load();
    if (models.empty()) {
        if (docs.empty()) throw InsufficientModels("no panels to take a model order from");
        models = docs.front().panel.model_names();
    }
    const auto rows = harness::run_pool_scaling(docs, models, o.config());
    std::ofstream file;
    report::write_scaling_table(open_output(o.out, file), rows, report::parse_format(o.format));
    return 0;
}

int cmd_winloss(const CommonOptions& o, const std::string& a, const std::string& b) {
    const auto docs = o.load();
    const auto wl = harness::run_win_loss(docs, a, b, o.config());
    std::ofstream file;
    auto& out = open_output(o.out, file);
    if (o.format == "json") {
        nlohmann::json doc = {{"method_a", a},
                              {"method_b", b},
                              {"crps", {{"wins", wl.crps.wins}, {"losses", wl.crps.losses}, {"ties", wl.crps.ties}}},
                              {"mase", {{"wins", wl.mase.wins}, {"losses", wl.mase.losses}, {"ties", wl.mase.ties}}}};
        out << doc.dump(2) << '\n';
    } else {
        out << "metric,method_a,method_b,wins,losses,ties\n";
        out << "crps," << a << ',' << b << ',' << wl.crps.wins << ',' << wl.crps.losses << ',' << wl.crps.ties << '\n';
        out << "mase," << a << ',' << b << ',' << wl.mase.wins << ',' << wl.mase.losses << ',' << wl.mase.ties << '\n';
    }
    return 0;
}

int cmd_oracle(const CommonOptions& o) {
    const auto docs = o.load();
    const auto config = o.config();
    std::vector<oracle::TaggedSwitching> tagged;
    for (const auto& d : docs)
        tagged.push_back({d.meta.domain, d.meta.horizon_class, oracle::oracle_select(d.panel).switch_percentage});
    const auto switching = oracle::switching_stats(tagged);
    const auto accuracy = harness::run_selection_accuracy(docs, config);

    std::ofstream file;
    auto& out = open_output(o.out, file);
    if (o.format == "json") {
        nlohmann::json doc;
        doc["switching"] = nlohmann::json::array();
        for (const auto& r : switching)
            doc["switching"].push_back({{"domain", r.domain},
                                        {"horizon_class", to_string(r.horizon_class)},
                                        {"mean_switch_percentage", r.mean_switch_percentage},
                                        {"panels", r.traces}});
        doc["selection_accuracy"] = nlohmann::json::array();
        for (const auto& a : accuracy)
            doc["selection_accuracy"].push_back({{"method", a.method}, {"pooled", a.pooled}, {"macro", a.macro}});
        out << doc.dump(2) << '\n';
        return 0;
    }
    out << "domain,horizon_class,mean_switch_percentage,panels\n";
    for (const auto& r : switching)
        out << r.domain << ',' << to_string(r.horizon_class) << ',' << report::format_double(r.mean_switch_percentage)
            << ',' << r.traces << '\n';
    out << '\n';
    report::write_selection_accuracy(out, accuracy, report::Format::csv);
    return 0;
}

int cmd_lumpiness(const CommonOptions& o) {
    const auto docs = o.load();
    const std::vector<std::string> methods = {"synapse", "median"};
    const auto scores = harness::run_evaluation(docs, methods, o.config()).scores;
    const auto analysis = harness::run_lumpiness_analysis(docs, scores);
    std::ofstream file;
    auto& out = open_output(o.out, file);
    out << "domain,lumpiness,mase_gain,panels\n";
    for (const auto& r : analysis.rows)
        out << r.domain << ',' << report::format_double(r.lumpiness) << ',' << report::format_double(r.mase_gain)
            << ',' << r.panels << '\n';
    out << "# pearson_r=" << (analysis.correlation ? report::format_double(*analysis.correlation) : "undefined")
        << '\n';
    return 0;
}

int cmd_arbitrate(const CommonOptions& o, const std::string& weighting) {
    const auto docs = o.load();
    const auto config = o.config();
    const auto mode = parse_weighting_mode(weighting);
    std::ofstream file;
    auto& out = open_output(o.out, file);
    for (const auto& d : docs) {
        const auto trace = harness::arbitrate_document(d, config, mode);
        nlohmann::json rec;
        rec["series_id"] = d.panel.series_id();
        rec["models"] = trace.model_names;
        rec["levels"] = std::vector<double>(d.panel.levels().values().begin(), d.panel.levels().values().end());
        for (const auto& step : trace.steps) {
            rec["quantiles"].push_back(std::vector<double>(step.forecast.values().begin(), step.forecast.values().end()));
            rec["weights"].push_back(std::vector<double>(step.weights.values().begin(), step.weights.values().end()));
            rec["sample_counts"].push_back(step.sample_counts);
            rec["simulated_truth"].push_back(step.simulated_truth);
            rec["branch"].push_back(to_string(step.branch));
        }
        out << rec.dump() << '\n';
    }
    return 0;
}

int cmd_synth(std::size_t panels, std::uint64_t seed, std::size_t min_models, std::size_t max_models,
              bool no_backtest, const std::string& out) {
    synthetic::SuiteOptions options;
    options.min_models = min_models;
    options.max_models = max_models;
    if (no_backtest) options.backtest_steps = 0;
    const auto suite = synthetic::build_benchmark_suite(panels, seed, options);
    if (out == "-") {
        for (const auto& d : suite) std::cout << io::format_panel_record(d.to_raw()) << '\n';
    } else {
        io::write_panels(out, suite);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic arbitration of quantile forecasts"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "synapse 0.1.0");

    CommonOptions o;
    const std::vector<std::string> report_formats = {"table", "csv", "json", "curves"};
    const std::vector<std::string> plain_formats = {"table", "csv", "json"};

    auto* validate = app.add_subcommand("validate", "Check panel files against every invariant");
    add_input(validate, o);

    std::vector<std::string> methods = {"synapse", "synapse-static", "median", "mean", "per-model", "oracle"};
    std::string reference = "median";
    auto* eval = app.add_subcommand("eval", "Score methods on panels with actuals");
    add_input(eval, o);
    add_run_options(eval, o);
    add_output(eval, o, report_formats);
    eval->add_option("--methods", methods, "Comma-separated methods")->delimiter(',')->envname("SYNAPSE_METHODS");
    eval->add_option("--reference", reference, "Method the win/loss columns compare against");
    eval->add_option("--aggregation", o.aggregation, "series or dataset")
        ->envname("SYNAPSE_AGGREGATION")
        ->check(CLI::IsMember({"series", "dataset"}));

    std::vector<std::string> models;
    auto* scale = app.add_subcommand("scale", "SYNAPSE against the best single model over growing pools");
    add_input(scale, o);
    add_run_options(scale, o);
    add_output(scale, o, plain_formats);
    scale->add_option("--models", models, "Model order; prefixes of size 2.. are evaluated")->delimiter(',');

    std::string method_a = "synapse", method_b = "median";
    auto* winloss = app.add_subcommand("winloss", "Per-panel wins, losses and ties of one method against another");
    add_input(winloss, o);
    add_run_options(winloss, o);
    add_output(winloss, o, {"csv", "json"});
    winloss->add_option("--a", method_a, "First method (e.g. synapse, model:<name>)");
    winloss->add_option("--b", method_b, "Second method");

    auto* oracle_cmd = app.add_subcommand("oracle", "Oracle switching frequency and top-k selection accuracy");
    add_input(oracle_cmd, o);
    add_run_options(oracle_cmd, o);
    add_output(oracle_cmd, o, {"csv", "json"});

    auto* lump = app.add_subcommand("lumpiness", "Context lumpiness against SYNAPSE's MASE gain, per domain");
    add_input(lump, o);
    add_run_options(lump, o);
    add_output(lump, o, {"csv"});

    std::string weighting = "dynamic";
    auto* arbitrate = app.add_subcommand("arbitrate", "Emit arbitrated quantiles and weights per panel (JSONL)");
    add_input(arbitrate, o);
    add_run_options(arbitrate, o);
    arbitrate->add_option("--out", o.out, "Output path, '-' for stdout")->envname("SYNAPSE_OUT");
    arbitrate->add_option("--weighting", weighting, "dynamic or static-uniform")
        ->envname("SYNAPSE_WEIGHTING")
        ->check(CLI::IsMember({"dynamic", "static-uniform", "static"}));

    std::size_t n_panels = 200, min_models = 2, max_models = 6;
    bool synth_no_backtest = false;
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic benchmark suite");
    synth->add_option("--panels", n_panels, "Number of panels");
    synth->add_option("--seed", o.seed, "Suite seed")->envname("SYNAPSE_SEED");
    synth->add_option("--min-models", min_models, "Fewest experts per panel");
    synth->add_option("--max-models", max_models, "Most experts per panel");
    synth->add_flag("--no-backtest", synth_no_backtest, "Omit context backtests");
    synth->add_option("--out", o.out, "Output .jsonl path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*eval) return cmd_eval(o, methods, reference);
        if (*scale) return cmd_scale(o, models);
        if (*winloss) return cmd_winloss(o, method_a, method_b);
        if (*oracle_cmd) return cmd_oracle(o);
        if (*lump) return cmd_lumpiness(o);
        if (*arbitrate) return cmd_arbitrate(o, weighting);
        if (*synth) return cmd_synth(n_panels, o.seed, min_models, max_models, synth_no_backtest, o.out);
    } catch (const ValidationError& e) {
        std::cerr << "synapse: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "synapse: error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
