#include "synapse/evaluation.hpp"

#include "synapse/baselines.hpp"
#include "synapse/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

namespace synapse::harness {

namespace {

constexpr std::string_view model_prefix = "model:";

// Runs fn(i) for i in [0, n) on up to `workers` threads. The exception of the
// lowest failing index is rethrown, so failures do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(std::max<std::size_t>(1, workers), std::max<std::size_t>(1, n));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

bool is_model_row(std::string_view method) { return method.starts_with(model_prefix); }

// Registered order, with the expanded per-model rows sorted by name in place of "per-model".
int method_rank(std::string_view method) {
    if (is_model_row(method)) method = "per-model";
    for (std::size_t i = 0; i < registered_methods.size(); ++i)
        if (registered_methods[i] == method) return static_cast<int>(i);
    return static_cast<int>(registered_methods.size());
}

bool method_less(const std::string& a, const std::string& b) {
    const int ra = method_rank(a);
    const int rb = method_rank(b);
    return ra != rb ? ra < rb : a < b;
}

double mean(const std::vector<double>& xs) {
    double total = 0.0;
    for (double x : xs) total += x;
    return total / static_cast<double>(xs.size());
}

} // namespace

std::vector<std::string> parse_methods(std::span<const std::string> names) {
    if (names.empty()) throw InvalidArgument("at least one method is required");
    std::vector<std::string> out;
    for (const auto& name : names) {
        if (std::find(registered_methods.begin(), registered_methods.end(), name) == registered_methods.end())
            throw InvalidArgument("unknown method '" + name + "'");
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    return out;
}

Aggregation parse_aggregation(std::string_view text) {
    if (text == "series") return Aggregation::series;
    if (text == "dataset") return Aggregation::dataset;
    throw InvalidArgument("unknown aggregation '" + std::string(text) + "'");
}

PerformanceWindow initial_window(const PanelDocument& doc, const EvaluationConfig& config) {
    const std::size_t capacity = config.arbitrator.resolved_window(doc.panel.horizon());
    if (!config.use_backtest || doc.backtest.empty()) return PerformanceWindow(capacity);
    return seed_window_from_context(doc.panel, doc.backtest, capacity);
}

ArbitrationTrace arbitrate_document(const PanelDocument& doc, const EvaluationConfig& config, WeightingMode mode) {
    ArbitratorConfig arbitrator = config.arbitrator;
    arbitrator.mode = mode;
    return run_arbitration(doc.panel, initial_window(doc, config), arbitrator, config.seed);
}

std::vector<PanelScore> score_panel(const PanelDocument& doc, std::size_t panel_index,
                                    std::span<const std::string> methods, const EvaluationConfig& config) {
    const auto& panel = doc.panel;
    const auto actuals = panel.actuals();
    std::vector<PanelScore> out;
    auto push = [&](std::string name, std::span<const QuantileForecast> forecasts) {
        const auto s = metrics::score_series(forecasts, actuals, panel.context(), panel.seasonality());
        out.push_back({panel_index, panel.series_id(), doc.meta, std::move(name), s.crps, s.mase});
    };

    for (const auto& method : methods) {
        if (method == "synapse") {
            push(method, arbitrate_document(doc, config, WeightingMode::dynamic).forecasts());
        } else if (method == "synapse-static") {
            push(method, arbitrate_document(doc, config, WeightingMode::static_uniform).forecasts());
        } else if (method == "median") {
            push(method, baselines::median_ensemble_series(panel));
        } else if (method == "mean") {
            push(method, baselines::mean_ensemble_series(panel));
        } else if (method == "per-model") {
            for (const auto& model : panel.models()) push(std::string(model_prefix) + model.name, model.steps);
        } else if (method == "oracle") {
            push(method, oracle::oracle_forecasts(panel, oracle::oracle_select(panel)));
        } else {
            throw InvalidArgument("unknown method '" + method + "'");
        }
    }
    return out;
}

std::vector<PanelScore> score_panels(std::span<const PanelDocument> docs, std::span<const std::string> methods,
                                     const EvaluationConfig& config) {
    std::vector<std::vector<PanelScore>> per_panel(docs.size());
    parallel_for(docs.size(), config.workers,
                 [&](std::size_t i) { per_panel[i] = score_panel(docs[i], i, methods, config); });
    std::vector<PanelScore> out;
    for (auto& scores : per_panel) std::move(scores.begin(), scores.end(), std::back_inserter(out));
    return out;
}

std::vector<ReportRow> aggregate_scores(std::span<const PanelScore> scores, const EvaluationConfig& config) {
    // (group, method) -> scores in input order.
    std::map<std::string, std::map<std::string, std::vector<const PanelScore*>>> groups;
    for (const auto& s : scores) {
        groups["overall"][s.method].push_back(&s);
        groups[std::string("horizon:") + to_string(s.meta.horizon_class)][s.method].push_back(&s);
        groups["domain:" + s.meta.domain][s.method].push_back(&s);
    }

    auto group_rank = [](const std::string& g) {
        if (g == "overall") return 0;
        if (g == "horizon:short") return 1;
        if (g == "horizon:medium") return 2;
        if (g == "horizon:long") return 3;
        return 4;
    };
    std::vector<std::string> group_order;
    for (const auto& [g, _] : groups) group_order.push_back(g);
    std::stable_sort(group_order.begin(), group_order.end(),
                     [&](const auto& a, const auto& b) { return group_rank(a) < group_rank(b); });

    std::vector<ReportRow> rows;
    for (const auto& group : group_order) {
        const auto& methods = groups.at(group);
        std::map<std::size_t, double> reference;
        if (auto it = methods.find(config.reference_method); it != methods.end())
            for (const auto* s : it->second) reference[s->panel_index] = s->crps;

        std::vector<std::string> names;
        for (const auto& [m, _] : methods) names.push_back(m);
        std::sort(names.begin(), names.end(), method_less);

        for (const auto& method : names) {
            const auto& entries = methods.at(method);
            ReportRow row{method, group};
            row.panels = entries.size();
            if (config.aggregation == Aggregation::series) {
                std::vector<double> crps, mase;
                for (const auto* s : entries) {
                    crps.push_back(s->crps);
                    mase.push_back(s->mase);
                }
                row.crps = mean(crps);
                row.mase = mean(mase);
            } else {
                std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_dataset;
                for (const auto* s : entries) {
                    auto& [crps, mase] = by_dataset[s->meta.dataset_key()];
                    crps.push_back(s->crps);
                    mase.push_back(s->mase);
                }
                std::vector<double> crps, mase;
                for (const auto& [_, v] : by_dataset) {
                    crps.push_back(mean(v.first));
                    mase.push_back(mean(v.second));
                }
                row.crps = mean(crps);
                row.mase = mean(mase);
            }
            for (const auto* s : entries) {
                auto ref = reference.find(s->panel_index);
                if (ref == reference.end()) continue;
                if (s->crps < ref->second - win_loss_tolerance) ++row.wins;
                else if (s->crps > ref->second + win_loss_tolerance) ++row.losses;
                else ++row.ties;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

EvaluationResult run_evaluation(std::span<const PanelDocument> docs, std::span<const std::string> methods,
                                const EvaluationConfig& config) {
    const auto parsed = parse_methods(methods);
    EvaluationResult result;
    result.scores = score_panels(docs, parsed, config);
    result.rows = aggregate_scores(result.scores, config);
    return result;
}

std::vector<ScalingRow> run_pool_scaling(std::span<const PanelDocument> docs,
                                         std::span<const std::string> model_order, const EvaluationConfig& config) {
    if (model_order.size() < 2) throw InsufficientModels("pool scaling needs at least two models");
    for (const auto& doc : docs)
        for (const auto& name : model_order)
            if (!doc.panel.model_index(name))
                throw InsufficientModels("panel '" + doc.panel.series_id() + "' has no model '" + name + "'");

    const std::vector<std::string> methods = {"synapse", "per-model"};
    std::vector<ScalingRow> rows;
    for (std::size_t size = 2; size <= model_order.size(); ++size) {
        const auto pool = model_order.subspan(0, size);
        std::vector<PanelDocument> restricted;
        restricted.reserve(docs.size());
        for (const auto& doc : docs) restricted.push_back(doc.with_models(pool));

        const auto scores = score_panels(restricted, methods, config);
        ScalingRow row;
        row.pool.assign(pool.begin(), pool.end());
        bool have_best = false;
        for (const auto& agg : aggregate_scores(scores, config)) {
            if (agg.group != "overall") continue;
            if (agg.method == "synapse") {
                row.synapse_crps = agg.crps;
                row.synapse_mase = agg.mase;
                continue;
            }
            const std::string name = agg.method.substr(model_prefix.size());
            if (!have_best || agg.crps < row.best_crps) {
                row.best_crps = agg.crps;
                row.best_crps_model = name;
            }
            if (!have_best || agg.mase < row.best_mase) {
                row.best_mase = agg.mase;
                row.best_mase_model = name;
            }
            have_best = true;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

WinLossResult run_win_loss(std::span<const PanelScore> scores, std::string_view method_a, std::string_view method_b) {
    std::map<std::size_t, const PanelScore*> a, b;
    for (const auto& s : scores) {
        if (s.method == method_a) a[s.panel_index] = &s;
        if (s.method == method_b) b[s.panel_index] = &s;
    }
    auto tally = [](WinLoss& wl, double x, double y) {
        if (x < y - win_loss_tolerance) ++wl.wins;
        else if (x > y + win_loss_tolerance) ++wl.losses;
        else ++wl.ties;
    };
    WinLossResult result;
    for (const auto& [index, sa] : a) {
        auto it = b.find(index);
        if (it == b.end()) continue;
        tally(result.crps, sa->crps, it->second->crps);
        tally(result.mase, sa->mase, it->second->mase);
    }
    return result;
}

WinLossResult run_win_loss(std::span<const PanelDocument> docs, const std::string& method_a,
                           const std::string& method_b, const EvaluationConfig& config) {
    auto base_method = [](const std::string& m) { return is_model_row(m) ? std::string("per-model") : m; };
    std::vector<std::string> methods = {base_method(method_a)};
    if (base_method(method_b) != methods.front()) methods.push_back(base_method(method_b));
    const auto scores = score_panels(docs, parse_methods(methods), config);
    return run_win_loss(scores, method_a, method_b);
}

std::vector<SelectionAccuracy> run_selection_accuracy(std::span<const PanelDocument> docs,
                                                      const EvaluationConfig& config) {
    std::size_t max_models = 0;
    for (const auto& doc : docs) max_models = std::max(max_models, doc.panel.model_count());

    struct PanelCounts {
        std::vector<oracle::TopkCount> synapse, median;
    };
    std::vector<PanelCounts> counts(docs.size());
    parallel_for(docs.size(), config.workers, [&](std::size_t i) {
        const auto& doc = docs[i];
        const auto oracle_trace = oracle::oracle_select(doc.panel);
        const auto synapse_rank =
            oracle::synapse_selection_ranking(arbitrate_document(doc, config, WeightingMode::dynamic));
        const auto median_rank = oracle::median_ensemble_rankings(doc.panel);
        for (std::size_t k = 1; k <= max_models; ++k) {
            counts[i].synapse.push_back(oracle::topk_hits(synapse_rank, oracle_trace, k));
            counts[i].median.push_back(oracle::topk_hits(median_rank, oracle_trace, k));
        }
    });

    auto summarise = [&](const std::string& method, auto member) {
        SelectionAccuracy acc{method, {}, {}};
        for (std::size_t k = 0; k < max_models; ++k) {
            std::map<std::string, oracle::TopkCount> by_dataset;
            for (std::size_t i = 0; i < docs.size(); ++i) {
                const auto& c = (counts[i].*member)[k];
                auto& d = by_dataset[docs[i].meta.dataset_key()];
                d.hits += c.hits;
                d.steps += c.steps;
            }
            std::vector<oracle::TopkCount> groups;
            for (const auto& [_, c] : by_dataset) groups.push_back(c);
            acc.pooled.push_back(oracle::pooled_accuracy(groups));
            acc.macro.push_back(oracle::macro_accuracy(groups));
        }
        return acc;
    };
    return {summarise("synapse", &PanelCounts::synapse), summarise("median", &PanelCounts::median)};
}

LumpinessAnalysis run_lumpiness_analysis(std::span<const PanelDocument> docs, std::span<const PanelScore> scores) {
    std::map<std::size_t, double> synapse_mase, median_mase;
    for (const auto& s : scores) {
        if (s.method == "synapse") synapse_mase[s.panel_index] = s.mase;
        if (s.method == "median") median_mase[s.panel_index] = s.mase;
    }

    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_domain;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto sy = synapse_mase.find(i);
        auto me = median_mase.find(i);
        if (sy == synapse_mase.end() || me == median_mase.end()) continue;
        const auto context = docs[i].panel.context();
        double lump = 0.0;
        try {
            lump = metrics::lumpiness(context, metrics::default_tile_width(context.size()));
        } catch (const SeriesTooShort&) {
            continue;
        }
        auto& [lumps, gains] = by_domain[docs[i].meta.domain];
        lumps.push_back(lump);
        gains.push_back(me->second - sy->second);
    }

    LumpinessAnalysis out;
    std::vector<double> xs, ys;
    for (const auto& [domain, v] : by_domain) {
        out.rows.push_back({domain, mean(v.first), mean(v.second), v.first.size()});
        xs.push_back(out.rows.back().lumpiness);
        ys.push_back(out.rows.back().mase_gain);
    }
    try {
        out.correlation = metrics::pearson_correlation(xs, ys);
    } catch (const Error&) {
        out.correlation.reset();
    }
    return out;
}

} // namespace synapse::harness
