#include "synapse/oracle_analysis.hpp"

#include "synapse/baselines.hpp"
#include "synapse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

namespace synapse::oracle {

OracleTrace oracle_select(const ForecastPanel& panel) {
    const auto actuals = panel.actuals();
    const std::size_t n = panel.model_count();
    OracleTrace trace;
    trace.model_names = panel.model_names();
    trace.selection_frequency.assign(n, 0.0);
    std::vector<std::size_t> picks(n, 0);

    for (std::size_t t = 0; t < panel.horizon(); ++t) {
        std::vector<double> row(n);
        for (std::size_t i = 0; i < n; ++i)
            row[i] = metrics::crps_timestep(panel.models()[i].steps[t], actuals[t]);
        // min_element returns the first minimum, i.e. the lowest index on ties.
        const auto best = static_cast<std::size_t>(std::min_element(row.begin(), row.end()) - row.begin());
        if (t > 0 && best != trace.selected.back()) ++trace.switch_count;
        trace.selected.push_back(best);
        trace.crps.push_back(std::move(row));
        ++picks[best];
    }

    const double T = static_cast<double>(panel.horizon());
    for (std::size_t i = 0; i < n; ++i) trace.selection_frequency[i] = static_cast<double>(picks[i]) / T;
    trace.switch_percentage =
        panel.horizon() > 1 ? 100.0 * static_cast<double>(trace.switch_count) / (T - 1.0) : 0.0;
    return trace;
}

double oracle_crps(const ForecastPanel& panel) {
    const auto trace = oracle_select(panel);
    double total = 0.0;
    for (std::size_t t = 0; t < trace.horizon(); ++t) total += trace.crps[t][trace.selected[t]];
    return total / static_cast<double>(trace.horizon());
}

std::vector<QuantileForecast> oracle_forecasts(const ForecastPanel& panel, const OracleTrace& trace) {
    if (trace.horizon() != panel.horizon()) throw Misalignment("oracle trace does not match the panel horizon");
    std::vector<QuantileForecast> out;
    out.reserve(trace.horizon());
    for (std::size_t t = 0; t < trace.horizon(); ++t) out.push_back(panel.models()[trace.selected[t]].steps[t]);
    return out;
}

std::vector<SwitchingRow> switching_stats(std::span<const TaggedSwitching> traces) {
    if (traces.empty()) throw EmptyGroup("switching_stats: no traces to group");
    std::map<std::pair<std::string, HorizonClass>, std::pair<double, std::size_t>> groups;
    for (const auto& tr : traces) {
        auto& [sum, count] = groups[{tr.domain, tr.horizon_class}];
        sum += tr.switch_percentage;
        ++count;
    }
    std::vector<SwitchingRow> rows;
    for (const auto& [key, acc] : groups)
        rows.push_back({key.first, key.second, acc.first / static_cast<double>(acc.second), acc.second});
    return rows;
}

double mean_switch_percentage(std::span<const TaggedSwitching> traces, std::string_view domain,
                              HorizonClass horizon_class) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& tr : traces) {
        if (tr.domain != domain || tr.horizon_class != horizon_class) continue;
        sum += tr.switch_percentage;
        ++count;
    }
    if (count == 0)
        throw EmptyGroup("no traces for domain '" + std::string(domain) + "' and horizon " +
                         to_string(horizon_class));
    return sum / static_cast<double>(count);
}

Ranking rank_by_weight(const WeightVector& weights) {
    Ranking order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
    return order;
}

std::vector<Ranking> synapse_selection_ranking(const ArbitrationTrace& trace) {
    std::vector<Ranking> out;
    out.reserve(trace.steps.size());
    for (const auto& step : trace.steps) out.push_back(rank_by_weight(step.weights));
    return out;
}

Ranking median_ensemble_implicit_ranking(std::span<const QuantileForecast> forecasts,
                                         const QuantileForecast& ensemble_forecast) {
    const double target = ensemble_forecast.median();
    std::vector<double> distance(forecasts.size());
    for (std::size_t i = 0; i < forecasts.size(); ++i) distance[i] = std::abs(forecasts[i].median() - target);
    Ranking order(forecasts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return distance[a] < distance[b]; });
    return order;
}

std::vector<Ranking> median_ensemble_rankings(const ForecastPanel& panel) {
    std::vector<Ranking> out;
    out.reserve(panel.horizon());
    for (std::size_t t = 0; t < panel.horizon(); ++t) {
        const auto forecasts = panel.forecasts_at(t);
        out.push_back(median_ensemble_implicit_ranking(forecasts, baselines::quantile_median_ensemble(forecasts)));
    }
    return out;
}

TopkCount topk_hits(std::span<const Ranking> rankings, const OracleTrace& oracle, std::size_t k) {
    if (k == 0) throw InvalidArgument("top-k accuracy needs k >= 1");
    if (rankings.size() != oracle.horizon())
        throw Misalignment("rankings cover " + std::to_string(rankings.size()) + " timesteps, oracle " +
                           std::to_string(oracle.horizon()));
    TopkCount count;
    for (std::size_t t = 0; t < rankings.size(); ++t) {
        const auto& ranking = rankings[t];
        const auto top_end = ranking.begin() + static_cast<std::ptrdiff_t>(std::min(k, ranking.size()));
        if (std::find(ranking.begin(), top_end, oracle.selected[t]) != top_end) ++count.hits;
        ++count.steps;
    }
    return count;
}

double topk_selection_accuracy(std::span<const Ranking> rankings, const OracleTrace& oracle, std::size_t k) {
    return topk_hits(rankings, oracle, k).fraction();
}

double pooled_accuracy(std::span<const TopkCount> groups) {
    TopkCount total;
    for (const auto& g : groups) {
        total.hits += g.hits;
        total.steps += g.steps;
    }
    return total.fraction();
}

double macro_accuracy(std::span<const TopkCount> groups) {
    double sum = 0.0;
    std::size_t used = 0;
    for (const auto& g : groups) {
        if (g.steps == 0) continue;
        sum += g.fraction();
        ++used;
    }
    return used == 0 ? 0.0 : sum / static_cast<double>(used);
}

} // namespace synapse::oracle
