#pragma once

#include "synapse/core_model.hpp"

#include <span>
#include <string>
#include <vector>

namespace synapse::oracle {

/// Hindsight per-timestep selection of the lowest-CRPS model.
struct OracleTrace {
    std::vector<std::string> model_names;
    std::vector<std::size_t> selected;             // i*_t
    std::vector<std::vector<double>> crps;         // [t][i]
    std::vector<double> selection_frequency;       // sums to 1
    std::size_t switch_count = 0;
    double switch_percentage = 0.0;                // 100 * switches / (T - 1); 0 when T == 1

    std::size_t horizon() const noexcept { return selected.size(); }
};

/// Ties go to the lowest model index. Throws MissingActuals.
OracleTrace oracle_select(const ForecastPanel& panel);

/// Mean over timesteps of the per-step minimum CRPS. Throws MissingActuals.
double oracle_crps(const ForecastPanel& panel);

/// Oracle-selected model's forecast at every timestep.
std::vector<QuantileForecast> oracle_forecasts(const ForecastPanel& panel, const OracleTrace& trace);

struct TaggedSwitching {
    std::string domain;
    HorizonClass horizon_class;
    double switch_percentage;
};

struct SwitchingRow {
    std::string domain;
    HorizonClass horizon_class;
    double mean_switch_percentage;
    std::size_t traces;
};

/// Mean switch percentage per (domain, horizon class), sorted by domain then
/// horizon class. Throws EmptyGroup when there is nothing to group.
std::vector<SwitchingRow> switching_stats(std::span<const TaggedSwitching> traces);

/// Mean switch percentage of the traces in one group; throws EmptyGroup when none match.
double mean_switch_percentage(std::span<const TaggedSwitching> traces, std::string_view domain,
                              HorizonClass horizon_class);

/// Model indices, best first.
using Ranking = std::vector<std::size_t>;

/// Descending weight; ties by model index.
Ranking rank_by_weight(const WeightVector& weights);

/// One ranking per timestep of the trace.
std::vector<Ranking> synapse_selection_ranking(const ArbitrationTrace& trace);

/// Ascending |median_i - ensemble median|; ties by model index.
Ranking median_ensemble_implicit_ranking(std::span<const QuantileForecast> forecasts,
                                         const QuantileForecast& ensemble_forecast);

/// Implicit rankings of the median ensemble over a panel's horizon.
std::vector<Ranking> median_ensemble_rankings(const ForecastPanel& panel);

struct TopkCount {
    std::size_t hits = 0;
    std::size_t steps = 0;
    double fraction() const { return steps == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(steps); }
};

/// Timesteps where i*_t is among the first k entries of the method's ranking.
/// Throws Misalignment when lengths differ, InvalidArgument when k == 0.
TopkCount topk_hits(std::span<const Ranking> rankings, const OracleTrace& oracle, std::size_t k);

double topk_selection_accuracy(std::span<const Ranking> rankings, const OracleTrace& oracle, std::size_t k);

/// Pooled fraction: total hits over total timesteps across all groups.
double pooled_accuracy(std::span<const TopkCount> groups);

/// Macro fraction: mean of the per-group fractions (groups without steps are skipped).
double macro_accuracy(std::span<const TopkCount> groups);

} // namespace synapse::oracle
