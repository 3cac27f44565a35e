#pragma once

#include "synapse/core_model.hpp"

#include <span>
#include <vector>

namespace synapse::baselines {

/// Per-level median across models (mean of the middle pair for even N).
QuantileForecast quantile_median_ensemble(std::span<const QuantileForecast> forecasts);

/// Per-level arithmetic mean across models.
QuantileForecast quantile_mean_ensemble(std::span<const QuantileForecast> forecasts);

/// Mean of the models' medians.
double point_mean(std::span<const QuantileForecast> forecasts);

// Whole-horizon helpers over a panel.
std::vector<QuantileForecast> median_ensemble_series(const ForecastPanel& panel);
std::vector<QuantileForecast> mean_ensemble_series(const ForecastPanel& panel);
std::vector<double> point_mean_series(const ForecastPanel& panel);

} // namespace synapse::baselines
