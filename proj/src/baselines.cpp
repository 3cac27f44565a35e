#include "synapse/baselines.hpp"

#include <algorithm>
#include <numeric>

namespace synapse::baselines {

namespace {

const QuantileLevels& shared_levels(std::span<const QuantileForecast> forecasts) {
    if (forecasts.empty()) throw InvalidArgument("ensemble of zero forecasts");
    for (const auto& f : forecasts)
        if (!(f.levels() == forecasts.front().levels()))
            throw DimensionMismatch("ensemble members use different quantile levels");
    return forecasts.front().levels();
}

template <typename Reduce>
QuantileForecast per_level(std::span<const QuantileForecast> forecasts, Reduce reduce) {
    const auto& levels = shared_levels(forecasts);
    std::vector<double> column(forecasts.size());
    std::vector<double> values(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
        for (std::size_t i = 0; i < forecasts.size(); ++i) column[i] = forecasts[i][k];
        // Sorting first makes both reductions independent of model order.
        std::sort(column.begin(), column.end());
        values[k] = reduce(column);
    }
    for (std::size_t k = 1; k < values.size(); ++k) values[k] = std::max(values[k], values[k - 1]);
    return QuantileForecast(levels, std::move(values));
}

double median_of_sorted(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double mean_of_sorted(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

template <typename Fn>
auto over_horizon(const ForecastPanel& panel, Fn fn) {
    std::vector<decltype(fn(panel.forecasts_at(0)))> out;
    out.reserve(panel.horizon());
    for (std::size_t t = 0; t < panel.horizon(); ++t) out.push_back(fn(panel.forecasts_at(t)));
    return out;
}

} // namespace

QuantileForecast quantile_median_ensemble(std::span<const QuantileForecast> forecasts) {
    return per_level(forecasts, median_of_sorted);
}

QuantileForecast quantile_mean_ensemble(std::span<const QuantileForecast> forecasts) {
    return per_level(forecasts, mean_of_sorted);
}

double point_mean(std::span<const QuantileForecast> forecasts) {
    if (forecasts.empty()) throw InvalidArgument("point mean of zero forecasts");
    std::vector<double> medians;
    medians.reserve(forecasts.size());
    for (const auto& f : forecasts) medians.push_back(f.median());
    std::sort(medians.begin(), medians.end());
    return mean_of_sorted(medians);
}

std::vector<QuantileForecast> median_ensemble_series(const ForecastPanel& panel) {
    return over_horizon(panel, [](const std::vector<QuantileForecast>& fs) { return quantile_median_ensemble(fs); });
}

std::vector<QuantileForecast> mean_ensemble_series(const ForecastPanel& panel) {
    return over_horizon(panel, [](const std::vector<QuantileForecast>& fs) { return quantile_mean_ensemble(fs); });
}

std::vector<double> point_mean_series(const ForecastPanel& panel) {
    return over_horizon(panel, [](const std::vector<QuantileForecast>& fs) { return point_mean(fs); });
}

} // namespace synapse::baselines
