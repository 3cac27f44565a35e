#pragma once

#include "synapse/core_model.hpp"

#include <span>
#include <vector>

namespace synapse::metrics {

/// Floor applied to |y| by the weighted quantile loss.
inline constexpr double wql_denominator_floor = 1e-8;

/// rho_alpha(q, y): alpha * (y - q) when y > q, else (1 - alpha) * (q - y).
double pinball_loss(double alpha, double q_hat, double y);

/// 2 * pinball / max(|y|, 1e-8).
double weighted_quantile_loss(double alpha, double q_hat, double y);

/// Mean weighted quantile loss over the forecast's levels.
double crps_timestep(const QuantileForecast& forecast, double y);

struct CrpsSeries {
    std::vector<double> per_timestep;
    double mean = 0.0;
};

/// Throws LengthMismatch when the lengths differ or are zero.
CrpsSeries crps_series(std::span<const QuantileForecast> forecasts, std::span<const double> actuals);

/// In-sample mean absolute error of the seasonal naive forecast on `context`.
/// Throws SeriesTooShort when context.size() <= m, ZeroDenominator when it is 0.
double seasonal_naive_mae(std::span<const double> context, std::size_t m);

/// MAE(point, actuals) / seasonal_naive_mae(context, m).
double mase(std::span<const double> point_forecasts, std::span<const double> actuals,
            std::span<const double> context, std::size_t m);

struct ScoreSummary {
    double crps = 0.0;
    double mase = 0.0;
    std::vector<double> per_timestep_crps;
};

/// CRPS of the full forecasts plus MASE of their medians.
ScoreSummary score_series(std::span<const QuantileForecast> forecasts, std::span<const double> actuals,
                          std::span<const double> context, std::size_t m);

/// max(10, floor(length / 20)).
std::size_t default_tile_width(std::size_t length);

/// Variance of the sample variances of non-overlapping tiles of the
/// mean/std standardised series. Trailing samples that do not fill a tile
/// are dropped. Throws SeriesTooShort when fewer than two tiles fit.
double lumpiness(std::span<const double> series, std::size_t tile_width);

/// Throws LengthMismatch or DegenerateVariance.
double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

} // namespace synapse::metrics
