#pragma once

#include "synapse/core_model.hpp"
#include "synapse/random_stream.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace synapse {

enum class WeightingMode { dynamic, static_uniform };

const char* to_string(WeightingMode mode);
WeightingMode parse_weighting_mode(std::string_view text);

struct ArbitratorConfig {
    std::size_t n_total = 1500;
    /// Performance window length; unset means min(T, 16).
    std::optional<std::size_t> window_capacity;
    /// Output levels; unset means the panel's levels.
    std::optional<QuantileLevels> levels;
    double softmax_temperature = 1.0;
    /// Scores at or below this trigger the softmax fallback.
    double near_zero_epsilon = 1e-9;
    WeightingMode mode = WeightingMode::dynamic;

    /// Throws InvalidArgument unless n_total >= n_models, W >= 1 and the temperature is positive.
    void validate(std::size_t n_models) const;
    std::size_t resolved_window(std::size_t horizon) const;
};

/// Mean CRPS of each model over the window's records. Throws EmptyWindow.
std::vector<double> average_crps_scores(const PerformanceWindow& window);

/// Which rule compute_weights applies to these scores.
WeightingBranch select_weighting_branch(std::span<const double> scores, const ArbitratorConfig& config);

/// Inverse-error weights when every score exceeds epsilon, otherwise
/// softmax(-s / temperature). Normalising sums are taken over sorted terms
/// so the result does not depend on model order.
WeightVector compute_weights(std::span<const double> scores, const ArbitratorConfig& config);

/**
 * Largest-remainder apportionment of n_total samples.
 *
 * Every model gets floor(n_total * w_i); the leftover samples go to the
 * largest fractional parts. Equal remainders are resolved by `tie_rank`
 * (lower rank first), or by model index when it is empty.
 */
std::vector<std::size_t> allocate_samples(const WeightVector& weights, std::size_t n_total,
                                          std::span<const std::size_t> tie_rank = {});

struct TimestepArbitration {
    QuantileForecast forecast;
    std::vector<std::size_t> sample_counts;
};

/// Pools draws from each model's fitted inverse CDF (n_i from `weights`, one
/// stream per model) and returns their empirical quantiles.
TimestepArbitration arbitrate_timestep(std::span<const QuantileForecast> forecasts, const WeightVector& weights,
                                       const ArbitratorConfig& config, std::span<RandomStream> streams,
                                       std::span<const std::size_t> tie_rank = {});

/// Convenience overload deriving one stream per model index from `seed`.
TimestepArbitration arbitrate_timestep(std::span<const QuantileForecast> forecasts, const WeightVector& weights,
                                       const ArbitratorConfig& config, std::uint64_t seed);

/**
 * Full arbitration over the horizon with forward simulation.
 *
 * At each step the window's scores give the weights (uniform while the
 * window is empty), the pooled sample gives the arbitrated quantiles, and
 * their median is pushed back into the window as the observation for that
 * step. Random streams are keyed by (seed, series id, timestep, model name).
 */
ArbitrationTrace run_arbitration(const ForecastPanel& panel, const PerformanceWindow& initial_window,
                                 const ArbitratorConfig& config, std::uint64_t seed);

/// Window of the last min(W, B) context steps, given B aligned backtest
/// forecasts per model (`backtest[i][b]`, oldest first). Throws AlignmentMismatch.
PerformanceWindow seed_window_from_context(const ForecastPanel& panel,
                                           std::span<const std::vector<QuantileForecast>> backtest,
                                           std::size_t capacity);

} // namespace synapse
