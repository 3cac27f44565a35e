#pragma once

#include "synapse/errors.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synapse {

/**
 * Probability levels at which a forecast reports quantiles.
 *
 * Strictly increasing, every level inside the open interval (0, 1).
 * Default-constructed levels are the nine deciles 0.1, ..., 0.9.
 */
class QuantileLevels {
public:
    QuantileLevels();
    explicit QuantileLevels(std::vector<double> levels);

    static QuantileLevels deciles();

    std::size_t size() const noexcept { return levels_.size(); }
    double operator[](std::size_t k) const { return levels_[k]; }
    std::span<const double> values() const noexcept { return levels_; }

    /// Index of `level` if present (within `tol`).
    std::optional<std::size_t> index_of(double level, double tol = 1e-12) const;

    bool operator==(const QuantileLevels&) const = default;

private:
    std::vector<double> levels_;
};

/// One model's predictive distribution at one timestep.
class QuantileForecast {
public:
    /// Throws DimensionMismatch, NonFinite or NonMonotoneQuantiles.
    QuantileForecast(QuantileLevels levels, std::vector<double> values);

    static QuantileForecast point_mass(const QuantileLevels& levels, double value);

    const QuantileLevels& levels() const noexcept { return levels_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t k) const { return values_[k]; }

    /// Value at level 0.5; linearly interpolated between neighbouring levels
    /// when 0.5 is not one of them, clamped at the outermost levels.
    double median() const;

    bool operator==(const QuantileForecast&) const = default;

private:
    QuantileLevels levels_;
    std::vector<double> values_;
};

/// Monotonicity check used by QuantileForecast and panel validation.
/// Ties are legal; only decreases beyond 1e-12 relative are rejected.
/// Returns the first offending index `k` (values[k] > values[k + 1]).
std::optional<std::size_t> find_monotonicity_violation(std::span<const double> values);

/// The nine deciles 0.1, ..., 0.9 as a plain vector.
std::vector<double> decile_levels();

/// Unvalidated panel, as parsed from a file or assembled by a generator.
struct RawModelForecasts {
    std::string name;
    std::vector<std::vector<double>> quantiles;  // T rows of K values

    bool operator==(const RawModelForecasts&) const = default;
};

struct RawPanel {
    std::string series_id;
    std::vector<double> context;
    std::optional<std::vector<double>> actuals;
    std::size_t horizon = 0;
    std::size_t seasonality = 1;
    std::vector<double> levels = decile_levels();
    std::vector<RawModelForecasts> models;

    bool operator==(const RawPanel&) const = default;
};

struct ModelForecasts {
    std::string name;
    std::vector<QuantileForecast> steps;
};

class ForecastPanel;

/// Checks every panel invariant and returns the validated panel.
ForecastPanel validate_panel(const RawPanel& raw);

/// The evaluation unit: one series, its context, optional actuals and
/// per-model quantile forecasts over the horizon.
class ForecastPanel {
public:
    const std::string& series_id() const noexcept { return series_id_; }
    std::span<const double> context() const noexcept { return context_; }
    bool has_actuals() const noexcept { return actuals_.has_value(); }
    /// Throws MissingActuals when the panel carries no actuals.
    std::span<const double> actuals() const;
    std::size_t horizon() const noexcept { return horizon_; }
    std::size_t seasonality() const noexcept { return seasonality_; }
    const QuantileLevels& levels() const noexcept { return levels_; }

    std::size_t model_count() const noexcept { return models_.size(); }
    const std::vector<ModelForecasts>& models() const noexcept { return models_; }
    std::vector<std::string> model_names() const;
    std::optional<std::size_t> model_index(std::string_view name) const;

    /// Forecasts of every model at timestep t (0-based), in model order.
    std::vector<QuantileForecast> forecasts_at(std::size_t t) const;

    /// Panel restricted to (and reordered as) the named models.
    ForecastPanel with_models(std::span<const std::string> names) const;

    RawPanel to_raw() const;

private:
    friend ForecastPanel validate_panel(const RawPanel& raw);
    ForecastPanel() = default;

    std::string series_id_;
    std::vector<double> context_;
    std::optional<std::vector<double>> actuals_;
    std::size_t horizon_ = 0;
    std::size_t seasonality_ = 1;
    QuantileLevels levels_;
    std::vector<ModelForecasts> models_;
};

/// Non-negative per-model weights summing to one.
class WeightVector {
public:
    static constexpr double sum_tolerance = 1e-9;

    /// Throws InvalidArgument on negative, non-finite, empty, or unnormalised input.
    explicit WeightVector(std::vector<double> weights);

    static WeightVector uniform(std::size_t n);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> values() const noexcept { return weights_; }

    bool operator==(const WeightVector&) const = default;

private:
    std::vector<double> weights_;
};

struct PerformanceRecord {
    double observation;
    std::vector<QuantileForecast> forecasts;  // one per model
};

/// FIFO of the most recent `capacity` performance records.
class PerformanceWindow {
public:
    explicit PerformanceWindow(std::size_t capacity);

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    const std::deque<PerformanceRecord>& records() const noexcept { return records_; }

    /// Model count shared by all records, if any record exists.
    std::optional<std::size_t> model_count() const;

    /// Appends, evicting the oldest record when full. Throws DimensionMismatch
    /// when the record's model count differs from the existing records.
    void push(PerformanceRecord record);

private:
    std::size_t capacity_;
    std::deque<PerformanceRecord> records_;
};

/// Forecast-length class, assigned by panel metadata rather than inferred.
enum class HorizonClass { short_term, medium_term, long_term };

const char* to_string(HorizonClass h);
HorizonClass parse_horizon_class(std::string_view text);

enum class WeightingBranch {
    uniform_prior,     // empty window
    inverse_error,
    softmax_fallback,
    static_uniform,
};

const char* to_string(WeightingBranch branch);

struct ArbitrationStep {
    QuantileForecast forecast;
    WeightVector weights;
    std::vector<std::size_t> sample_counts;
    double simulated_truth;
    WeightingBranch branch;
    std::vector<double> scores;  // windowed CRPS per model; empty when not computed
};

/// Per-timestep diagnostic record of one arbitration run.
struct ArbitrationTrace {
    std::vector<std::string> model_names;
    std::vector<ArbitrationStep> steps;

    std::size_t horizon() const noexcept { return steps.size(); }
    std::vector<QuantileForecast> forecasts() const;
};

} // namespace synapse
