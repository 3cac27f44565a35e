#pragma once

#include "synapse/panel_document.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace synapse::synthetic {

/// One stationary stretch of the series, covering [begin, end).
struct RegimeSegment {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t regime = 0;  // regime id, shared by segments with the same dynamics
    double level = 0.0;
    double trend = 0.0;  // per step, measured from `begin`
    double seasonal_amplitude = 0.0;
    std::size_t seasonal_period = 1;
    double noise_scale = 0.0;
};

/// Piecewise regime description of a series of context_length + horizon points.
struct RegimeSpec {
    std::size_t context_length = 0;
    std::size_t horizon = 0;
    std::vector<RegimeSegment> segments;

    std::size_t length() const noexcept { return context_length + horizon; }
    /// Throws InvalidArgument unless segments tile [0, length()) in order
    /// with non-negative noise and positive periods.
    void validate() const;
    const RegimeSegment& segment_at(std::size_t index) const;
};

struct SyntheticSeries {
    std::vector<double> context;
    std::vector<double> actuals;
};

/// level + trend * (i - begin) + amplitude * sin(2 pi i / period) + noise * z_i.
SyntheticSeries generate_series(const RegimeSpec& spec, std::uint64_t seed);

/**
 * Gaussian-shaped forecaster whose skill depends on the regime.
 *
 * Inside a favoured regime it centres on the truth with a jitter of scale
 * `sharpness` and reports quantiles mu + sharpness * z_alpha. Elsewhere the
 * centre moves by `out_of_regime_bias` and the spread is multiplied by
 * `dispersion_inflation`.
 */
struct SyntheticExpert {
    std::string name;
    std::vector<std::size_t> favored_regimes;
    double sharpness = 1.0;
    double out_of_regime_bias = 0.0;
    double dispersion_inflation = 1.0;

    bool favors(std::size_t regime) const;
};

/// Standard normal quantile.
double normal_quantile(double p);

/// Forecasts for series positions first_index .. first_index + truth.size() - 1,
/// where `truth` holds the realised values at those positions.
std::vector<QuantileForecast> expert_forecast(const SyntheticExpert& expert, const RegimeSpec& spec,
                                              std::span<const double> truth, std::size_t first_index,
                                              const QuantileLevels& levels, std::uint64_t seed);

struct SuiteOptions {
    std::size_t min_models = 2;
    std::size_t max_models = 6;
    std::size_t context_length = 120;
    std::size_t backtest_steps = 16;
    std::size_t seasonality = 12;
    QuantileLevels levels;
    std::vector<std::string> domains = {"energy", "retail", "transport", "web", "nature"};
};

/// Horizon length used for each class.
std::size_t horizon_length(HorizonClass h);

/// Deterministic suite of panels with complementary experts; panel i uses
/// substream i of the seed, so panels can be generated independently.
std::vector<PanelDocument> build_benchmark_suite(std::size_t n_panels, std::uint64_t seed,
                                                 const SuiteOptions& options = {});

PanelDocument build_benchmark_panel(std::size_t index, std::uint64_t seed, const SuiteOptions& options = {});

} // namespace synapse::synthetic
