#pragma once

#include "synapse/core_model.hpp"

#include <string>
#include <vector>

namespace synapse {

struct PanelMetadata {
    std::string domain = "unknown";
    /// Grouping key for per-dataset aggregation; empty means the domain.
    std::string dataset;
    HorizonClass horizon_class = HorizonClass::short_term;
    std::string frequency = "unknown";

    const std::string& dataset_key() const noexcept { return dataset.empty() ? domain : dataset; }
    bool operator==(const PanelMetadata&) const = default;
};

/// Unvalidated backtest forecasts: per model, B rows of K values aligned
/// with the last B context observations.
struct RawPanelDocument {
    RawPanel panel;
    PanelMetadata meta;
    std::vector<std::vector<std::vector<double>>> backtest;  // [model][step][level]; empty if absent

    bool operator==(const RawPanelDocument&) const = default;
};

/// A validated panel together with its metadata and optional backtest.
struct PanelDocument {
    ForecastPanel panel;
    PanelMetadata meta;
    std::vector<std::vector<QuantileForecast>> backtest;  // [model][step]; empty if absent

    /// Restricts panel and backtest to the named models, in that order.
    PanelDocument with_models(std::span<const std::string> names) const;
    RawPanelDocument to_raw() const;
};

/// Validates the panel and the backtest shape. Throws ValidationError subclasses.
PanelDocument validate_document(const RawPanelDocument& raw);

} // namespace synapse
