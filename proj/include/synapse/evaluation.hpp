#pragma once

#include "synapse/arbitration.hpp"
#include "synapse/oracle_analysis.hpp"
#include "synapse/panel_document.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace synapse::harness {

/// Registered method names. "per-model" expands to one "model:<name>" row per constituent.
inline const std::vector<std::string> registered_methods = {"synapse", "synapse-static", "median",
                                                            "mean",    "per-model",      "oracle"};

/// Checks names against the registered set; throws InvalidArgument.
std::vector<std::string> parse_methods(std::span<const std::string> names);

enum class Aggregation {
    series,   // mean over every panel in the group
    dataset,  // mean over panels per dataset, then mean over datasets
};

Aggregation parse_aggregation(std::string_view text);

struct EvaluationConfig {
    ArbitratorConfig arbitrator;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    /// Seed the performance window from backtest forecasts when a panel has them.
    bool use_backtest = true;
    /// Method the win/loss columns compare against.
    std::string reference_method = "median";
    Aggregation aggregation = Aggregation::series;
};

struct PanelScore {
    std::size_t panel_index = 0;  // position in the evaluated collection
    std::string series_id;
    PanelMetadata meta;
    std::string method;
    double crps = 0.0;
    double mase = 0.0;
};

/// One aggregated line of a report. `group` is "overall", "horizon:<class>" or "domain:<name>".
struct ReportRow {
    std::string method;
    std::string group;
    double crps = 0.0;
    double mase = 0.0;
    std::size_t panels = 0;
    std::size_t wins = 0;    // panels where CRPS beats the reference by more than 1e-9
    std::size_t losses = 0;
    std::size_t ties = 0;

    bool operator==(const ReportRow&) const = default;
};

struct EvaluationResult {
    std::vector<PanelScore> scores;
    std::vector<ReportRow> rows;
};

/// The performance window a SYNAPSE run on this panel starts from.
PerformanceWindow initial_window(const PanelDocument& doc, const EvaluationConfig& config);

ArbitrationTrace arbitrate_document(const PanelDocument& doc, const EvaluationConfig& config,
                                    WeightingMode mode);

/// Scores of every requested method on one panel (requires actuals).
std::vector<PanelScore> score_panel(const PanelDocument& doc, std::size_t panel_index, std::span<const std::string> methods,
                                    const EvaluationConfig& config);

/// Scores every panel, in parallel up to config.workers; output order follows input order.
std::vector<PanelScore> score_panels(std::span<const PanelDocument> docs, std::span<const std::string> methods,
                                     const EvaluationConfig& config);

std::vector<ReportRow> aggregate_scores(std::span<const PanelScore> scores, const EvaluationConfig& config);

EvaluationResult run_evaluation(std::span<const PanelDocument> docs, std::span<const std::string> methods,
                                const EvaluationConfig& config);

struct ScalingRow {
    std::vector<std::string> pool;
    double synapse_crps = 0.0;
    double synapse_mase = 0.0;
    std::string best_crps_model;
    double best_crps = 0.0;
    std::string best_mase_model;
    double best_mase = 0.0;
};

/// One row per prefix of `model_order` with at least two models. Throws
/// InsufficientModels when fewer than two names are given or a panel lacks one.
std::vector<ScalingRow> run_pool_scaling(std::span<const PanelDocument> docs,
                                         std::span<const std::string> model_order, const EvaluationConfig& config);

struct WinLoss {
    std::size_t wins = 0;
    std::size_t losses = 0;
    std::size_t ties = 0;

    bool operator==(const WinLoss&) const = default;
};

struct WinLossResult {
    WinLoss crps;
    WinLoss mase;
};

inline constexpr double win_loss_tolerance = 1e-9;

/// Per-panel comparison of method_a against method_b, from a's point of view.
WinLossResult run_win_loss(std::span<const PanelScore> scores, std::string_view method_a, std::string_view method_b);

WinLossResult run_win_loss(std::span<const PanelDocument> docs, const std::string& method_a,
                           const std::string& method_b, const EvaluationConfig& config);

struct SelectionAccuracy {
    std::string method;                 // "synapse" or "median"
    std::vector<double> pooled;         // [k - 1], total hits / total steps
    std::vector<double> macro;          // [k - 1], mean over datasets of per-dataset fractions
};

/// Top-k agreement with the oracle for k = 1..max model count.
std::vector<SelectionAccuracy> run_selection_accuracy(std::span<const PanelDocument> docs,
                                                      const EvaluationConfig& config);

struct LumpinessRow {
    std::string domain;
    double lumpiness = 0.0;  // mean over the domain's panels
    double mase_gain = 0.0;  // median-ensemble MASE minus SYNAPSE MASE, domain mean
    std::size_t panels = 0;
};

struct LumpinessAnalysis {
    std::vector<LumpinessRow> rows;
    /// Pearson r across domains; unset with fewer than two domains or zero variance.
    std::optional<double> correlation;
};

/// Lumpiness of each panel's context, grouped by domain, against the MASE
/// gain of SYNAPSE over the median ensemble. Panels too short for two tiles
/// are skipped. Needs "synapse" and "median" scores.
LumpinessAnalysis run_lumpiness_analysis(std::span<const PanelDocument> docs, std::span<const PanelScore> scores);

} // namespace synapse::harness
