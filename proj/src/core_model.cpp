#include "synapse/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace synapse {

NonMonotoneQuantiles::NonMonotoneQuantiles(std::size_t index, std::optional<std::string> model,
                                           std::optional<std::size_t> timestep)
    : ValidationError([&] {
          std::ostringstream os;
          os << "quantile values decrease between index " << index << " and " << index + 1;
          if (model) os << " (model '" << *model << "'";
          if (model && timestep) os << ", timestep " << *timestep;
          if (model) os << ")";
          return os.str();
      }()),
      index_(index), model_(std::move(model)), timestep_(timestep) {}

ParseError::ParseError(std::string file, std::size_t line, const std::string& what)
    : ValidationError(file + ":" + std::to_string(line) + ": " + what),
      file_(std::move(file)), line_(line) {}

std::vector<double> decile_levels() {
    std::vector<double> levels(9);
    for (std::size_t k = 0; k < levels.size(); ++k) levels[k] = static_cast<double>(k + 1) / 10.0;
    return levels;
}

QuantileLevels::QuantileLevels() : levels_(decile_levels()) {}

QuantileLevels::QuantileLevels(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw InvalidArgument("quantile levels must not be empty");
    for (std::size_t k = 0; k < levels_.size(); ++k) {
        const double a = levels_[k];
        if (!std::isfinite(a) || a <= 0.0 || a >= 1.0)
            throw InvalidArgument("quantile level " + std::to_string(a) + " outside (0, 1)");
        if (k > 0 && !(a > levels_[k - 1]))
            throw InvalidArgument("quantile levels must be strictly increasing");
    }
}

QuantileLevels QuantileLevels::deciles() { return QuantileLevels(); }

std::optional<std::size_t> QuantileLevels::index_of(double level, double tol) const {
    for (std::size_t k = 0; k < levels_.size(); ++k)
        if (std::abs(levels_[k] - level) <= tol) return k;
    return std::nullopt;
}

std::optional<std::size_t> find_monotonicity_violation(std::span<const double> values) {
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double a = values[k];
        const double b = values[k + 1];
        if (a > b && (a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) return k;
    }
    return std::nullopt;
}

QuantileForecast::QuantileForecast(QuantileLevels levels, std::vector<double> values)
    : levels_(std::move(levels)), values_(std::move(values)) {
    if (values_.size() != levels_.size())
        throw DimensionMismatch("forecast has " + std::to_string(values_.size()) + " values for " +
                                std::to_string(levels_.size()) + " levels");
    for (double v : values_)
        if (!std::isfinite(v)) throw NonFinite("forecast contains a non-finite value");
    if (auto bad = find_monotonicity_violation(values_)) throw NonMonotoneQuantiles(*bad);
}

QuantileForecast QuantileForecast::point_mass(const QuantileLevels& levels, double value) {
    return QuantileForecast(levels, std::vector<double>(levels.size(), value));
}

double QuantileForecast::median() const {
    const auto lv = levels_.values();
    if (auto k = levels_.index_of(0.5)) return values_[*k];
    if (0.5 <= lv.front()) return values_.front();
    if (0.5 >= lv.back()) return values_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(lv.begin(), lv.end(), 0.5) - lv.begin());
    const std::size_t lo = hi - 1;
    const double frac = (0.5 - lv[lo]) / (lv[hi] - lv[lo]);
    return values_[lo] + frac * (values_[hi] - values_[lo]);
}

namespace {

void require_finite(std::span<const double> xs, const std::string& what) {
    for (double x : xs)
        if (!std::isfinite(x)) throw NonFinite(what + " contains a non-finite value");
}

} // namespace

ForecastPanel validate_panel(const RawPanel& raw) {
    ForecastPanel panel;
    panel.series_id_ = raw.series_id;
    panel.levels_ = QuantileLevels(raw.levels);
    const std::size_t K = panel.levels_.size();

    if (raw.horizon == 0) throw DimensionMismatch("horizon must be positive");
    if (raw.seasonality == 0) throw InvalidArgument("seasonality must be positive");
    if (raw.context.size() < raw.seasonality + 1)
        throw DimensionMismatch("context length " + std::to_string(raw.context.size()) +
                                " shorter than seasonality + 1");
    require_finite(raw.context, "context");
    if (raw.actuals) {
        if (raw.actuals->size() != raw.horizon)
            throw DimensionMismatch("actuals length " + std::to_string(raw.actuals->size()) +
                                    " differs from horizon " + std::to_string(raw.horizon));
        require_finite(*raw.actuals, "actuals");
    }
    if (raw.models.empty()) throw DimensionMismatch("panel has no models");

    std::unordered_set<std::string> names;
    panel.models_.reserve(raw.models.size());
    for (const auto& model : raw.models) {
        if (!names.insert(model.name).second)
            throw DuplicateModelName("model name '" + model.name + "' appears twice");
        if (model.quantiles.size() != raw.horizon)
            throw DimensionMismatch("model '" + model.name + "' has " +
                                    std::to_string(model.quantiles.size()) + " timesteps, expected " +
                                    std::to_string(raw.horizon));
        ModelForecasts validated{model.name, {}};
        validated.steps.reserve(raw.horizon);
        for (std::size_t t = 0; t < model.quantiles.size(); ++t) {
            const auto& row = model.quantiles[t];
            if (row.size() != K)
                throw DimensionMismatch("model '" + model.name + "' timestep " + std::to_string(t) +
                                        " has " + std::to_string(row.size()) + " quantiles, expected " +
                                        std::to_string(K));
            require_finite(row, "model '" + model.name + "' timestep " + std::to_string(t));
            if (auto bad = find_monotonicity_violation(row)) throw NonMonotoneQuantiles(*bad, model.name, t);
            validated.steps.emplace_back(panel.levels_, row);
        }
        panel.models_.push_back(std::move(validated));
    }

    panel.context_ = raw.context;
    panel.actuals_ = raw.actuals;
    panel.horizon_ = raw.horizon;
    panel.seasonality_ = raw.seasonality;
    return panel;
}

std::span<const double> ForecastPanel::actuals() const {
    if (!actuals_) throw MissingActuals("panel '" + series_id_ + "' has no actuals");
    return *actuals_;
}

std::vector<std::string> ForecastPanel::model_names() const {
    std::vector<std::string> names;
    names.reserve(models_.size());
    for (const auto& m : models_) names.push_back(m.name);
    return names;
}

std::optional<std::size_t> ForecastPanel::model_index(std::string_view name) const {
    for (std::size_t i = 0; i < models_.size(); ++i)
        if (models_[i].name == name) return i;
    return std::nullopt;
}

std::vector<QuantileForecast> ForecastPanel::forecasts_at(std::size_t t) const {
    std::vector<QuantileForecast> out;
    out.reserve(models_.size());
    for (const auto& m : models_) out.push_back(m.steps.at(t));
    return out;
}

ForecastPanel ForecastPanel::with_models(std::span<const std::string> names) const {
    if (names.empty()) throw InvalidArgument("model subset must not be empty");
    ForecastPanel out = *this;
    out.models_.clear();
    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
        if (!seen.insert(name).second) throw DuplicateModelName("model '" + name + "' requested twice");
        auto idx = model_index(name);
        if (!idx) throw InvalidArgument("panel '" + series_id_ + "' has no model '" + name + "'");
        out.models_.push_back(models_[*idx]);
    }
    return out;
}

RawPanel ForecastPanel::to_raw() const {
    RawPanel raw;
    raw.series_id = series_id_;
    raw.context = context_;
    raw.actuals = actuals_;
    raw.horizon = horizon_;
    raw.seasonality = seasonality_;
    raw.levels.assign(levels_.values().begin(), levels_.values().end());
    for (const auto& m : models_) {
        RawModelForecasts rm{m.name, {}};
        for (const auto& q : m.steps) rm.quantiles.emplace_back(q.values().begin(), q.values().end());
        raw.models.push_back(std::move(rm));
    }
    return raw;
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidArgument("weight vector must not be empty");
    double total = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("weights must be finite and non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > sum_tolerance)
        throw InvalidArgument("weights sum to " + std::to_string(total) + ", expected 1");
}

WeightVector WeightVector::uniform(std::size_t n) {
    if (n == 0) throw InvalidArgument("weight vector must not be empty");
    return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

PerformanceWindow::PerformanceWindow(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw InvalidArgument("window capacity must be at least 1");
}

std::optional<std::size_t> PerformanceWindow::model_count() const {
    if (records_.empty()) return std::nullopt;
    return records_.front().forecasts.size();
}

void PerformanceWindow::push(PerformanceRecord record) {
    if (auto n = model_count(); n && *n != record.forecasts.size())
        throw DimensionMismatch("performance record has " + std::to_string(record.forecasts.size()) +
                                " forecasts, window holds " + std::to_string(*n));
    if (records_.size() == capacity_) records_.pop_front();
    records_.push_back(std::move(record));
}

const char* to_string(WeightingBranch branch) {
    switch (branch) {
    case WeightingBranch::uniform_prior: return "uniform_prior";
    case WeightingBranch::inverse_error: return "inverse_error";
    case WeightingBranch::softmax_fallback: return "softmax_fallback";
    case WeightingBranch::static_uniform: return "static_uniform";
    }
    return "unknown";
}

const char* to_string(HorizonClass h) {
    switch (h) {
    case HorizonClass::short_term: return "short";
    case HorizonClass::medium_term: return "medium";
    case HorizonClass::long_term: return "long";
    }
    return "unknown";
}

HorizonClass parse_horizon_class(std::string_view text) {
    if (text == "short") return HorizonClass::short_term;
    if (text == "medium") return HorizonClass::medium_term;
    if (text == "long") return HorizonClass::long_term;
    throw InvalidArgument("unknown horizon class '" + std::string(text) + "'");
}

std::vector<QuantileForecast> ArbitrationTrace::forecasts() const {
    std::vector<QuantileForecast> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.forecast);
    return out;
}

} // namespace synapse
