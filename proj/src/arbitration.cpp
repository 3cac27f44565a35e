#include "synapse/arbitration.hpp"

#include "synapse/metrics.hpp"
#include "synapse/quantile_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace synapse {

namespace {

// Order-independent sum: identical multisets give bit-identical totals.
double canonical_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    return std::accumulate(terms.begin(), terms.end(), 0.0);
}

WeightVector normalized(std::vector<double> raw) {
    const double total = canonical_sum(raw);
    for (double& w : raw) w /= total;
    return WeightVector(std::move(raw));
}

std::vector<std::size_t> rank_by_name(const std::vector<std::string>& names) {
    std::vector<std::size_t> order(names.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    std::vector<std::size_t> rank(names.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    return rank;
}

} // namespace

const char* to_string(WeightingMode mode) {
    return mode == WeightingMode::dynamic ? "dynamic" : "static-uniform";
}

WeightingMode parse_weighting_mode(std::string_view text) {
    if (text == "dynamic") return WeightingMode::dynamic;
    if (text == "static-uniform" || text == "static") return WeightingMode::static_uniform;
    throw InvalidArgument("unknown weighting mode '" + std::string(text) + "'");
}

void ArbitratorConfig::validate(std::size_t n_models) const {
    if (n_models == 0) throw InvalidArgument("arbitration needs at least one model");
    if (n_total < n_models)
        throw InvalidArgument("n_total " + std::to_string(n_total) + " is smaller than the model count " +
                              std::to_string(n_models));
    if (window_capacity && *window_capacity == 0) throw InvalidArgument("window capacity must be at least 1");
    if (!(softmax_temperature > 0.0) || !std::isfinite(softmax_temperature))
        throw InvalidArgument("softmax temperature must be positive");
    if (!(near_zero_epsilon >= 0.0)) throw InvalidArgument("near-zero epsilon must be non-negative");
}

std::size_t ArbitratorConfig::resolved_window(std::size_t horizon) const {
    if (window_capacity) return *window_capacity;
    return std::max<std::size_t>(1, std::min<std::size_t>(horizon, 16));
}

std::vector<double> average_crps_scores(const PerformanceWindow& window) {
    if (window.empty()) throw EmptyWindow("cannot score models on an empty performance window");
    const std::size_t n = *window.model_count();
    std::vector<double> scores(n, 0.0);
    for (const auto& record : window.records())
        for (std::size_t i = 0; i < n; ++i)
            scores[i] += metrics::crps_timestep(record.forecasts[i], record.observation);
    for (double& s : scores) s /= static_cast<double>(window.size());
    return scores;
}

WeightingBranch select_weighting_branch(std::span<const double> scores, const ArbitratorConfig& config) {
    const double lowest = *std::min_element(scores.begin(), scores.end());
    return lowest <= config.near_zero_epsilon ? WeightingBranch::softmax_fallback : WeightingBranch::inverse_error;
}

WeightVector compute_weights(std::span<const double> scores, const ArbitratorConfig& config) {
    if (scores.empty()) throw InvalidArgument("compute_weights: no scores");
    for (double s : scores)
        if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("scores must be finite and non-negative");

    std::vector<double> raw(scores.size());
    if (select_weighting_branch(scores, config) == WeightingBranch::inverse_error) {
        std::transform(scores.begin(), scores.end(), raw.begin(), [](double s) { return 1.0 / s; });
    } else {
        // Shift by the minimum so the largest term is exp(0) = 1.
        const double lowest = *std::min_element(scores.begin(), scores.end());
        std::transform(scores.begin(), scores.end(), raw.begin(), [&](double s) {
            return std::exp(-(s - lowest) / config.softmax_temperature);
        });
    }
    return normalized(std::move(raw));
}

std::vector<std::size_t> allocate_samples(const WeightVector& weights, std::size_t n_total,
                                          std::span<const std::size_t> tie_rank) {
    const std::size_t n = weights.size();
    if (!tie_rank.empty() && tie_rank.size() != n) throw DimensionMismatch("tie rank size differs from weights");

    std::vector<std::size_t> counts(n);
    std::vector<double> remainder(n);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double quota = static_cast<double>(n_total) * weights[i];
        const double whole = std::floor(quota);
        counts[i] = static_cast<std::size_t>(whole);
        remainder[i] = quota - whole;
        assigned += counts[i];
    }

    auto rank = [&](std::size_t i) { return tie_rank.empty() ? i : tie_rank[i]; };
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    if (assigned <= n_total) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
            return rank(a) < rank(b);
        });
        for (std::size_t r = 0; assigned < n_total; ++r, ++assigned) ++counts[order[r % n]];
    } else {
        // Floating quotas can overshoot when the weights sum a hair above one.
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (remainder[a] != remainder[b]) return remainder[a] < remainder[b];
            return rank(a) > rank(b);
        });
        for (std::size_t r = 0; assigned > n_total; ++r) {
            const std::size_t i = order[r % n];
            if (counts[i] > 0) {
                --counts[i];
                --assigned;
            }
        }
    }
    return counts;
}

TimestepArbitration arbitrate_timestep(std::span<const QuantileForecast> forecasts, const WeightVector& weights,
                                       const ArbitratorConfig& config, std::span<RandomStream> streams,
                                       std::span<const std::size_t> tie_rank) {
    const std::size_t n = forecasts.size();
    if (n == 0) throw InvalidArgument("arbitrate_timestep: no forecasts");
    if (weights.size() != n || streams.size() != n)
        throw DimensionMismatch("arbitrate_timestep: forecasts, weights and streams must align");
    for (const auto& f : forecasts)
        if (!(f.levels() == forecasts.front().levels()))
            throw DimensionMismatch("arbitrate_timestep: forecasts use different quantile levels");

    auto counts = allocate_samples(weights, config.n_total, tie_rank);
    std::vector<double> pool;
    pool.reserve(config.n_total);
    for (std::size_t i = 0; i < n; ++i) {
        if (counts[i] == 0) continue;
        sample_into(fit_inverse_cdf(forecasts[i]), counts[i], streams[i], pool);
    }
    if (pool.empty()) throw AllZeroAllocation("no samples were allocated to any model");
    std::sort(pool.begin(), pool.end());
    const QuantileLevels& levels = config.levels ? *config.levels : forecasts.front().levels();
    return {quantiles_of_sorted(pool, levels), std::move(counts)};
}

TimestepArbitration arbitrate_timestep(std::span<const QuantileForecast> forecasts, const WeightVector& weights,
                                       const ArbitratorConfig& config, std::uint64_t seed) {
    std::vector<RandomStream> streams;
    streams.reserve(forecasts.size());
    const RandomStream root(mix64(seed));
    for (std::size_t i = 0; i < forecasts.size(); ++i) streams.push_back(root.substream(i));
    return arbitrate_timestep(forecasts, weights, config, streams);
}

ArbitrationTrace run_arbitration(const ForecastPanel& panel, const PerformanceWindow& initial_window,
                                 const ArbitratorConfig& config, std::uint64_t seed) {
    const std::size_t n = panel.model_count();
    config.validate(n);
    if (auto m = initial_window.model_count(); m && *m != n)
        throw DimensionMismatch("initial window has " + std::to_string(*m) + " models, panel has " +
                                std::to_string(n));

    PerformanceWindow window(config.resolved_window(panel.horizon()));
    for (const auto& record : initial_window.records()) window.push(record);

    ArbitrationTrace trace;
    trace.model_names = panel.model_names();
    const auto tie_rank = rank_by_name(trace.model_names);
    trace.steps.reserve(panel.horizon());

    for (std::size_t t = 0; t < panel.horizon(); ++t) {
        std::vector<double> scores;
        WeightingBranch branch;
        std::optional<WeightVector> weights;
        if (config.mode == WeightingMode::static_uniform) {
            branch = WeightingBranch::static_uniform;
            weights = WeightVector::uniform(n);
        } else if (window.empty()) {
            branch = WeightingBranch::uniform_prior;
            weights = WeightVector::uniform(n);
        } else {
            scores = average_crps_scores(window);
            branch = select_weighting_branch(scores, config);
            weights = compute_weights(scores, config);
        }

        auto forecasts = panel.forecasts_at(t);
        std::vector<RandomStream> streams;
        streams.reserve(n);
        for (const auto& name : trace.model_names)
            streams.push_back(RandomStream::for_draw(seed, panel.series_id(), t, name));

        auto step = arbitrate_timestep(forecasts, *weights, config, streams, tie_rank);
        const double simulated = step.forecast.median();
        window.push(PerformanceRecord{simulated, forecasts});

        trace.steps.push_back(ArbitrationStep{std::move(step.forecast), std::move(*weights),
                                              std::move(step.sample_counts), simulated, branch,
                                              std::move(scores)});
    }
    return trace;
}

PerformanceWindow seed_window_from_context(const ForecastPanel& panel,
                                           std::span<const std::vector<QuantileForecast>> backtest,
                                           std::size_t capacity) {
    PerformanceWindow window(capacity);
    if (backtest.empty()) return window;
    if (backtest.size() != panel.model_count())
        throw AlignmentMismatch("backtest covers " + std::to_string(backtest.size()) + " models, panel has " +
                                std::to_string(panel.model_count()));
    const std::size_t steps = backtest.front().size();
    for (const auto& per_model : backtest)
        if (per_model.size() != steps) throw AlignmentMismatch("backtest lengths differ between models");
    const auto context = panel.context();
    if (steps > context.size())
        throw AlignmentMismatch("backtest has " + std::to_string(steps) + " steps but the context only " +
                                std::to_string(context.size()));

    const std::size_t used = std::min(steps, capacity);
    for (std::size_t b = steps - used; b < steps; ++b) {
        PerformanceRecord record{context[context.size() - steps + b], {}};
        record.forecasts.reserve(backtest.size());
        for (const auto& per_model : backtest) record.forecasts.push_back(per_model[b]);
        window.push(std::move(record));
    }
    return window;
}

} // namespace synapse
