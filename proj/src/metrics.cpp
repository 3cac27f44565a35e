#include "synapse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace synapse::metrics {

namespace {

void require_level(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("quantile level must lie in (0, 1)");
}

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Sample variance (n - 1 denominator), two-pass.
double sample_variance(std::span<const double> xs) {
    const double mu = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return ss / static_cast<double>(xs.size() - 1);
}

} // namespace

double pinball_loss(double alpha, double q_hat, double y) {
    require_level(alpha);
    return y > q_hat ? alpha * (y - q_hat) : (1.0 - alpha) * (q_hat - y);
}

double weighted_quantile_loss(double alpha, double q_hat, double y) {
    return 2.0 * pinball_loss(alpha, q_hat, y) / std::max(std::abs(y), wql_denominator_floor);
}

double crps_timestep(const QuantileForecast& forecast, double y) {
    const auto levels = forecast.levels().values();
    double total = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k)
        total += weighted_quantile_loss(levels[k], forecast[k], y);
    return total / static_cast<double>(levels.size());
}

CrpsSeries crps_series(std::span<const QuantileForecast> forecasts, std::span<const double> actuals) {
    if (forecasts.size() != actuals.size())
        throw LengthMismatch("crps_series: " + std::to_string(forecasts.size()) + " forecasts vs " +
                             std::to_string(actuals.size()) + " actuals");
    if (forecasts.empty()) throw LengthMismatch("crps_series: empty series");
    CrpsSeries out;
    out.per_timestep.reserve(forecasts.size());
    for (std::size_t t = 0; t < forecasts.size(); ++t)
        out.per_timestep.push_back(crps_timestep(forecasts[t], actuals[t]));
    out.mean = mean_of(out.per_timestep);
    return out;
}

double seasonal_naive_mae(std::span<const double> context, std::size_t m) {
    if (m == 0) throw InvalidArgument("seasonality must be positive");
    if (context.size() <= m)
        throw SeriesTooShort("context of length " + std::to_string(context.size()) +
                             " too short for seasonality " + std::to_string(m));
    double total = 0.0;
    for (std::size_t j = m; j < context.size(); ++j) total += std::abs(context[j] - context[j - m]);
    const double denom = total / static_cast<double>(context.size() - m);
    if (denom == 0.0) throw ZeroDenominator("seasonal naive error is zero on an m-periodic context");
    return denom;
}

double mase(std::span<const double> point_forecasts, std::span<const double> actuals,
            std::span<const double> context, std::size_t m) {
    if (point_forecasts.size() != actuals.size() || actuals.empty())
        throw LengthMismatch("mase: forecasts and actuals must have equal, non-zero length");
    const double scale = seasonal_naive_mae(context, m);
    double mae = 0.0;
    for (std::size_t t = 0; t < actuals.size(); ++t) mae += std::abs(point_forecasts[t] - actuals[t]);
    mae /= static_cast<double>(actuals.size());
    return mae / scale;
}

ScoreSummary score_series(std::span<const QuantileForecast> forecasts, std::span<const double> actuals,
                          std::span<const double> context, std::size_t m) {
    auto crps = crps_series(forecasts, actuals);
    std::vector<double> medians;
    medians.reserve(forecasts.size());
    for (const auto& f : forecasts) medians.push_back(f.median());
    ScoreSummary out;
    out.crps = crps.mean;
    out.per_timestep_crps = std::move(crps.per_timestep);
    out.mase = mase(medians, actuals, context, m);
    return out;
}

std::size_t default_tile_width(std::size_t length) { return std::max<std::size_t>(10, length / 20); }

double lumpiness(std::span<const double> series, std::size_t tile_width) {
    if (tile_width < 2) throw InvalidArgument("lumpiness tile width must be at least 2");
    if (series.size() < 2 * tile_width)
        throw SeriesTooShort("lumpiness needs at least two tiles of width " + std::to_string(tile_width));

    const double mu = mean_of(series);
    double ss = 0.0;
    for (double x : series) ss += (x - mu) * (x - mu);
    const double sd = std::sqrt(ss / static_cast<double>(series.size() - 1));
    if (sd == 0.0) return 0.0;

    std::vector<double> z(series.size());
    std::transform(series.begin(), series.end(), z.begin(), [&](double x) { return (x - mu) / sd; });

    const std::size_t tiles = z.size() / tile_width;
    std::vector<double> tile_vars;
    tile_vars.reserve(tiles);
    for (std::size_t i = 0; i < tiles; ++i)
        tile_vars.push_back(sample_variance(std::span(z).subspan(i * tile_width, tile_width)));
    return sample_variance(tile_vars);
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw LengthMismatch("pearson_correlation: unequal lengths");
    if (xs.size() < 2) throw LengthMismatch("pearson_correlation: need at least two points");
    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateVariance("pearson_correlation: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

} // namespace synapse::metrics
