#include "synapse/quantile_dist.hpp"

#include <algorithm>
#include <cmath>

namespace synapse {

namespace {

// Three-point end slope with the shape-preserving corrections used by PCHIP.
double end_slope(double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (std::signbit(m) != std::signbit(d0) || d0 == 0.0) return 0.0;
    if (std::signbit(d0) != std::signbit(d1) && std::abs(m) > 3.0 * std::abs(d0)) m = 3.0 * d0;
    return m;
}

} // namespace

InverseCdf fit_inverse_cdf(const QuantileForecast& forecast) {
    InverseCdf icdf;
    const auto levels = forecast.levels().values();
    icdf.levels_.assign(levels.begin(), levels.end());
    icdf.values_.assign(forecast.values().begin(), forecast.values().end());
    // Validated forecasts may still carry sub-1e-12 relative decreases.
    for (std::size_t k = 1; k < icdf.values_.size(); ++k)
        icdf.values_[k] = std::max(icdf.values_[k], icdf.values_[k - 1]);

    const std::size_t K = icdf.levels_.size();
    icdf.slopes_.assign(K, 0.0);
    if (K < 2) return icdf;

    std::vector<double> h(K - 1), delta(K - 1);
    for (std::size_t k = 0; k + 1 < K; ++k) {
        h[k] = icdf.levels_[k + 1] - icdf.levels_[k];
        delta[k] = (icdf.values_[k + 1] - icdf.values_[k]) / h[k];
    }

    if (K == 2) {
        icdf.slopes_[0] = icdf.slopes_[1] = delta[0];
    } else {
        for (std::size_t k = 1; k + 1 < K; ++k) {
            if (delta[k - 1] * delta[k] <= 0.0) continue;
            const double w1 = 2.0 * h[k] + h[k - 1];
            const double w2 = h[k] + 2.0 * h[k - 1];
            icdf.slopes_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
        icdf.slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        icdf.slopes_[K - 1] = end_slope(h[K - 2], h[K - 3], delta[K - 2], delta[K - 3]);
    }

    icdf.lower_slope_ = std::max(0.0, delta.front());
    icdf.upper_slope_ = std::max(0.0, delta.back());
    return icdf;
}

double InverseCdf::operator()(double p) const {
    if (p <= levels_.front()) return values_.front() - (levels_.front() - p) * lower_slope_;
    if (p >= levels_.back()) return values_.back() + (p - levels_.back()) * upper_slope_;

    const auto it = std::upper_bound(levels_.begin(), levels_.end(), p);
    const auto k = static_cast<std::size_t>(it - levels_.begin()) - 1;
    const double h = levels_[k + 1] - levels_[k];
    const double y0 = values_[k];
    const double y1 = values_[k + 1];
    const double delta = (y1 - y0) / h;
    const double d0 = slopes_[k];
    const double d1 = slopes_[k + 1];
    const double c2 = (3.0 * delta - 2.0 * d0 - d1) / h;
    const double c3 = (d0 + d1 - 2.0 * delta) / (h * h);
    const double s = p - levels_[k];
    const double y = y0 + s * (d0 + s * (c2 + s * c3));
    // A monotone Hermite segment never leaves [y0, y1]; clamp away rounding.
    return std::clamp(y, y0, y1);
}

void sample_into(const InverseCdf& icdf, std::size_t n, RandomStream& rng, std::vector<double>& out) {
    out.reserve(out.size() + n);
    for (std::size_t j = 0; j < n; ++j) out.push_back(icdf(rng.uniform()));
}

std::vector<double> sample(const InverseCdf& icdf, std::size_t n, RandomStream& rng) {
    std::vector<double> out;
    sample_into(icdf, n, rng, out);
    return out;
}

double sorted_quantile(std::span<const double> sorted, double alpha) {
    if (sorted.empty()) throw EmptySampleSet("quantile of an empty sample");
    const double pos = static_cast<double>(sorted.size() - 1) * alpha;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

QuantileForecast quantiles_of_sorted(std::span<const double> sorted, const QuantileLevels& levels) {
    if (sorted.empty()) throw EmptySampleSet("quantiles of an empty sample");
    std::vector<double> values;
    values.reserve(levels.size());
    for (double alpha : levels.values()) values.push_back(sorted_quantile(sorted, alpha));
    // Interpolation between equal neighbours can round a hair below the previous level.
    for (std::size_t k = 1; k < values.size(); ++k) values[k] = std::max(values[k], values[k - 1]);
    return QuantileForecast(levels, std::move(values));
}

QuantileForecast empirical_quantiles(std::span<const double> samples, const QuantileLevels& levels) {
    if (samples.empty()) throw EmptySampleSet("empirical quantiles of an empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return quantiles_of_sorted(sorted, levels);
}

} // namespace synapse
