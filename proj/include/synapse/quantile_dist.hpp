#pragma once

#include "synapse/core_model.hpp"
#include "synapse/random_stream.hpp"

#include <span>
#include <vector>

namespace synapse {

/**
 * Continuous inverse CDF estimated from a quantile forecast.
 *
 * Between the outermost levels it is a monotone piecewise cubic Hermite
 * interpolant (PCHIP slopes: weighted harmonic mean of adjacent secants,
 * zero at local extrema, shape-preserving three-point end slopes). Outside
 * them it extends linearly with the secant slope of the outermost segment,
 * floored at zero. Non-decreasing on its whole domain and exact at every knot.
 */
class InverseCdf {
public:
    /// F^-1(p). Accepts any finite p; levels outside (0, 1) follow the tail lines.
    double operator()(double p) const;

    std::span<const double> knot_levels() const noexcept { return levels_; }
    std::span<const double> knot_values() const noexcept { return values_; }
    std::span<const double> knot_slopes() const noexcept { return slopes_; }
    double lower_tail_slope() const noexcept { return lower_slope_; }
    double upper_tail_slope() const noexcept { return upper_slope_; }

private:
    friend InverseCdf fit_inverse_cdf(const QuantileForecast& forecast);
    InverseCdf() = default;

    std::vector<double> levels_;
    std::vector<double> values_;
    std::vector<double> slopes_;
    double lower_slope_ = 0.0;
    double upper_slope_ = 0.0;
};

InverseCdf fit_inverse_cdf(const QuantileForecast& forecast);

/// n inverse-transform draws F^-1(p_j), p_j ~ U(0, 1), appended to `out`.
void sample_into(const InverseCdf& icdf, std::size_t n, RandomStream& rng, std::vector<double>& out);

std::vector<double> sample(const InverseCdf& icdf, std::size_t n, RandomStream& rng);

/// Linear-interpolation quantile of an ascending sample at position (n - 1) * alpha.
double sorted_quantile(std::span<const double> sorted, double alpha);

/// Quantiles of an already sorted, non-empty sample.
QuantileForecast quantiles_of_sorted(std::span<const double> sorted, const QuantileLevels& levels);

/// Copies and sorts `samples`; throws EmptySampleSet when empty.
QuantileForecast empirical_quantiles(std::span<const double> samples, const QuantileLevels& levels);

} // namespace synapse
