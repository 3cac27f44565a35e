// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
// Every expected value here comes from an oracle written in this file
// (closed forms, bisection, brute-force loops), never from the library
// routine under test.

#include "synapse/arbitration.hpp"
#include "synapse/errors.hpp"
#include "synapse/evaluation.hpp"
#include "synapse/metrics.hpp"
#include "synapse/oracle_analysis.hpp"
#include "synapse/quantile_dist.hpp"
#include "synapse/synthetic_bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace synapse;

namespace {

constexpr std::uint64_t suite_seed = 20240501;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (failures.size() < 5) failures.push_back(what);
        }
    }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

bool rel_close(double actual, double expected, double tol) {
    return std::abs(actual - expected) <= tol * std::max(std::abs(expected), 1e-300);
}

// Decimal literals such as 2.7 have no exact binary form, so "exact" for them
// means agreement to a few ulps.
bool decimal_exact(double actual, double expected) { return rel_close(actual, expected, 4e-16); }

QuantileForecast decile_forecast(std::vector<double> values) {
    return QuantileForecast(QuantileLevels::deciles(), std::move(values));
}

// ---------------------------------------------------------------------------
// 1. Metric unit suite

double crps_oracle(const std::vector<double>& q, const std::vector<double>& alphas, double y) {
    long double sum = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        const long double diff = static_cast<long double>(y) - q[k];
        const long double rho = diff > 0 ? alphas[k] * diff : (alphas[k] - 1.0L) * diff;
        sum += 2.0L * rho / std::max<long double>(std::abs(static_cast<long double>(y)), 1e-8L);
    }
    return static_cast<double>(sum / static_cast<long double>(q.size()));
}

double lumpiness_oracle(const std::vector<double>& xs, std::size_t width) {
    using ld = long double;
    auto mean_var = [](const std::vector<ld>& v) {
        ld m = 0;
        for (ld x : v) m += x;
        m /= static_cast<ld>(v.size());
        ld s = 0;
        for (ld x : v) s += (x - m) * (x - m);
        return std::pair{m, s / static_cast<ld>(v.size() - 1)};
    };
    const std::vector<ld> all(xs.begin(), xs.end());
    const auto [m, var] = mean_var(all);
    const ld sd = std::sqrt(var);
    std::vector<ld> tile_vars;
    for (std::size_t start = 0; start + width <= all.size(); start += width) {
        std::vector<ld> tile;
        for (std::size_t i = start; i < start + width; ++i) tile.push_back((all[i] - m) / sd);
        tile_vars.push_back(mean_var(tile).second);
    }
    return static_cast<double>(mean_var(tile_vars).second);
}

Outcome metric_suite() {
    using namespace metrics;
    Outcome o;
    const auto alphas = decile_levels();

    o.require(pinball_loss(0.5, 0.0, 2.0) == 1.0, "pinball (0.5,0,2)");
    o.require(pinball_loss(0.9, 3.0, 3.0) == 0.0, "pinball (0.9,3,3)");
    o.require(decimal_exact(pinball_loss(0.1, 5.0, 2.0), 2.7), "pinball (0.1,5,2)");
    o.require(weighted_quantile_loss(0.5, 0.0, 2.0) == 1.0, "wql (0.5,0,2)");
    o.require(weighted_quantile_loss(0.5, 4.0, 4.0) == 0.0, "wql (0.5,4,4)");
    o.require(decimal_exact(weighted_quantile_loss(0.2, 1.0, -2.0), 2.4), "wql (0.2,1,-2)");

    const auto flat = decile_forecast(std::vector<double>(9, 5.0));
    o.require(crps_timestep(flat, 5.0) == 0.0, "crps flat");
    const std::vector<double> ramp = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    const auto ramp_f = decile_forecast(ramp);
    o.require(rel_close(crps_timestep(ramp_f, 5.0), 8.0 / 45.0, 1e-12), "crps 1..9 at 5 vs 8/45");
    o.require(rel_close(crps_timestep(ramp_f, 5.0), crps_oracle(ramp, alphas, 5.0), 1e-12), "crps 1..9 oracle");

    // Scale invariance under joint rescaling.
    std::vector<double> doubled;
    for (double v : ramp) doubled.push_back(2.0 * v);
    o.require(crps_timestep(decile_forecast(doubled), 10.0) == crps_timestep(ramp_f, 5.0), "crps scale invariance");

    RandomStream rng(suite_seed);
    for (int i = 0; i < 2000; ++i) {
        std::vector<double> q(9);
        double x = 100.0 * rng.uniform() - 50.0;
        for (auto& v : q) {
            v = x;
            x += 5.0 * rng.uniform();
        }
        const double y = 120.0 * rng.uniform() - 60.0;
        o.require(rel_close(crps_timestep(decile_forecast(q), y), crps_oracle(q, alphas, y), 1e-12),
                  "crps random vs oracle");
    }

    const std::vector<QuantileForecast> one = {ramp_f};
    const std::vector<double> y5 = {5.0};
    o.require(crps_series(one, y5).mean == crps_timestep(ramp_f, 5.0), "crps_series single");
    const std::vector<QuantileForecast> two = {ramp_f, flat};
    const std::vector<double> ys = {5.0, 7.0};
    const double a = crps_timestep(ramp_f, 5.0), b = crps_timestep(flat, 7.0);
    o.require(crps_series(two, ys).mean == (a + b) / 2.0, "crps_series two");
    const std::vector<QuantileForecast> perfect = {flat, flat};
    const std::vector<double> fives = {5.0, 5.0};
    o.require(crps_series(perfect, fives).mean == 0.0, "crps_series perfect");

    const std::vector<double> ctx = {0, 1, 3}, f4 = {4}, y2 = {2};
    o.require(rel_close(mase(f4, y2, ctx, 1), 4.0 / 3.0, 1e-12), "mase 4/3");
    const std::vector<double> same = {1, 2};
    o.require(mase(same, same, ctx, 1) == 0.0, "mase perfect");
    const std::vector<double> periodic = {1, 2, 1, 2, 1, 2}, f33 = {3, 3};
    bool threw = false;
    try {
        (void)mase(f33, same, periodic, 2);
    } catch (const ZeroDenominator&) {
        threw = true;
    }
    o.require(threw, "mase periodic context");

    o.require(lumpiness(std::vector<double>(40, 3.0), 10) == 0.0, "lumpiness constant");
    std::vector<double> tiled;
    for (int r = 0; r < 4; ++r)
        for (int i = 0; i < 10; ++i) tiled.push_back(static_cast<double>(i * i));
    o.require(std::abs(lumpiness(tiled, 10)) < 1e-24, "lumpiness identical tiles");
    std::vector<double> noise(1000);
    for (auto& v : noise) v = synthetic::normal_quantile(rng.uniform());
    o.require(rel_close(lumpiness(noise, 10), lumpiness_oracle(noise, 10), 1e-10), "lumpiness white noise");

    const std::vector<double> xs = {1, 2, 3}, neg = {-1, -2, -3}, ys3 = {2, 4, 7};
    o.require(pearson_correlation(xs, xs) == 1.0, "pearson self");
    o.require(pearson_correlation(xs, neg) == -1.0, "pearson negated");
    o.require(rel_close(pearson_correlation(xs, ys3), 15.0 / std::sqrt(228.0), 1e-12), "pearson closed form");
    return o;
}

// ---------------------------------------------------------------------------
// 2. Inverse-CDF round trip and monotonicity

// Smooth decile forecast: one of three shapes with random location and scale.
QuantileForecast smooth_forecast(RandomStream& rng) {
    const double loc = 200.0 * rng.uniform() - 100.0;
    const double scale = 0.05 + 20.0 * rng.uniform();
    const auto family = rng() % 3;
    std::vector<double> v;
    for (double alpha : decile_levels()) {
        const double z = synthetic::normal_quantile(alpha);
        if (family == 0) v.push_back(loc + scale * z);
        else if (family == 1) v.push_back(loc + scale * std::log(alpha / (1.0 - alpha)));
        else v.push_back(loc + scale * std::exp(0.5 * z));  // log-normal, right skewed
    }
    return decile_forecast(std::move(v));
}

Outcome round_trip() {
    Outcome o;
    RandomStream rng(suite_seed + 2);
    const QuantileLevels levels;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto q = smooth_forecast(rng);
        const double scale = q[8] - q[0];  // interdecile range
        const double tol = std::max(1e-2, 1e-2 * scale);
        auto stream = rng.substream(static_cast<std::uint64_t>(trial));
        const auto draws = sample(fit_inverse_cdf(q), 200000, stream);
        const auto back = empirical_quantiles(draws, levels);
        for (std::size_t k = 0; k < 9; ++k) {
            const double err = std::abs(back[k] - q[k]);
            worst_ratio = std::max(worst_ratio, err / tol);
            o.require(err <= tol, fmt("trial %.0f level %.0f error %.3g", trial, static_cast<double>(k), err));
        }
    }

    std::size_t violations = 0;
    for (int probe = 0; probe < 10000; ++probe) {
        // Forecasts with ties and jumps, probes anywhere in (0, 1) including the tails.
        std::vector<double> v(9);
        double x = 100.0 * rng.uniform() - 50.0;
        for (auto& value : v) {
            value = x;
            const double u = rng.uniform();
            x += u < 0.2 ? 0.0 : (u > 0.9 ? 50.0 : 3.0) * rng.uniform();
        }
        const auto icdf = fit_inverse_cdf(decile_forecast(v));
        double p1 = rng.uniform(), p2 = rng.uniform();
        if (p1 > p2) std::swap(p1, p2);
        if (icdf(p1) > icdf(p2)) ++violations;
    }
    o.require(violations == 0, "monotonicity violations: " + std::to_string(violations));
    o.detail = fmt("worst error / tolerance %.3f, %.0f monotonicity violations", worst_ratio,
                   static_cast<double>(violations));
    return o;
}

// ---------------------------------------------------------------------------
// 3. Mixture oracle

// CDF of a fitted inverse CDF, by bisection over p.
double cdf_by_bisection(const InverseCdf& icdf, double x) {
    double lo = 0.0, hi = 1.0;
    if (icdf(lo) > x) return 0.0;
    if (icdf(hi) <= x) return 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (icdf(mid) <= x ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Lower and upper quantile of the mixture at `alpha`: inf{x : F(x) >= alpha}
// and sup{x : F(x) <= alpha}. They differ only where the mixture CDF is flat.
std::pair<double, double> mixture_quantile_interval(const InverseCdf& fa, const InverseCdf& fb, double alpha) {
    const double x_lo = std::min(fa(0.0), fb(0.0)), x_hi = std::max(fa(1.0), fb(1.0));
    auto mix = [&](double x) { return 0.5 * (cdf_by_bisection(fa, x) + cdf_by_bisection(fb, x)); };
    auto search = [&](auto below) {
        double lo = x_lo, hi = x_hi;
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            (below(mix(mid)) ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    return {search([&](double f) { return f < alpha; }), search([&](double f) { return f <= alpha; })};
}

Outcome mixture_oracle() {
    Outcome o;
    RandomStream rng(suite_seed + 3);
    const QuantileLevels levels;
    ArbitratorConfig config;
    config.n_total = 1000000;
    const WeightVector half({0.5, 0.5});
    double worst = 0.0;
    for (int c = 0; c < 50; ++c) {
        // A Gaussian-shaped and a logistic-shaped component that overlap.
        const double loc_a = 10.0 * rng.uniform();
        const double scale_a = 0.3 + 0.7 * rng.uniform();
        const double scale_b = 0.3 + 0.7 * rng.uniform();
        const double loc_b = loc_a + 1.5 * scale_a * (2.0 * rng.uniform() - 1.0);
        std::vector<double> va, vb;
        for (double alpha : decile_levels()) {
            va.push_back(loc_a + scale_a * synthetic::normal_quantile(alpha));
            vb.push_back(loc_b + scale_b * std::log(alpha / (1.0 - alpha)));
        }
        const std::vector<QuantileForecast> pair = {decile_forecast(va), decile_forecast(vb)};
        const auto pooled = arbitrate_timestep(pair, half, config, rng()).forecast;

        const InverseCdf fa = fit_inverse_cdf(pair[0]), fb = fit_inverse_cdf(pair[1]);
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const auto [lo, hi] = mixture_quantile_interval(fa, fb, levels[k]);
            const double err = std::max({lo - pooled[k], pooled[k] - hi, 0.0});
            worst = std::max(worst, err);
            o.require(err <= 2e-2, fmt("case %.0f level %.1f error %.4f", c, levels[k], err));
        }
    }
    o.detail = fmt("max |error| %.4f over 50 cases x 9 levels (tolerance 0.02)", worst);
    return o;
}

// ---------------------------------------------------------------------------
// 4. Arbitration conformance

bool bits_equal(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool forecasts_bit_equal(const QuantileForecast& a, const QuantileForecast& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!bits_equal(a[k], b[k])) return false;
    return true;
}

bool traces_bit_equal(const ArbitrationTrace& a, const ArbitrationTrace& b) {
    if (a.model_names != b.model_names || a.horizon() != b.horizon()) return false;
    for (std::size_t t = 0; t < a.horizon(); ++t) {
        const auto &x = a.steps[t], &y = b.steps[t];
        if (!forecasts_bit_equal(x.forecast, y.forecast) || x.sample_counts != y.sample_counts ||
            x.branch != y.branch || !bits_equal(x.simulated_truth, y.simulated_truth) ||
            x.weights.size() != y.weights.size() || x.scores.size() != y.scores.size())
            return false;
        for (std::size_t i = 0; i < x.weights.size(); ++i)
            if (!bits_equal(x.weights[i], y.weights[i])) return false;
        for (std::size_t i = 0; i < x.scores.size(); ++i)
            if (!bits_equal(x.scores[i], y.scores[i])) return false;
    }
    return true;
}

Outcome conformance() {
    Outcome o;
    const auto docs = synthetic::build_benchmark_suite(60, suite_seed + 4);
    harness::EvaluationConfig config;
    config.seed = suite_seed;
    std::size_t steps = 0;
    double worst_sum = 0.0;

    for (const auto& doc : docs) {
        for (auto mode : {WeightingMode::dynamic, WeightingMode::static_uniform}) {
            const auto trace = harness::arbitrate_document(doc, config, mode);
            o.require(traces_bit_equal(trace, harness::arbitrate_document(doc, config, mode)),
                      "repeat run differs: " + doc.panel.series_id());
            for (const auto& step : trace.steps) {
                ++steps;
                long double sum = 0;
                for (double w : step.weights.values()) sum += w;
                worst_sum = std::max(worst_sum, static_cast<double>(std::abs(sum - 1.0L)));
                o.require(std::abs(sum - 1.0L) <= 1e-9L, "weights do not sum to 1");
                o.require(std::accumulate(step.sample_counts.begin(), step.sample_counts.end(), std::size_t{0}) == 1500,
                          "allocation total differs from 1500");
            }
        }

        // Reverse the model order; everything must follow the models exactly.
        auto names = doc.panel.model_names();
        std::reverse(names.begin(), names.end());
        const auto base = harness::arbitrate_document(doc, config, WeightingMode::dynamic);
        const auto flipped = harness::arbitrate_document(doc.with_models(names), config, WeightingMode::dynamic);
        const std::size_t n = names.size();
        for (std::size_t t = 0; t < base.horizon(); ++t) {
            const auto &x = base.steps[t], &y = flipped.steps[t];
            bool same = forecasts_bit_equal(x.forecast, y.forecast) && bits_equal(x.simulated_truth, y.simulated_truth);
            for (std::size_t i = 0; i < n; ++i)
                same = same && bits_equal(x.weights[i], y.weights[n - 1 - i]) &&
                       x.sample_counts[i] == y.sample_counts[n - 1 - i];
            o.require(same, "permutation changed step " + std::to_string(t) + " of " + doc.panel.series_id());
        }
    }

    // Weight and allocation rules on arbitrary score vectors, including exact zeros.
    RandomStream rng(suite_seed + 5);
    const ArbitratorConfig arb;
    for (int trial = 0; trial < 20000; ++trial) {
        std::vector<double> scores(1 + rng() % 8);
        for (auto& s : scores) s = rng.uniform() < 0.1 ? 0.0 : std::pow(10.0, 6.0 * rng.uniform() - 4.0);
        const auto w = compute_weights(scores, arb);
        long double sum = 0;
        for (double v : w.values()) sum += v;
        o.require(std::abs(sum - 1.0L) <= 1e-9L, "compute_weights sum");
        const auto counts = allocate_samples(w, 1500);
        o.require(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == 1500, "allocate_samples total");
    }
    o.detail = fmt("%.0f arbitration steps checked, max |sum w - 1| %.2g", static_cast<double>(steps), worst_sum);
    return o;
}

// ---------------------------------------------------------------------------
// 5. Oracle dominance and top-k shape

Outcome oracle_dominance() {
    Outcome o;
    const auto docs = synthetic::build_benchmark_suite(1000, suite_seed + 6);
    std::size_t comparisons = 0;
    for (const auto& doc : docs) {
        const auto& panel = doc.panel;
        const double oracle_value = oracle::oracle_crps(panel);
        // Brute force: at each step the smallest per-model CRPS, averaged.
        long double brute = 0;
        for (std::size_t t = 0; t < panel.horizon(); ++t) {
            double best = INFINITY;
            for (const auto& f : panel.forecasts_at(t)) best = std::min(best, metrics::crps_timestep(f, panel.actuals()[t]));
            brute += best;
        }
        o.require(rel_close(oracle_value, static_cast<double>(brute / panel.horizon()), 1e-12),
                  "oracle CRPS disagrees with brute force on " + panel.series_id());
        for (const auto& m : panel.models()) {
            ++comparisons;
            const double model_crps = metrics::crps_series(m.steps, panel.actuals()).mean;
            o.require(oracle_value <= model_crps, "oracle worse than " + m.name + " on " + panel.series_id());
        }
    }

    harness::EvaluationConfig config;
    config.seed = suite_seed;
    config.workers = worker_count();
    const auto accuracy = harness::run_selection_accuracy(docs, config);
    std::string curve;
    for (const auto& acc : accuracy) {
        for (const auto* series : {&acc.pooled, &acc.macro}) {
            for (std::size_t k = 1; k < series->size(); ++k)
                o.require((*series)[k] >= (*series)[k - 1], acc.method + " top-k decreases at k=" + std::to_string(k + 1));
            o.require(!series->empty() && series->back() == 1.0, acc.method + " top-N is not 1");
        }
        curve += " " + acc.method + "=[";
        for (std::size_t k = 0; k < acc.pooled.size(); ++k) curve += (k ? "," : "") + fmt("%.3f", acc.pooled[k]);
        curve += "]";
    }
    o.detail = fmt("%.0f oracle-vs-model comparisons;", static_cast<double>(comparisons)) + curve;
    return o;
}

// ---------------------------------------------------------------------------
// 6. Headline ordering on the seeded 200-panel suite

const harness::ReportRow* overall_row(const std::vector<harness::ReportRow>& rows, const std::string& method) {
    for (const auto& r : rows)
        if (r.group == "overall" && r.method == method) return &r;
    return nullptr;
}

std::vector<Outcome> headline() {
    const auto docs = synthetic::build_benchmark_suite(200, suite_seed);
    harness::EvaluationConfig config;
    config.seed = suite_seed;
    config.workers = worker_count();
    const std::vector<std::string> methods = {"synapse", "synapse-static", "median", "per-model"};
    const auto rows = harness::run_evaluation(docs, methods, config).rows;

    const double synapse = overall_row(rows, "synapse")->crps;
    const double stat = overall_row(rows, "synapse-static")->crps;
    const double median = overall_row(rows, "median")->crps;
    std::string best_name;
    double best = INFINITY;
    for (const auto& r : rows)
        if (r.group == "overall" && r.method.starts_with("model:") && r.crps < best) {
            best = r.crps;
            best_name = r.method;
        }

    std::vector<Outcome> out(4);
    out[0].require(synapse < best, "synapse not below best individual");
    out[0].detail = fmt("SYNAPSE %.4f vs best individual %.4f", synapse, best) + " (" + best_name + ")";
    out[1].require(synapse < median, "synapse not below median ensemble");
    out[1].detail = fmt("SYNAPSE %.4f vs median ensemble %.4f", synapse, median);
    out[2].require(std::min(median, synapse) <= stat && stat <= std::max(median, synapse), "static outside range");
    out[2].detail = fmt("median %.4f, static %.4f, SYNAPSE %.4f", median, stat, synapse);

    const auto accuracy = harness::run_selection_accuracy(docs, config);
    double syn_top1 = NAN, med_top1 = NAN;
    for (const auto& a : accuracy) (a.method == "synapse" ? syn_top1 : med_top1) = a.pooled.at(0);
    out[3].require(syn_top1 > med_top1, "synapse top-1 not above median top-1");
    out[3].detail = fmt("top-1 SYNAPSE %.4f vs median ensemble %.4f (reference ordering 0.2352 > 0.1073)", syn_top1,
                        med_top1);
    return out;
}

// ---------------------------------------------------------------------------
// 7. Pool scaling

Outcome pool_scaling() {
    Outcome o;
    synthetic::SuiteOptions options;
    options.min_models = options.max_models = 6;
    const auto docs = synthetic::build_benchmark_suite(200, suite_seed, options);
    harness::EvaluationConfig config;
    config.seed = suite_seed;
    config.workers = worker_count();
    const std::vector<std::string> order = {"atlas", "boreas", "cirrus", "delphi", "eos", "fenrir"};
    const auto rows = harness::run_pool_scaling(docs, order, config);
    o.require(rows.size() == 5, "expected five prefixes");
    for (const auto& r : rows) {
        o.require(r.synapse_crps <= r.best_crps, "pool of " + std::to_string(r.pool.size()) + " fails");
        o.detail += fmt("N=%.0f %.4f<=%.4f ", static_cast<double>(r.pool.size()), r.synapse_crps, r.best_crps);
    }
    return o;
}

// ---------------------------------------------------------------------------

struct Runner {
    int failed = 0;

    template <class F>
    Outcome timed(F&& f, double& seconds) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o = f();
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return o;
    }

    void report(const std::string& name, const Outcome& o, double seconds, double limit) {
        const bool in_time = limit <= 0.0 || seconds < limit;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::ostringstream line;
        line << (pass ? "PASS" : "FAIL") << "  " << name << "  " << o.detail;
        line << "  [" << fmt("%.2f s", seconds);
        if (limit > 0.0) line << fmt(", limit %.0f s", limit);
        line << "]";
        std::puts(line.str().c_str());
        for (const auto& f : o.failures) std::printf("      %s\n", f.c_str());
        if (!in_time) std::printf("      runtime over limit\n");
        std::fflush(stdout);
    }
};

} // namespace

int main() {
    Runner run;
    double s = 0.0;

    auto o = run.timed(metric_suite, s);
    run.report("metrics: examples and derived oracles", o, s, 1.0);

    o = run.timed(round_trip, s);
    run.report("inverse-cdf: round trip at n=200000 and monotonicity probes", o, s, 30.0);

    o = run.timed(mixture_oracle, s);
    run.report("mixture: pooled quantiles vs bisection-inverted 50/50 mixture", o, s, 0.0);

    o = run.timed(conformance, s);
    run.report("arbitration: weight sums, 1500-sample allocations, determinism, permutation", o, s, 0.0);

    o = run.timed(oracle_dominance, s);
    run.report("oracle: dominance on 1000 panels, top-k monotone with top-N = 1", o, s, 0.0);

    std::vector<Outcome> heads;
    o = run.timed(
        [&] {
            heads = headline();
            return Outcome{};
        },
        s);
    const char* names[] = {"headline (a): SYNAPSE below best individual expert",
                           "headline (b): SYNAPSE below median ensemble",
                           "headline (c): static uniform between median ensemble and SYNAPSE",
                           "headline (d): SYNAPSE top-1 above median-ensemble top-1"};
    for (std::size_t i = 0; i < heads.size(); ++i) run.report(names[i], heads[i], s, 300.0);

    o = run.timed(pool_scaling, s);
    run.report("pool scaling: SYNAPSE <= best single model for pools of 2..6", o, s, 0.0);

    std::printf("%s: %d criterion line(s) failed\n", run.failed == 0 ? "ACCEPTED" : "REJECTED", run.failed);
    return run.failed == 0 ? 0 : 1;
}
