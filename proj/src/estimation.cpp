#include "bsched/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "bsched/errors.hpp"

namespace bsched {

FitResult fit_parameters(const PopularityTrace& trace, FloorMode mode) {
    if (trace.counts.size() < 3) {
        throw domain_error("trace '" + trace.label + "' needs at least 3 samples");
    }
    for (const double count : trace.counts) {
        if (!(count >= 0.0) || !std::isfinite(count)) {
            throw domain_error("trace '" + trace.label + "' has a negative or non-finite count");
        }
    }

    const std::size_t peak = static_cast<std::size_t>(
        std::max_element(trace.counts.begin(), trace.counts.end()) - trace.counts.begin());
    const double v_peak = trace.counts[peak];
    const double v_final = trace.counts.back();
    const double v_floor = mode == FloorMode::final_count
                               ? v_final
                               : *std::min_element(trace.counts.begin(), trace.counts.end());

    if (peak + 1 == trace.counts.size()) {
        throw insufficient_data_error("trace '" + trace.label +
                                      "' peaks at its end: no post-peak samples to fit");
    }
    if (!(v_peak > v_floor)) {
        throw degenerate_trace_error("trace '" + trace.label +
                                     "' is flat: no decay to fit (alpha = 0, rate undefined)");
    }

    // y(t) = -ln(1 - (v_peak - X(t)) / (v_peak - floor)) measured from the
    // peak; slope through the origin gives the decay rate. Samples whose log
    // argument leaves (1e-6, 1] carry no usable signal and are dropped.
    constexpr double kClip = 1e-6;
    const double span = v_peak - v_floor;
    double st_y = 0.0;
    double st_t = 0.0;
    int used = 0;
    std::vector<std::pair<double, double>> kept;
    for (std::size_t idx = peak; idx < trace.counts.size(); ++idx) {
        const double t = static_cast<double>(idx - peak);
        const double argument = 1.0 - (v_peak - trace.counts[idx]) / span;
        if (argument <= kClip || argument > 1.0) {
            continue;
        }
        const double y = -std::log(argument);
        st_y += t * y;
        st_t += t * t;
        kept.emplace_back(t, y);
        ++used;
    }
    if (used < 2 || st_t == 0.0) {
        throw insufficient_data_error("trace '" + trace.label + "' has fewer than 2 usable samples");
    }

    FitResult fit;
    fit.label = trace.label;
    fit.v = v_peak;
    fit.alpha = v_peak - v_final;
    fit.r = st_y / st_t;
    fit.points_used = used;
    fit.mode = mode;
    double sq = 0.0;
    for (const auto& [t, y] : kept) {
        const double residual = y - fit.r * t;
        sq += residual * residual;
    }
    fit.residual = std::sqrt(sq / used);
    if (!(fit.r > 0.0)) {
        throw insufficient_data_error("trace '" + trace.label + "' does not decay (non-positive slope)");
    }
    return fit;
}

std::vector<double> forecast(const FitResult& fit, int horizon) {
    if (horizon < 0) {
        throw domain_error("forecast horizon must be >= 0");
    }
    std::vector<double> counts(static_cast<std::size_t>(horizon) + 1);
    const double floor = fit.v - fit.alpha;
    for (int t = 0; t <= horizon; ++t) {
        counts[static_cast<std::size_t>(t)] = floor + fit.alpha * std::exp(-fit.r * t);
    }
    return counts;
}

} // namespace bsched
