#pragma once

#include <string>
#include <vector>

namespace bsched {

/// Evenly spaced (weekly) aggregate counts; t = 0 at the first sample, which
/// callers should align with the series peak.
struct PopularityTrace {
    std::string label;
    std::vector<double> counts;
};

/// Which floor the log transform divides by. The recovered alpha is always
/// v_peak - final count; the mode only changes the regression's floor.
enum class FloorMode { final_count, min_count };

struct FitResult {
    std::string label;
    double v = 0.0; ///< peak count
    double alpha = 0.0; ///< v_peak - v_final
    double r = 0.0; ///< decay rate from the regression slope
    double residual = 0.0; ///< RMS of y(t) - r*t over the used points
    int points_used = 0;
    FloorMode mode = FloorMode::final_count;
};

/// Recovers (v, alpha, r) from a decaying count series. With X(t) the count at
/// week t after the peak, y(t) = -ln(1 - (v_peak - X(t)) / (v_peak - floor))
/// and r is the least-squares slope of y through the origin. Points whose log
/// argument falls outside (1e-6, 1] are dropped. Samples before the peak are
/// ignored. Throws degenerate_trace_error when the trace is flat and
/// insufficient_data_error when fewer than two usable points remain.
FitResult fit_parameters(const PopularityTrace& trace, FloorMode mode = FloorMode::final_count);

/// Inverse model: X(t) = (v - alpha) + alpha * e^(-r t) for t = 0..horizon.
std::vector<double> forecast(const FitResult& fit, int horizon);

} // namespace bsched
