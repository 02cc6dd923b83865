#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridloc/pipeline.hpp"
#include "gridloc/simulator.hpp"

namespace gridloc {

struct WindowError {
    std::int64_t window_id = 0;
    Point truth;
    Point estimate;
    double error = 0.0;
    Method method = Method::kRefined;
};

struct HistogramBin {
    double upper_edge = 0.0;  // +infinity for the open-ended final bin
    std::int64_t count = 0;
    double fraction = 0.0;
};

struct ErrorSummary {
    std::int64_t count = 0;
    std::int64_t skipped = 0;
    double mean = 0.0;
    double median = 0.0;
    double p95 = 0.0;
    double max = 0.0;
};

struct ErrorReport {
    std::vector<WindowError> per_window;
    ErrorSummary summary;
    std::vector<HistogramBin> histogram;
};

struct ErrorSurface {
    int nx = 0;
    int ny = 0;
    std::vector<double> values;  // row-major; skipped windows hold kSkipSentinel

    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
};

inline constexpr double kSkipSentinel = -1.0;

struct RangingPoint {
    double distance = 0.0;
    double mean_abs_error = 0.0;
};

// Paper-style error intervals in meters.
const std::vector<double>& default_bin_edges();

// Euclidean distance between truth and estimate.
double position_error(Point truth, Point estimate);

// Joins truth and estimates on window_id. Truth windows without an estimate
// count as skipped. Bins are half-open (lower, upper], with an implied
// open-ended final bin. Throws ValidationError on duplicate ids, estimates
// without truth, or non-ascending edges.
ErrorReport build_report(const TruthTrace& truth, std::span<const Estimate> estimates,
                         const std::vector<double>& bin_edges);

// Row-major nx x ny matrix of per-point errors in sweep order; skipped windows
// hold kSkipSentinel. Throws ShapeError when the truth count is not nx * ny.
ErrorSurface error_surface(const TruthTrace& truth, std::span<const Estimate> estimates,
                           int nx, int ny);

// Mean absolute ranging error per distance: |invert(noisy rss) - d| averaged
// over `trials` draws. One sub-stream per distance index, derived from seed.
std::vector<RangingPoint> ranging_profile(const PathLossModel& model,
                                          std::span<const double> distances, int trials,
                                          std::uint64_t seed);

}  // namespace gridloc
