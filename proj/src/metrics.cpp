#include "gridloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gridloc/rng.hpp"

namespace gridloc {

const std::vector<double>& default_bin_edges() {
    static const std::vector<double> edges = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    return edges;
}

double position_error(Point truth, Point estimate) {
    return distance(truth, estimate);
}

ErrorReport build_report(const TruthTrace& truth, std::span<const Estimate> estimates,
                         const std::vector<double>& bin_edges) {
    for (std::size_t i = 1; i < bin_edges.size(); ++i) {
        if (!(bin_edges[i] > bin_edges[i - 1])) {
            throw ValidationError("histogram bin edges must be strictly ascending");
        }
    }

    std::map<std::int64_t, Point> truth_by_id;
    for (const auto& tp : truth) {
        if (!truth_by_id.emplace(tp.window_id, tp.position).second) {
            throw ValidationError("duplicate window_id " + std::to_string(tp.window_id) +
                                  " in truth trace");
        }
    }

    ErrorReport report;
    std::map<std::int64_t, const Estimate*> est_by_id;
    for (const auto& est : estimates) {
        if (!est_by_id.emplace(est.window_id, &est).second) {
            throw ValidationError("duplicate window_id " + std::to_string(est.window_id) +
                                  " in estimates");
        }
        if (truth_by_id.count(est.window_id) == 0) {
            throw ValidationError("estimate window_id " + std::to_string(est.window_id) +
                                  " has no matching truth window");
        }
    }

    for (const auto& [id, truth_pos] : truth_by_id) {
        const auto it = est_by_id.find(id);
        if (it == est_by_id.end()) {
            ++report.summary.skipped;
            continue;
        }
        const Estimate& est = *it->second;
        report.per_window.push_back(
            {id, truth_pos, est.position, position_error(truth_pos, est.position), est.method});
    }

    const auto n = static_cast<std::int64_t>(report.per_window.size());
    report.summary.count = n;
    if (n > 0) {
        std::vector<double> errors;
        errors.reserve(report.per_window.size());
        double sum = 0.0;
        for (const auto& w : report.per_window) {
            errors.push_back(w.error);
            sum += w.error;
        }
        std::sort(errors.begin(), errors.end());
        report.summary.mean = sum / static_cast<double>(n);
        report.summary.median = n % 2 == 1
                                    ? errors[n / 2]
                                    : 0.5 * (errors[n / 2 - 1] + errors[n / 2]);
        // Nearest-rank percentile.
        const auto rank = static_cast<std::int64_t>(
            std::ceil(0.95 * static_cast<double>(n)));
        report.summary.p95 = errors[std::max<std::int64_t>(rank, 1) - 1];
        report.summary.max = errors.back();

        report.histogram.resize(bin_edges.size() + 1);
        for (std::size_t b = 0; b < bin_edges.size(); ++b) {
            report.histogram[b].upper_edge = bin_edges[b];
        }
        report.histogram.back().upper_edge = std::numeric_limits<double>::infinity();
        for (const double e : errors) {
            const auto it2 = std::lower_bound(bin_edges.begin(), bin_edges.end(), e);
            report.histogram[it2 - bin_edges.begin()].count += 1;
        }
        for (auto& bin : report.histogram) {
            bin.fraction = static_cast<double>(bin.count) / static_cast<double>(n);
        }
    }
    return report;
}

ErrorSurface error_surface(const TruthTrace& truth, std::span<const Estimate> estimates,
                           int nx, int ny) {
    if (nx < 1 || ny < 1 ||
        truth.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
        throw ShapeError("truth trace holds " + std::to_string(truth.size()) +
                         " windows, expected " + std::to_string(nx) + " x " +
                         std::to_string(ny));
    }
    std::map<std::int64_t, const Estimate*> est_by_id;
    for (const auto& est : estimates) {
        if (!est_by_id.emplace(est.window_id, &est).second) {
            throw ValidationError("duplicate window_id " + std::to_string(est.window_id) +
                                  " in estimates");
        }
    }
    ErrorSurface surface;
    surface.nx = nx;
    surface.ny = ny;
    surface.values.reserve(truth.size());
    for (const auto& tp : truth) {
        const auto it = est_by_id.find(tp.window_id);
        surface.values.push_back(it == est_by_id.end()
                                     ? kSkipSentinel
                                     : position_error(tp.position, it->second->position));
    }
    return surface;
}

std::vector<RangingPoint> ranging_profile(const PathLossModel& model,
                                          std::span<const double> distances, int trials,
                                          std::uint64_t seed) {
    if (trials < 1) {
        throw ValidationError("ranging_profile needs trials >= 1");
    }
    std::vector<RangingPoint> profile;
    profile.reserve(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i) {
        const double d = distances[i];
        if (!(d > 0.0)) {
            throw DomainError("ranging distances must be > 0");
        }
        Rng rng(substream_seed(seed, i, "ranging-profile"));
        double sum = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double rss = rss_at_distance_noisy(model, d, rng);
            sum += std::abs(distance_from_rss(model, rss) - d);
        }
        profile.push_back({d, sum / trials});
    }
    return profile;
}

}  // namespace gridloc
