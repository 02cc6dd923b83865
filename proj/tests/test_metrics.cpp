#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gridloc/metrics.hpp"
#include "gridloc/rng.hpp"

using namespace gridloc;

namespace {

Estimate make_estimate(std::int64_t id, Point p, Method m = Method::kRefined) {
    Estimate est;
    est.window_id = id;
    est.position = p;
    est.method = m;
    return est;
}

// Simpson's rule over [-8, 8] standard deviations: E |10^(g/20) - 1| for
// g ~ N(0, sigma^2). Independent of the sampling path under test.
double expected_abs_ranging_error(double sigma) {
    const int n = 4000;  // even
    const double lo = -8.0 * sigma;
    const double hi = 8.0 * sigma;
    const double h = (hi - lo) / n;
    auto f = [&](double g) {
        const double pdf = std::exp(-g * g / (2.0 * sigma * sigma)) /
                           (sigma * std::sqrt(2.0 * std::acos(-1.0)));
        return std::abs(std::pow(10.0, g / 20.0) - 1.0) * pdf;
    };
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) {
        sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("position_error basics") {
    CHECK(position_error({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(position_error({1.5, -2.0}, {1.5, -2.0}) == 0.0);
    CHECK(position_error({1, 1}, {1, 2.5}) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("position_error symmetry and triangle inequality") {
    Rng rng(606);
    for (int iter = 0; iter < 200; ++iter) {
        const Point a{20.0 * rng.next_unit() - 10.0, 20.0 * rng.next_unit() - 10.0};
        const Point b{20.0 * rng.next_unit() - 10.0, 20.0 * rng.next_unit() - 10.0};
        const Point c{20.0 * rng.next_unit() - 10.0, 20.0 * rng.next_unit() - 10.0};
        CHECK(position_error(a, b) == position_error(b, a));
        CHECK(position_error(a, c) <= position_error(a, b) + position_error(b, c) + 1e-12);
    }
}

TEST_CASE("build_report bins errors into half-open intervals") {
    TruthTrace truth = {{0, {0, 0}}, {1, {0, 0}}, {2, {0, 0}}};
    std::vector<Estimate> estimates = {
        make_estimate(0, {0.5, 0.0}),
        make_estimate(1, {1.0, 0.0}),
        make_estimate(2, {2.0, 0.0}),
    };
    const ErrorReport report = build_report(truth, estimates, {1.5, 2.5});
    REQUIRE(report.histogram.size() == 3);
    CHECK(report.histogram[0].count == 2);
    CHECK(report.histogram[0].fraction == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(report.histogram[1].count == 1);
    CHECK(report.histogram[1].fraction == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(report.histogram[2].count == 0);
    CHECK(std::isinf(report.histogram[2].upper_edge));

    double total = 0.0;
    for (const auto& bin : report.histogram) total += bin.fraction;
    CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("an error equal to an edge belongs to the lower bin") {
    TruthTrace truth = {{0, {0, 0}}};
    const ErrorReport report =
        build_report(truth, std::vector<Estimate>{make_estimate(0, {1.5, 0.0})}, {1.5, 2.5});
    CHECK(report.histogram[0].count == 1);
    CHECK(report.histogram[1].count == 0);
}

TEST_CASE("summary statistics") {
    TruthTrace truth = {{0, {0, 0}}, {1, {0, 0}}, {2, {0, 0}}, {3, {0, 0}}};
    std::vector<Estimate> estimates = {
        make_estimate(0, {1.0, 0.0}),
        make_estimate(1, {2.0, 0.0}),
        make_estimate(2, {3.0, 0.0}),
        make_estimate(3, {4.0, 0.0}),
    };
    const ErrorReport report = build_report(truth, estimates, default_bin_edges());
    CHECK(report.summary.count == 4);
    CHECK(report.summary.skipped == 0);
    CHECK(report.summary.mean == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(report.summary.median == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(report.summary.p95 == doctest::Approx(4.0).epsilon(1e-15));  // nearest rank
    CHECK(report.summary.max == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("missing estimates count as skipped") {
    TruthTrace truth = {{0, {0, 0}}, {1, {1, 1}}, {2, {2, 2}}};
    const ErrorReport report =
        build_report(truth, std::vector<Estimate>{make_estimate(1, {1.0, 1.0})},
                     default_bin_edges());
    CHECK(report.summary.count == 1);
    CHECK(report.summary.skipped == 2);

    const ErrorReport empty = build_report(truth, {}, default_bin_edges());
    CHECK(empty.summary.count == 0);
    CHECK(empty.summary.skipped == 3);
    CHECK(empty.histogram.empty());
    CHECK(empty.per_window.empty());
}

TEST_CASE("build_report validation") {
    TruthTrace dup_truth = {{0, {0, 0}}, {0, {1, 1}}};
    CHECK_THROWS_AS(build_report(dup_truth, {}, default_bin_edges()), ValidationError);

    TruthTrace truth = {{0, {0, 0}}};
    std::vector<Estimate> dup_est = {make_estimate(0, {1, 1}), make_estimate(0, {2, 2})};
    CHECK_THROWS_AS(build_report(truth, dup_est, default_bin_edges()), ValidationError);

    std::vector<Estimate> orphan = {make_estimate(9, {1, 1})};
    CHECK_THROWS_AS(build_report(truth, orphan, default_bin_edges()), ValidationError);

    CHECK_THROWS_AS(build_report(truth, {}, {2.0, 1.0}), ValidationError);
}

TEST_CASE("report is invariant under input permutation") {
    Rng rng(808);
    TruthTrace truth;
    std::vector<Estimate> estimates;
    for (int i = 0; i < 50; ++i) {
        const Point t{10.0 * rng.next_unit(), 10.0 * rng.next_unit()};
        truth.push_back({i, t});
        estimates.push_back(make_estimate(i, t + Point{rng.next_unit(), rng.next_unit()}));
    }
    const ErrorReport base = build_report(truth, estimates, default_bin_edges());

    for (int iter = 0; iter < 100; ++iter) {
        TruthTrace t2 = truth;
        std::vector<Estimate> e2 = estimates;
        // Fisher-Yates with the test rng.
        for (std::size_t i = t2.size(); i > 1; --i) {
            std::swap(t2[i - 1], t2[rng.next_u64() % i]);
        }
        for (std::size_t i = e2.size(); i > 1; --i) {
            std::swap(e2[i - 1], e2[rng.next_u64() % i]);
        }
        const ErrorReport shuffled = build_report(t2, e2, default_bin_edges());
        CHECK(shuffled.summary.mean == base.summary.mean);
        CHECK(shuffled.summary.median == base.summary.median);
        CHECK(shuffled.summary.p95 == base.summary.p95);
        REQUIRE(shuffled.per_window.size() == base.per_window.size());
        bool same = true;
        for (std::size_t i = 0; i < base.per_window.size(); ++i) {
            same = same && shuffled.per_window[i].window_id == base.per_window[i].window_id &&
                   shuffled.per_window[i].error == base.per_window[i].error;
        }
        CHECK(same);
        for (std::size_t b = 0; b < base.histogram.size(); ++b) {
            CHECK(shuffled.histogram[b].count == base.histogram[b].count);
        }
    }
}

TEST_CASE("error_surface maps sweep order and skips") {
    TruthTrace truth;
    std::vector<Estimate> estimates;
    for (int i = 0; i < 4; ++i) {
        truth.push_back({i, {static_cast<double>(i), 0.0}});
        if (i != 2) {
            estimates.push_back(make_estimate(i, {static_cast<double>(i), 1.0 + i}));
        }
    }
    const ErrorSurface surface = error_surface(truth, estimates, 2, 2);
    CHECK(surface.at(0, 0) == doctest::Approx(1.0));
    CHECK(surface.at(1, 0) == doctest::Approx(2.0));
    CHECK(surface.at(0, 1) == kSkipSentinel);
    CHECK(surface.at(1, 1) == doctest::Approx(4.0));

    const ErrorSurface single = error_surface({{0, {1, 1}}},
                                              std::vector<Estimate>{make_estimate(0, {1, 1})},
                                              1, 1);
    CHECK(single.values.size() == 1);
    CHECK(single.at(0, 0) == 0.0);

    CHECK_THROWS_AS(error_surface(truth, estimates, 3, 2), ShapeError);
}

TEST_CASE("ranging profile is exact without noise") {
    PathLossModel model;
    model.a_ref = -45.0;
    model.n = 2.0;
    model.sigma = 0.0;
    const std::vector<double> distances = {0.5, 1.0, 2.0, 5.0, 10.0};
    const auto profile = ranging_profile(model, distances, 100, 7);
    for (const auto& point : profile) {
        CHECK(point.mean_abs_error <= 1e-12);
    }
}

TEST_CASE("ranging error grows with distance under dB noise") {
    PathLossModel model;
    model.a_ref = -45.0;
    model.n = 2.0;
    model.sigma = 2.0;
    const std::vector<double> distances = {1.0, 2.0, 5.0, 10.0, 20.0};
    const auto profile = ranging_profile(model, distances, 20000, 4242);
    for (std::size_t i = 1; i < profile.size(); ++i) {
        CHECK(profile[i].mean_abs_error >= profile[i - 1].mean_abs_error);
    }
}

TEST_CASE("ranging profile matches the quadrature oracle at one meter") {
    PathLossModel model;
    model.a_ref = -45.0;
    model.n = 2.0;
    model.sigma = 2.0;
    const double oracle = expected_abs_ranging_error(2.0);
    // Cross-check of the oracle itself against the closed form
    // exp(s^2/2) * (2 Phi(s) - 1), s = sigma ln(10)/20.
    CHECK(oracle == doctest::Approx(0.18700127837379).epsilon(1e-9));

    const std::vector<double> distances = {1.0};
    const auto profile = ranging_profile(model, distances, 100000, 99);
    CHECK(std::abs(profile[0].mean_abs_error - oracle) < 0.005);
}

TEST_CASE("indoor noise widens the ranging profile") {
    PathLossModel outdoor;
    outdoor.a_ref = -45.0;
    outdoor.n = 2.0;
    outdoor.sigma = 2.0;
    PathLossModel indoor = outdoor;
    indoor.n = 3.0;
    indoor.sigma = 4.0;
    const std::vector<double> distances = {1.0, 3.0, 6.0};
    const auto out_profile = ranging_profile(outdoor, distances, 20000, 5);
    const auto in_profile = ranging_profile(indoor, distances, 20000, 5);
    for (std::size_t i = 0; i < distances.size(); ++i) {
        CHECK(in_profile[i].mean_abs_error > out_profile[i].mean_abs_error);
    }
}

}  // TEST_SUITE
