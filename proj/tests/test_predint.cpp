#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "scorecmp/predint.hpp"
#include "scorecmp/rng.hpp"
#include "scorecmp/tdist.hpp"

using namespace scorecmp;

namespace {

std::vector<DevTestPoint> linear_points(Xoshiro256ss& rng, std::size_t n,
                                        double slope, double intercept, double noise_sd) {
    std::vector<DevTestPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 80.0 + 3.0 * rng.next_normal();
        pts.push_back({x, intercept + slope * x + noise_sd * rng.next_normal()});
    }
    return pts;
}

}  // namespace

TEST_CASE("linear fit") {
    SUBCASE("points on an exact line") {
        std::vector<DevTestPoint> pts;
        for (int i = 0; i < 5; ++i)
            pts.push_back({static_cast<double>(i), 2.0 * i + 1.0});
        const auto fit = fit_dev_test(pts);
        CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.s_y == doctest::Approx(0.0));
    }
    SUBCASE("hand computation") {
        std::vector<DevTestPoint> pts{{0, 0}, {1, 1}, {2, 0}};
        const auto fit = fit_dev_test(pts);
        CHECK(fit.slope == doctest::Approx(0.0));
        CHECK(fit.intercept == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(fit.s_y == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
        CHECK(fit.s_x == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.mean_x == doctest::Approx(1.0));
    }
    SUBCASE("agrees with a normal-equations oracle") {
        Xoshiro256ss rng(4);
        const auto pts = linear_points(rng, 200, 0.9, 5.0, 0.7);
        const auto fit = fit_dev_test(pts);
        // independent route: solve the 2x2 normal equations directly
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& p : pts) {
            sx += p.dev;
            sy += p.test;
            sxx += p.dev * p.dev;
            sxy += p.dev * p.test;
        }
        const double n = static_cast<double>(pts.size());
        const double det = n * sxx - sx * sx;
        const double slope = (n * sxy - sx * sy) / det;
        const double intercept = (sy * sxx - sx * sxy) / det;
        CHECK(fit.slope == doctest::Approx(slope).epsilon(1e-10));
        CHECK(fit.intercept == doctest::Approx(intercept).epsilon(1e-10));
    }
    SUBCASE("degenerate inputs") {
        std::vector<DevTestPoint> two{{0, 0}, {1, 1}};
        CHECK_THROWS_AS(fit_dev_test(two), std::invalid_argument);
        std::vector<DevTestPoint> flat{{2, 0}, {2, 1}, {2, 2}};
        CHECK_THROWS_AS(fit_dev_test(flat), std::invalid_argument);
    }
}

TEST_CASE("prediction interval") {
    Xoshiro256ss rng(8);
    const auto pts = linear_points(rng, 50, 1.1, -3.0, 0.5);
    const auto fit = fit_dev_test(pts);

    SUBCASE("matches an independently coded formula") {
        for (double dev : {74.0, 80.0, 86.5}) {
            for (double alpha : {0.5, 0.7763932022500211, 0.95}) {
                const double t_star = t_quantile(1.0 - 0.5 * (1.0 - alpha),
                                                 static_cast<double>(fit.n) - 2.0);
                const double dx = dev - fit.mean_x;
                const double expected = t_star * fit.s_y
                    * std::sqrt(1.0 + 1.0 / static_cast<double>(fit.n)
                                + dx * dx / ((static_cast<double>(fit.n) - 1.0)
                                             * fit.s_x * fit.s_x));
                CHECK(prediction_interval(fit, dev, alpha)
                      == doctest::Approx(expected).epsilon(1e-9));
            }
        }
    }
    SUBCASE("symmetric around mean_x and increasing away from it") {
        const double at_mean = prediction_interval(fit, fit.mean_x, 0.9);
        for (double off : {0.5, 2.0, 7.0}) {
            const double left = prediction_interval(fit, fit.mean_x - off, 0.9);
            const double right = prediction_interval(fit, fit.mean_x + off, 0.9);
            CHECK(left == doctest::Approx(right).epsilon(1e-12));
            CHECK(left > at_mean);
        }
        CHECK(prediction_interval(fit, fit.mean_x + 5.0, 0.9)
              > prediction_interval(fit, fit.mean_x + 1.0, 0.9));
    }
    SUBCASE("perfect fit collapses the band") {
        std::vector<DevTestPoint> exact;
        for (int i = 0; i < 8; ++i) exact.push_back({static_cast<double>(i), 3.0 * i});
        const auto f = fit_dev_test(exact);
        CHECK(prediction_interval(f, 4.0, 0.95) == doctest::Approx(0.0));
        CHECK(interval_width_summary(exact).mean_width == doctest::Approx(0.0));
    }
    SUBCASE("alpha validation") {
        CHECK_THROWS_AS(prediction_interval(fit, 80.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(prediction_interval(fit, 80.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("interval width summary") {
    SUBCASE("pair confidence maps to the documented alpha") {
        Xoshiro256ss rng(15);
        const auto pts = linear_points(rng, 100, 1.0, 0.0, 0.4);
        const auto summary = interval_width_summary(pts, 0.05);
        CHECK(summary.alpha == doctest::Approx(1.0 - std::sqrt(0.05)).epsilon(1e-12));
        CHECK(summary.mean_width > 0.0);
        // mean width is the average of the pointwise widths
        double acc = 0;
        for (const auto& p : pts)
            acc += 2.0 * prediction_interval(summary.fit, p.dev, summary.alpha);
        CHECK(summary.mean_width == doctest::Approx(acc / 100.0).epsilon(1e-12));
        CHECK_THROWS_AS(interval_width_summary(pts, 0.0), std::invalid_argument);
    }
}

TEST_CASE("empirical coverage of the prediction band") {
    // fresh points fall inside f(dev) +/- zeta with frequency close to alpha
    Xoshiro256ss rng(123);
    const auto train = linear_points(rng, 5000, 0.9, 5.0, 0.5);
    const auto fit = fit_dev_test(train);
    for (double alpha : {1.0 - std::sqrt(0.05), 0.95}) {
        int inside = 0;
        const int fresh = 5000;
        Xoshiro256ss gen(456);
        for (int i = 0; i < fresh; ++i) {
            const double x = 80.0 + 3.0 * gen.next_normal();
            const double y = 5.0 + 0.9 * x + 0.5 * gen.next_normal();
            const double zeta = prediction_interval(fit, x, alpha);
            if (std::fabs(y - fit.predict(x)) <= zeta) ++inside;
        }
        CHECK(std::fabs(inside / static_cast<double>(fresh) - alpha) <= 0.03);
    }
}
