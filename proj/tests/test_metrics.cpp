#include "cop/errors.hpp"
#include "cop/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace cop;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<interval_record> records_from(const std::vector<bool>& covered,
                                          const std::vector<double>& widths) {
    std::vector<interval_record> out;
    for (std::size_t i = 0; i < covered.size(); ++i) {
        interval_record r;
        r.t = static_cast<std::int64_t>(i) + 1;
        r.covered = covered[i];
        r.width = widths.empty() ? 1.0 : widths[i];
        out.push_back(r);
    }
    return out;
}

} // namespace

TEST_CASE("summarize") {
    SUBCASE("all covered, constant width") {
        const auto recs = records_from({true, true, true}, {2.0, 2.0, 2.0});
        const run_summary s = summarize(recs);
        CHECK(s.coverage == doctest::Approx(1.0));
        CHECK(s.avg_width == doctest::Approx(2.0));
        CHECK(s.median_width == doctest::Approx(2.0));
    }
    SUBCASE("9 of 10 covered") {
        std::vector<bool> cov(10, true);
        cov[3] = false;
        const run_summary s = summarize(records_from(cov, {}));
        CHECK(s.coverage == doctest::Approx(0.9));
    }
    SUBCASE("one infinite width forces an infinite average, median stays finite") {
        const auto recs = records_from({true, true, true, true, true},
                                       {1.0, 2.0, kInf, 3.0, 4.0});
        const run_summary s = summarize(recs);
        CHECK(std::isinf(s.avg_width));
        CHECK(s.median_width == doctest::Approx(3.0)); // lower median of 5 values
    }
    SUBCASE("majority-infinite widths push the median to inf") {
        const auto recs = records_from({true, true, true}, {1.0, kInf, kInf});
        CHECK(std::isinf(summarize(recs).median_width));
    }
    SUBCASE("empty run rejected") {
        CHECK_THROWS_AS(summarize({}), config_error);
    }
}

TEST_CASE("rolling coverage") {
    SUBCASE("alternating with window 2 is flat 0.5") {
        std::vector<bool> cov;
        for (int i = 0; i < 10; ++i) cov.push_back(i % 2 == 0);
        const auto roll = rolling_coverage(records_from(cov, {}), 2);
        REQUIRE(roll.size() == 9);
        for (double v : roll) CHECK(v == doctest::Approx(0.5));
    }
    SUBCASE("all covered is flat 1.0") {
        const auto roll = rolling_coverage(records_from(std::vector<bool>(30, true), {}), 7);
        for (double v : roll) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("constructed 18-in-20 stream is flat 0.9") {
        // repeat blocks of 20 with misses at fixed in-block offsets 7 and 15
        std::vector<bool> cov;
        for (int i = 0; i < 200; ++i) {
            const int k = i % 20;
            cov.push_back(!(k == 7 || k == 15));
        }
        const auto roll = rolling_coverage(records_from(cov, {}), 20);
        for (double v : roll) CHECK(v == doctest::Approx(0.9));
    }
    SUBCASE("window larger than the run rejected") {
        CHECK_THROWS_AS(rolling_coverage(records_from({true}, {}), 2), config_error);
    }
}

TEST_CASE("recovery time") {
    const double alpha = 0.1; // band [0.85, 0.95] for w_r = 20

    SUBCASE("band endpoints") {
        CHECK(1.0 - alpha - 1.0 / 20 == doctest::Approx(0.85));
        CHECK(1.0 - alpha + 1.0 / 20 == doctest::Approx(0.95));
    }
    SUBCASE("known first qualifying index") {
        // all misses until t = 60, fully covered after; the 20-window
        // coverage first reaches 0.85 (17/20) at t = 77, and stays in-band
        // through 0.95 (19/20) at t = 79, leaving it at t = 80.
        std::vector<bool> cov;
        for (int t = 1; t <= 200; ++t) cov.push_back(t > 60);
        const auto recs = records_from(cov, {});
        // in-band run must last k consecutive indices; with k = 3 the first
        // qualifying start is 77
        const auto r3 = recovery_time(recs, 60, 20, 3, alpha);
        REQUIRE(r3.has_value());
        CHECK(*r3 == 77 - 60);
        // k = 10 cannot fit inside the 77..79 window: recovery never happens
        CHECK(!recovery_time(recs, 60, 20, 10, alpha).has_value());
    }
    SUBCASE("steady 0.9 coverage recovers at the first eligible index") {
        std::vector<bool> cov;
        for (int i = 0; i < 300; ++i) cov.push_back(i % 10 != 0); // exactly 18/20 per window
        const auto r = recovery_time(records_from(cov, {}), 100, 20, 10, alpha);
        REQUIRE(r.has_value());
        CHECK(*r == 1);
    }
    SUBCASE("permanently miscovering stream never recovers") {
        const auto recs = records_from(std::vector<bool>(200, false), {});
        CHECK(!recovery_time(recs, 50, 20, 10, alpha).has_value());
    }
    SUBCASE("monotone in k") {
        std::vector<bool> cov;
        for (int i = 0; i < 400; ++i) {
            cov.push_back(!(i % 10 == 0 || (i > 180 && i < 200)));
        }
        const auto recs = records_from(cov, {});
        std::optional<std::int64_t> prev;
        for (int k = 1; k <= 12; ++k) {
            const auto r = recovery_time(recs, 100, 20, k, alpha);
            if (prev.has_value() && r.has_value()) CHECK(*r >= *prev);
            if (r.has_value()) prev = r;
        }
    }
    SUBCASE("parameter validation") {
        const auto recs = records_from(std::vector<bool>(100, true), {});
        CHECK_THROWS_AS(recovery_time(recs, 50, 0, 10, alpha), config_error);
        CHECK_THROWS_AS(recovery_time(recs, 50, 20, 0, alpha), config_error);
        CHECK_THROWS_AS(recovery_time(recs, 90, 20, 10, alpha), config_error);
    }
}
