#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "bci/stimulus.hpp"
#include "bci/types.hpp"

using namespace bci;

TEST_CASE("tick constants describe a 72 MHz clock") {
    CHECK(kTicksPerSecond == 72'000'000);
    // 125/9 ns per tick times 72e6 ticks = 1 s exactly.
    CHECK(kTickNumeratorNs * kTicksPerSecond == 1'000'000'000 * kTickDenominator);
}

TEST_CASE("half periods quantize to whole ticks") {
    CHECK(half_period_ticks_for(10.0) == 3'600'000);
    CHECK(half_period_ticks_for(8.0) == 4'500'000);
    CHECK(half_period_ticks_for(9.0) == 4'000'000);
    CHECK(half_period_ticks_for(7.0) == 5'142'857);  // 72e6/14 rounded
    CHECK_THROWS_AS(half_period_ticks_for(0.0), ConfigError);
    CHECK_THROWS_AS(half_period_ticks_for(-3.0), ConfigError);
}

TEST_CASE("exactly divisible frequencies are realized with zero deviation") {
    for (double f : {10.0, 9.0, 8.0, 7.2, 12.0, 24.0}) {
        CAPTURE(f);
        CHECK(achieved_frequency_hz(f) == f);
        const auto s = schedule_ssvep(f, 2.0);
        CHECK(verify_frequency(s).deviation_percent == 0.0);
    }
}

TEST_CASE("quantization error stays under 0.20% across the band") {
    double worst = 0.0;
    for (int i = 60; i <= 300; ++i) {
        const double f = static_cast<double>(i) / 10.0;
        const auto s = schedule_ssvep(f, 2.0);
        const auto check = verify_frequency(s);
        worst = std::max(worst, check.deviation_percent);
        CAPTURE(f);
        CHECK(check.deviation_percent <= 0.20);
    }
    // At 72 MHz the band's quantization error is orders of magnitude below
    // the ceiling; this guards against a silently degraded tick resolution.
    CHECK(worst < 0.0001);
}

TEST_CASE("a 10 Hz stream toggles 20 times per second") {
    const auto s = schedule_ssvep(10.0, 1.0);
    CHECK(s.edge_ticks.size() == 20);
    CHECK(s.half_period_ticks == 3'600'000);
    for (std::size_t i = 0; i < s.edge_ticks.size(); ++i) {
        CHECK(s.edge_ticks[i] == static_cast<std::int64_t>(i) * 3'600'000);
    }
    // Edge times in ns: tick * 125/9.
    CHECK(s.edge_time_ns(1) == doctest::Approx(3'600'000.0 * 125.0 / 9.0));
}

TEST_CASE("measured frequency from hand-built edges") {
    ToggleStream s;
    s.led_id = 0;
    s.target_frequency_hz = 7.0;
    s.half_period_ticks = 5'142'857;
    for (int k = 0; k < 15; ++k) s.edge_ticks.push_back(k * 5'142'857LL);
    const auto check = verify_frequency(s);
    // 72e6 / (2 * 5142857) Hz, slightly above 7 Hz.
    CHECK(check.measured_hz == doctest::Approx(7.0000001944).epsilon(1e-10));
    CHECK(check.deviation_percent < 3e-6);
    CHECK(check.deviation_percent > 0.0);
}

TEST_CASE("verify_frequency needs at least four edges") {
    ToggleStream s;
    s.target_frequency_hz = 10.0;
    s.edge_ticks = {0, 3'600'000, 7'200'000};
    CHECK_THROWS_AS(verify_frequency(s), DataError);
    s.edge_ticks.push_back(10'800'000);
    CHECK_NOTHROW(verify_frequency(s));
}

TEST_CASE("each epoch flashes every LED exactly once") {
    const StimulusConfig config;
    const auto schedules = schedule_flashes(config, 50, 1234);
    REQUIRE(schedules.size() == 50);
    for (const auto& sched : schedules) {
        REQUIRE(sched.flashes.size() == 4);
        std::set<int> ids;
        std::set<char> codes;
        for (const auto& f : sched.flashes) {
            ids.insert(f.led_id);
            codes.insert(f.marker);
        }
        CHECK(ids == std::set<int>{0, 1, 2, 3});
        CHECK(codes == std::set<char>{'o', 'p', 'q', 'r'});
    }
}

TEST_CASE("flash onsets respect slots, spacing, and the epoch boundary") {
    const StimulusConfig config;  // 2000 ms epochs, 4 LEDs -> 500 ms slots
    const auto schedules = schedule_flashes(config, 200, 99, 100.0, 100.0);
    for (const auto& sched : schedules) {
        for (std::size_t slot = 0; slot < sched.flashes.size(); ++slot) {
            const auto& f = sched.flashes[slot];
            const std::int64_t slot_start = static_cast<std::int64_t>(slot) * 500'000;
            CHECK(f.onset_us >= slot_start);
            // Flash (100 ms) finishes inside its slot.
            CHECK(f.onset_us + 100'000 <= slot_start + 500'000);
            if (slot > 0) {
                const std::int64_t gap = f.onset_us - sched.flashes[slot - 1].onset_us;
                CHECK(gap >= 400'000);  // slot length minus jitter bound
                CHECK(gap <= 600'000);
            }
        }
        // All flashes end before the epoch does.
        CHECK(sched.flashes.back().onset_us + 100'000 <= 2'000'000);
    }
}

TEST_CASE("flash order varies across epochs") {
    const StimulusConfig config;
    const auto schedules = schedule_flashes(config, 64, 5);
    std::set<std::vector<int>> orders;
    for (const auto& sched : schedules) {
        std::vector<int> order;
        for (const auto& f : sched.flashes) order.push_back(f.led_id);
        orders.insert(order);
    }
    // 64 epochs over 24 permutations: a fixed order would be a scheduler bug.
    CHECK(orders.size() > 10);
}

TEST_CASE("flash schedules are deterministic per seed and differ across seeds") {
    const StimulusConfig config;
    const auto a = schedule_flashes(config, 10, 42);
    const auto b = schedule_flashes(config, 10, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t e = 0; e < a.size(); ++e) {
        REQUIRE(a[e].flashes.size() == b[e].flashes.size());
        for (std::size_t i = 0; i < a[e].flashes.size(); ++i) {
            CHECK(a[e].flashes[i].led_id == b[e].flashes[i].led_id);
            CHECK(a[e].flashes[i].onset_us == b[e].flashes[i].onset_us);
        }
    }

    const auto c = schedule_flashes(config, 10, 43);
    bool any_difference = false;
    for (std::size_t e = 0; e < a.size() && !any_difference; ++e) {
        for (std::size_t i = 0; i < a[e].flashes.size(); ++i) {
            if (a[e].flashes[i].led_id != c[e].flashes[i].led_id ||
                a[e].flashes[i].onset_us != c[e].flashes[i].onset_us) {
                any_difference = true;
                break;
            }
        }
    }
    CHECK(any_difference);
}

TEST_CASE("epoch substreams make schedules prefix-stable") {
    // Requesting more epochs must not change the earlier ones.
    const StimulusConfig config;
    const auto small = schedule_flashes(config, 3, 7);
    const auto big = schedule_flashes(config, 20, 7);
    for (std::size_t e = 0; e < small.size(); ++e) {
        for (std::size_t i = 0; i < small[e].flashes.size(); ++i) {
            CHECK(small[e].flashes[i].led_id == big[e].flashes[i].led_id);
            CHECK(small[e].flashes[i].onset_us == big[e].flashes[i].onset_us);
        }
    }
}

TEST_CASE("markers land on the recording timeline in sorted order") {
    const StimulusConfig config;
    const auto schedules = schedule_flashes(config, 5, 11);
    const auto markers = flash_markers(schedules, 2'000'000, 200'000);
    REQUIRE(markers.size() == 20);
    for (std::size_t i = 1; i < markers.size(); ++i) {
        CHECK(markers[i].t_us >= markers[i - 1].t_us);
    }
    // Epoch e occupies [200000 + 2e6*e, 200000 + 2e6*(e+1)).
    for (std::size_t e = 0; e < 5; ++e) {
        for (std::size_t i = 0; i < 4; ++i) {
            const auto& m = markers[e * 4 + i];
            const std::int64_t lo = 200'000 + 2'000'000 * static_cast<std::int64_t>(e);
            CHECK(m.t_us >= lo);
            CHECK(m.t_us < lo + 2'000'000);
        }
    }
    CHECK(marker_bytes(markers).size() == 20);
}

TEST_CASE("scheduler guards") {
    const StimulusConfig config;
    CHECK_THROWS_AS(schedule_flashes(config, 0, 1), ConfigError);
    CHECK_THROWS_AS(schedule_flashes(config, 1, 1, 600.0, 100.0), ConfigError);
    CHECK_THROWS_AS(schedule_flashes(config, 1, 1, 100.0, -1.0), ConfigError);
    StimulusConfig broken = config;
    broken.leds[0].frequency_hz = broken.leds[1].frequency_hz;
    CHECK_THROWS_AS(schedule_flashes(broken, 1, 1), ConfigError);
    CHECK_THROWS_AS(schedule_ssvep(10.0, 0.0), ConfigError);
}

TEST_CASE("serial link metadata") {
    const SerialLinkInfo link;
    CHECK(link.baud_rate == 9600);
    CHECK(link.byte_time_ms() == doctest::Approx(10'000.0 / 9600.0));
}
