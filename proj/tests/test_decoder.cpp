#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "bci/decoder.hpp"
#include "bci/types.hpp"

using namespace bci;

namespace {

SsvepFeature features_with_winner(double winner_hz, const StimulusConfig& config,
                                  double winner_power = 10.0, double other_power = 1.0) {
    SsvepFeature f;
    for (const auto& led : config.leds) {
        f.bands.push_back(
            {led.frequency_hz, led.frequency_hz == winner_hz ? winner_power : other_power});
    }
    f.window_start_us = 200'000;
    f.window_end_us = 2'196'000;
    return f;
}

}  // namespace

TEST_CASE("agreement produces the mapped command") {
    const StimulusConfig config;
    const struct {
        double hz;
        char marker;
        Command command;
    } rows[] = {
        {7.0, 'o', Command::Forward},
        {8.0, 'p', Command::Right},
        {9.0, 'q', Command::Backward},
        {10.0, 'r', Command::Left},
    };
    for (const auto& row : rows) {
        const auto d = decide(features_with_winner(row.hz, config), row.marker, config);
        CAPTURE(row.hz);
        CHECK(d.ssvep_winner_hz == row.hz);
        REQUIRE(d.p300_winner.has_value());
        CHECK(*d.p300_winner == row.marker);
        CHECK(d.agreement);
        CHECK(d.command == row.command);
        CHECK(d.decided_at_us == 2'196'000);
    }
}

TEST_CASE("disagreement or a missing P300 yields NoDecision") {
    const StimulusConfig config;

    const auto disagree = decide(features_with_winner(7.0, config), 'p', config);
    CHECK(disagree.ssvep_winner_hz == 7.0);
    CHECK_FALSE(disagree.agreement);
    CHECK(disagree.command == Command::NoDecision);
    REQUIRE(disagree.p300_winner.has_value());
    CHECK(*disagree.p300_winner == 'p');

    const auto missing = decide(features_with_winner(9.0, config), std::nullopt, config);
    CHECK(missing.ssvep_winner_hz == 9.0);
    CHECK_FALSE(missing.agreement);
    CHECK(missing.command == Command::NoDecision);
    CHECK_FALSE(missing.p300_winner.has_value());
}

TEST_CASE("the agreement invariant holds over every winner/marker pairing") {
    const StimulusConfig config;
    for (const auto& led : config.leds) {
        for (char marker : kMarkerCodes) {
            const auto d = decide(features_with_winner(led.frequency_hz, config), marker, config);
            const bool should_agree = config.find_marker(marker)->frequency_hz == led.frequency_hz;
            CAPTURE(led.frequency_hz);
            CAPTURE(marker);
            CHECK(d.agreement == should_agree);
            CHECK((d.command != Command::NoDecision) == d.agreement);
            if (d.agreement) CHECK(d.command == led.command);
        }
    }
}

TEST_CASE("an unconfigured P300 winner is a protocol violation") {
    const StimulusConfig config;
    CHECK_THROWS_AS(decide(features_with_winner(7.0, config), 'x', config), DataError);
}

TEST_CASE("features that skip a configured band are rejected") {
    const StimulusConfig config;
    SsvepFeature partial;
    partial.bands = {{7.0, 1.0}, {8.0, 2.0}};
    CHECK_THROWS_AS(decide(partial, 'o', config), DataError);
}

TEST_CASE("map_to_command follows the configured table") {
    const StimulusConfig config;
    CHECK(map_to_command(7.0, config) == Command::Forward);
    CHECK(map_to_command(8.0, config) == Command::Right);
    CHECK(map_to_command(9.0, config) == Command::Backward);
    CHECK(map_to_command(10.0, config) == Command::Left);
    CHECK_THROWS_AS(map_to_command(11.0, config), ConfigError);
}

TEST_CASE("feedback reflects the decision outcome") {
    Decision good;
    good.agreement = true;
    good.command = Command::Left;
    good.decided_at_us = 1000;
    const auto ok = make_feedback(good);
    CHECK(ok.kind == FeedbackEvent::Kind::Success);
    CHECK(ok.pulses == 1);
    CHECK(ok.pulse_frequency_hz == 1000.0);
    CHECK(ok.pulse_duration_ms == 200.0);
    CHECK(ok.t_us == 1000);

    Decision bad;
    bad.agreement = false;
    bad.command = Command::NoDecision;
    const auto fail = make_feedback(bad);
    CHECK(fail.kind == FeedbackEvent::Kind::Failure);
    CHECK(fail.pulses == 2);
    CHECK(fail.inter_pulse_gap_ms == 100.0);
}

TEST_CASE("dispatcher sends agreed commands with increasing sequence numbers") {
    RecordingSink sink;
    Dispatcher dispatcher(sink);

    Decision agree;
    agree.agreement = true;
    agree.command = Command::Forward;
    agree.decided_at_us = 2'196'000;

    Decision none;
    none.agreement = false;
    none.command = Command::NoDecision;
    none.decided_at_us = 4'196'000;

    const auto r1 = dispatcher.dispatch(agree);
    REQUIRE(r1.message.has_value());
    CHECK(r1.message->sequence_number == 1);
    CHECK(r1.message->command == Command::Forward);
    CHECK(r1.feedback.kind == FeedbackEvent::Kind::Success);

    const auto r2 = dispatcher.dispatch(none);
    CHECK_FALSE(r2.message.has_value());
    CHECK(r2.feedback.kind == FeedbackEvent::Kind::Failure);

    agree.command = Command::Backward;
    const auto r3 = dispatcher.dispatch(agree);
    REQUIRE(r3.message.has_value());
    CHECK(r3.message->sequence_number == 2);

    REQUIRE(sink.messages.size() == 2);
    CHECK(sink.messages[0].command == Command::Forward);
    CHECK(sink.messages[1].command == Command::Backward);
    CHECK(dispatcher.transport_errors().empty());
}

TEST_CASE("a failing sink downgrades feedback and records the error") {
    struct DeadSink : CommandSink {
        bool send(const CommandMessage&) override { return false; }
    } sink;
    Dispatcher dispatcher(sink);

    Decision agree;
    agree.agreement = true;
    agree.command = Command::Right;
    const auto r = dispatcher.dispatch(agree);
    // The command was produced but could not be delivered.
    REQUIRE(r.message.has_value());
    CHECK(r.feedback.kind == FeedbackEvent::Kind::Failure);
    REQUIRE(dispatcher.transport_errors().size() == 1);
}

TEST_CASE("line protocol emits SEQ,COMMAND per message") {
    std::ostringstream out;
    LineProtocolSink sink(out);
    Dispatcher dispatcher(sink);

    Decision agree;
    agree.agreement = true;
    agree.command = Command::Left;
    dispatcher.dispatch(agree);
    agree.command = Command::Forward;
    dispatcher.dispatch(agree);

    CHECK(out.str() == "1,Left\n2,Forward\n");
}

TEST_CASE("fuser pairs evidence regardless of arrival order") {
    const StimulusConfig config;
    EpochFuser fuser(config);

    SUBCASE("features first") {
        fuser.submit_features(0, features_with_winner(8.0, config));
        CHECK(fuser.drain().empty());
        fuser.submit_p300(0, 'p');
        const auto out = fuser.drain();
        REQUIRE(out.size() == 1);
        CHECK(out[0].first == 0);
        CHECK(out[0].second.command == Command::Right);
    }
    SUBCASE("P300 first") {
        fuser.submit_p300(0, 'p');
        CHECK(fuser.drain().empty());
        fuser.submit_features(0, features_with_winner(8.0, config));
        const auto out = fuser.drain();
        REQUIRE(out.size() == 1);
        CHECK(out[0].second.command == Command::Right);
    }
    SUBCASE("decisions are released strictly in epoch order") {
        fuser.submit_features(1, features_with_winner(9.0, config));
        fuser.submit_p300(1, 'q');
        CHECK(fuser.drain().empty());  // epoch 0 still pending

        fuser.submit_features(0, features_with_winner(7.0, config));
        fuser.submit_p300(0, std::nullopt);
        const auto out = fuser.drain();
        REQUIRE(out.size() == 2);
        CHECK(out[0].first == 0);
        CHECK(out[0].second.command == Command::NoDecision);
        CHECK(out[1].first == 1);
        CHECK(out[1].second.command == Command::Backward);
    }
}
