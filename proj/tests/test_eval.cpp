#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bci/eval.hpp"
#include "bci/types.hpp"

using namespace bci;

TEST_CASE("format_percent uses exact integer arithmetic with round half up") {
    CHECK(format_percent(0, 0) == "0.00");
    CHECK(format_percent(0, 1) == "0.00");
    CHECK(format_percent(1, 1) == "100.00");
    CHECK(format_percent(1, 2) == "50.00");
    CHECK(format_percent(1, 3) == "33.33");
    CHECK(format_percent(2, 3) == "66.67");
    CHECK(format_percent(1, 8) == "12.50");
    CHECK(format_percent(19, 24) == "79.17");
    CHECK(format_percent(44, 48) == "91.67");
    CHECK(format_percent(43, 48) == "89.58");
    CHECK(format_percent(210, 240) == "87.50");
    CHECK(format_percent(207, 240) == "86.25");
    // Exact half at the hundredth rounds up: 3/800 = 0.375%.
    CHECK(format_percent(3, 800) == "0.38");
    CHECK(format_percent(1, 800) == "0.13");  // 0.125 -> up
    CHECK(format_percent(1, 1600) == "0.06");  // 0.0625 -> 0.06 (below half)
    // Counts far beyond double's 53-bit mantissa would still be exact.
    CHECK(format_percent(1, 10000) == "0.01");
}

TEST_CASE("score marks matches only when a command was issued") {
    std::vector<Decision> decisions(4);
    decisions[0].command = Command::Forward;
    decisions[1].command = Command::NoDecision;  // abstained
    decisions[2].command = Command::Left;        // wrong direction
    decisions[3].command = Command::Backward;
    const std::vector<Command> intents = {Command::Forward, Command::Right, Command::Right,
                                          Command::Backward};

    const auto records = score(decisions, intents, "subj", 2);
    REQUIRE(records.size() == 4);
    CHECK(records[0].success);
    CHECK_FALSE(records[1].success);
    CHECK_FALSE(records[2].success);
    CHECK(records[3].success);
    CHECK(records[0].participant_id == "subj");
    CHECK(records[0].session_index == 2);
    CHECK(records[1].direction == Command::Right);

    CHECK_THROWS_AS(score(decisions, {Command::Forward}, "subj", 1), DataError);
}

TEST_CASE("aggregate groups by direction, session, and participant") {
    std::vector<TrialRecord> records;
    auto add = [&](const char* id, int session, Command dir, bool ok) {
        records.push_back({id, session, dir, ok});
    };
    add("A", 1, Command::Forward, true);
    add("A", 1, Command::Right, false);
    add("A", 2, Command::Forward, true);
    add("B", 1, Command::Left, true);
    add("B", 2, Command::Backward, false);
    add("B", 2, Command::Left, true);

    const auto rep = aggregate(records);
    CHECK(rep.overall.successes == 4);
    CHECK(rep.overall.attempts == 6);
    CHECK(rep.overall.percent_text == "66.67");

    REQUIRE(rep.per_direction.size() == 4);
    CHECK(rep.per_direction[0].key == "Forward");
    CHECK(rep.per_direction[0].successes == 2);
    CHECK(rep.per_direction[0].attempts == 2);
    CHECK(rep.per_direction[1].key == "Right");
    CHECK(rep.per_direction[1].successes == 0);
    CHECK(rep.per_direction[2].key == "Backward");
    CHECK(rep.per_direction[3].key == "Left");
    CHECK(rep.per_direction[3].percent_text == "100.00");

    REQUIRE(rep.per_session.size() == 2);
    CHECK(rep.per_session[0].key == "session 1");
    CHECK(rep.per_session[0].attempts == 3);
    CHECK(rep.per_session[1].key == "session 2");

    REQUIRE(rep.per_participant.size() == 2);
    CHECK(rep.per_participant[0].key == "A");
    CHECK(rep.per_participant[1].key == "B");
    CHECK(rep.per_participant[1].successes == 2);

    CHECK_THROWS_AS(aggregate({}), DataError);
}

TEST_CASE("benchmark dataset recounts to its published per-stratum rates") {
    const auto records = table2_fixture();
    REQUIRE(records.size() == 240);

    // Brute-force recount, independent of aggregate().
    std::map<int, std::pair<int, int>> by_session;
    std::map<std::string, std::pair<int, int>> by_direction;
    int total = 0;
    for (const auto& r : records) {
        by_session[r.session_index].first += r.success ? 1 : 0;
        by_session[r.session_index].second += 1;
        by_direction[to_string(r.direction)].first += r.success ? 1 : 0;
        by_direction[to_string(r.direction)].second += 1;
        total += r.success ? 1 : 0;
    }
    REQUIRE(by_session.size() == 5);
    for (const auto& [s, counts] : by_session) CHECK(counts.second == 48);

    CHECK(total == 210);  // 87.50% of 240
    CHECK(by_session[1].first == 38);   // 79.17%
    CHECK(by_session[2].first == 40);   // 83.33%
    CHECK(by_session[3].first == 45);   // 93.75%
    CHECK(by_session[4].first == 44);   // 91.67%
    CHECK(by_session[5].first == 43);   // 89.58%
    CHECK(by_direction["Forward"] == std::pair<int, int>{60, 60});
    CHECK(by_direction["Backward"] == std::pair<int, int>{60, 60});
    CHECK(by_direction["Left"] == std::pair<int, int>{45, 60});
    CHECK(by_direction["Right"] == std::pair<int, int>{45, 60});

    // And the aggregate pipeline formats them as published.
    const auto rep = aggregate(records);
    CHECK(rep.overall.percent_text == "87.50");
    REQUIRE(rep.per_session.size() == 5);
    CHECK(rep.per_session[0].percent_text == "79.17");
    CHECK(rep.per_session[1].percent_text == "83.33");
    CHECK(rep.per_session[2].percent_text == "93.75");
    CHECK(rep.per_session[3].percent_text == "91.67");
    CHECK(rep.per_session[4].percent_text == "89.58");
    REQUIRE(rep.per_direction.size() == 4);
    CHECK(rep.per_direction[0].percent_text == "100.00");  // Forward
    CHECK(rep.per_direction[1].percent_text == "75.00");   // Right
    CHECK(rep.per_direction[2].percent_text == "100.00");  // Backward
    CHECK(rep.per_direction[3].percent_text == "75.00");   // Left
    REQUIRE(rep.per_participant.size() == 12);
    CHECK(rep.per_participant[0].key == "P1");
    CHECK(rep.per_participant[11].key == "P12");
    for (const auto& p : rep.per_participant) CHECK(p.attempts == 20);

    // The bundled dataset's summary sheet disagrees with its own flags; the
    // note must surface both numbers.
    const auto note = table2_discrepancy_note();
    CHECK(note.find("86.25") != std::string::npos);
    CHECK(note.find("87.50") != std::string::npos);
}

TEST_CASE("information transfer rate formula") {
    // Perfect accuracy transmits log2(N) bits.
    CHECK(itr_bits_per_selection(1.0, 4) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(itr_bits_per_selection(1.0, 2) == doctest::Approx(1.0).epsilon(1e-12));
    // Chance level transmits nothing.
    CHECK(itr_bits_per_selection(0.25, 4) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    // Reference value used throughout the project.
    CHECK(itr_bits_per_selection(0.8625, 4) == doctest::Approx(1.2044).epsilon(5e-4));
    CHECK(itr_bpm(0.8625, 4, 1.717) == doctest::Approx(42.08).scale(1.0).epsilon(2e-3));
    CHECK(itr_bpm(0.8625, 4, 2.0) == doctest::Approx(36.13).scale(1.0).epsilon(1e-3));

    // Monotone in accuracy above chance.
    double prev = itr_bits_per_selection(0.25, 4);
    for (double p = 0.3; p <= 1.0; p += 0.05) {
        const double cur = itr_bits_per_selection(p, 4);
        CHECK(cur > prev);
        prev = cur;
    }

    // bpm scales inversely with the selection time.
    CHECK(itr_bpm(0.9, 4, 1.0) == doctest::Approx(2.0 * itr_bpm(0.9, 4, 2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(itr_bits_per_selection(0.5, 1), ConfigError);
    CHECK_THROWS_AS(itr_bits_per_selection(-0.1, 4), ConfigError);
    CHECK_THROWS_AS(itr_bits_per_selection(1.1, 4), ConfigError);
    CHECK_THROWS_AS(itr_bpm(0.9, 4, 0.0), ConfigError);
}
