#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bci/types.hpp"

namespace bci {

struct TrialRecord {
    std::string participant_id;
    int session_index{1};  // 1-based
    Command direction{Command::Forward};
    bool success{false};
};

// One stratum's success rate backed by its exact counts.
struct RateEntry {
    std::string key;
    std::uint64_t successes{0};
    std::uint64_t attempts{0};
    std::string percent_text;  // 2 decimals, round half up
    double percent{0.0};
};

struct AccuracyReport {
    RateEntry overall;
    std::vector<RateEntry> per_direction;    // configured command order
    std::vector<RateEntry> per_session;      // ascending session index
    std::vector<RateEntry> per_participant;  // first-appearance order
};

// successes/attempts as a percentage with 2 decimals, round half up, computed
// in integer arithmetic.
std::string format_percent(std::uint64_t successes, std::uint64_t attempts);

// Marks each epoch a success when the decision command equals the intent;
// NoDecision counts as a miss. Throws DataError on length mismatch.
std::vector<TrialRecord> score(const std::vector<Decision>& decisions,
                               const std::vector<Command>& intents,
                               const std::string& participant_id = "sim",
                               int session_index = 1);

AccuracyReport aggregate(const std::vector<TrialRecord>& records);

// Information transferred per selection for an N-target task at accuracy P:
// log2(N) + P*log2(P) + (1-P)*log2((1-P)/(N-1)).
double itr_bits_per_selection(double p, int n);

// Bits per minute at one selection every selectionTime seconds.
double itr_bpm(double p, int n, double selection_time_s);

// Bundled 12-participant, 5-session, 4-direction benchmark dataset
// (one binary success flag per trial, 240 records).
std::vector<TrialRecord> table2_fixture();

// Caveat printed alongside the fixture report: the dataset's accompanying
// summary states a different overall mean than the encoded flags produce.
std::string table2_discrepancy_note();

}  // namespace bci
