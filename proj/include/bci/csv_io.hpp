#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "bci/types.hpp"

namespace bci {

// Streaming reader for the recording format: header `t_us,Fz,Cz,Pz,PO7,PO8,Oz`,
// one frame per row, values in µV. Enforces strictly increasing timestamps and
// finite channel values; errors carry the 1-based row number.
class RecordingReader {
public:
    explicit RecordingReader(const std::string& path);

    std::optional<SampleFrame> next();

    std::size_t row_number() const { return row_; }

private:
    std::ifstream in_;
    std::string path_;
    std::size_t row_{1};  // header consumed in the constructor
    std::int64_t last_t_us_{-1};
    bool have_last_{false};
};

std::vector<SampleFrame> read_recording_csv(const std::string& path);

// Marker format: header `t_us,code`, code one of {o,p,q,r}, timestamps
// non-decreasing.
std::vector<MarkerEvent> read_marker_csv(const std::string& path);

struct IntentRow {
    std::size_t epoch_idx{0};
    int attended_led{0};
    Command command{Command::Forward};
};

// Intent format: header `epoch_idx,attended_led,command`.
std::vector<IntentRow> read_intent_csv(const std::string& path);

struct DecisionRow {
    std::size_t epoch_idx{0};
    Decision decision;
};

// Decision log format: header `epoch_idx,ssvep_winner_hz,p300_winner,agreement,command`;
// p300_winner is `-` when absent; agreement is 0 or 1.
std::vector<DecisionRow> read_decision_csv(const std::string& path);

void write_recording_csv(const std::string& path, const std::vector<SampleFrame>& frames);
void write_marker_csv(const std::string& path, const std::vector<MarkerEvent>& markers);
void write_intent_csv(const std::string& path, const std::vector<IntentRow>& rows);
void write_decision_csv(const std::string& path, const std::vector<DecisionRow>& rows);

}  // namespace bci
