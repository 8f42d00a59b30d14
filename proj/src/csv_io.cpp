#include "bci/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <charconv>
#include <limits>

namespace bci {
namespace {

[[noreturn]] void fail(const std::string& path, std::size_t row, const std::string& what) {
    throw DataError(path + ":" + std::to_string(row) + ": " + what);
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(line.substr(start));
            return parts;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::int64_t parse_i64(const std::string& s, const std::string& path, std::size_t row,
                       const char* what) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(path, row, std::string("bad ") + what + " '" + s + "'");
    }
    return v;
}

double parse_f64(const std::string& s, const std::string& path, std::size_t row,
                 const char* what) {
    if (s.empty()) fail(path, row, std::string("empty ") + what);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        fail(path, row, std::string("bad ") + what + " '" + s + "'");
    }
    return v;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

void expect_header(std::ifstream& in, const std::string& path, const char* header) {
    std::string line;
    if (!std::getline(in, line)) fail(path, 1, "missing header");
    if (strip_cr(line) != header) {
        fail(path, 1, std::string("expected header '") + header + "'");
    }
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

constexpr const char* kRecordingHeader = "t_us,Fz,Cz,Pz,PO7,PO8,Oz";
constexpr const char* kMarkerHeader = "t_us,code";
constexpr const char* kIntentHeader = "epoch_idx,attended_led,command";
constexpr const char* kDecisionHeader = "epoch_idx,ssvep_winner_hz,p300_winner,agreement,command";

}  // namespace

RecordingReader::RecordingReader(const std::string& path) : in_(path), path_(path) {
    if (!in_) throw DataError("cannot open " + path);
    expect_header(in_, path_, kRecordingHeader);
}

std::optional<SampleFrame> RecordingReader::next() {
    std::string line;
    for (;;) {
        if (!std::getline(in_, line)) return std::nullopt;
        ++row_;
        line = strip_cr(line);
        if (!line.empty()) break;
    }

    const auto parts = split(line);
    if (parts.size() != 1 + kNumChannels) {
        fail(path_, row_, "expected " + std::to_string(1 + kNumChannels) + " columns, got " +
                              std::to_string(parts.size()));
    }
    SampleFrame f;
    f.t_us = parse_i64(parts[0], path_, row_, "timestamp");
    if (have_last_ && f.t_us <= last_t_us_) {
        fail(path_, row_, "timestamps must be strictly increasing");
    }
    last_t_us_ = f.t_us;
    have_last_ = true;
    for (std::size_t ch = 0; ch < kNumChannels; ++ch) {
        f.uv[ch] = parse_f64(parts[ch + 1], path_, row_, kChannelNames[ch]);
        if (!std::isfinite(f.uv[ch])) fail(path_, row_, "non-finite channel value");
    }
    return f;
}

std::vector<SampleFrame> read_recording_csv(const std::string& path) {
    RecordingReader reader(path);
    std::vector<SampleFrame> frames;
    while (auto f = reader.next()) frames.push_back(*f);
    return frames;
}

std::vector<MarkerEvent> read_marker_csv(const std::string& path) {
    auto in = open_input(path);
    expect_header(in, path, kMarkerHeader);
    std::vector<MarkerEvent> markers;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto parts = split(line);
        if (parts.size() != 2) fail(path, row, "expected 2 columns");
        MarkerEvent m;
        m.t_us = parse_i64(parts[0], path, row, "timestamp");
        if (parts[1].size() != 1 || !is_marker_code(parts[1][0])) {
            fail(path, row, "bad marker code '" + parts[1] + "'");
        }
        m.code = parts[1][0];
        if (!markers.empty() && m.t_us < markers.back().t_us) {
            fail(path, row, "marker timestamps must be non-decreasing");
        }
        markers.push_back(m);
    }
    return markers;
}

std::vector<IntentRow> read_intent_csv(const std::string& path) {
    auto in = open_input(path);
    expect_header(in, path, kIntentHeader);
    std::vector<IntentRow> rows;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto parts = split(line);
        if (parts.size() != 3) fail(path, row, "expected 3 columns");
        IntentRow r;
        r.epoch_idx = static_cast<std::size_t>(parse_i64(parts[0], path, row, "epoch index"));
        r.attended_led = static_cast<int>(parse_i64(parts[1], path, row, "LED id"));
        const auto cmd = command_from_string(parts[2]);
        if (!cmd || *cmd == Command::NoDecision) fail(path, row, "bad command '" + parts[2] + "'");
        r.command = *cmd;
        rows.push_back(r);
    }
    return rows;
}

std::vector<DecisionRow> read_decision_csv(const std::string& path) {
    auto in = open_input(path);
    expect_header(in, path, kDecisionHeader);
    std::vector<DecisionRow> rows;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto parts = split(line);
        if (parts.size() != 5) fail(path, row, "expected 5 columns");
        DecisionRow r;
        r.epoch_idx = static_cast<std::size_t>(parse_i64(parts[0], path, row, "epoch index"));
        r.decision.ssvep_winner_hz = parse_f64(parts[1], path, row, "winner frequency");
        if (parts[2] == "-") {
            r.decision.p300_winner = std::nullopt;
        } else if (parts[2].size() == 1 && is_marker_code(parts[2][0])) {
            r.decision.p300_winner = parts[2][0];
        } else {
            fail(path, row, "bad marker code '" + parts[2] + "'");
        }
        if (parts[3] != "0" && parts[3] != "1") fail(path, row, "agreement must be 0 or 1");
        r.decision.agreement = parts[3] == "1";
        const auto cmd = command_from_string(parts[4]);
        if (!cmd) fail(path, row, "bad command '" + parts[4] + "'");
        r.decision.command = *cmd;
        rows.push_back(r);
    }
    return rows;
}

void write_recording_csv(const std::string& path, const std::vector<SampleFrame>& frames) {
    auto out = open_output(path);
    out << kRecordingHeader << '\n';
    for (const auto& f : frames) {
        out << f.t_us;
        for (std::size_t ch = 0; ch < kNumChannels; ++ch) out << ',' << format_value(f.uv[ch]);
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

void write_marker_csv(const std::string& path, const std::vector<MarkerEvent>& markers) {
    auto out = open_output(path);
    out << kMarkerHeader << '\n';
    for (const auto& m : markers) out << m.t_us << ',' << m.code << '\n';
    if (!out) throw DataError("write failed: " + path);
}

void write_intent_csv(const std::string& path, const std::vector<IntentRow>& rows) {
    auto out = open_output(path);
    out << kIntentHeader << '\n';
    for (const auto& r : rows) {
        out << r.epoch_idx << ',' << r.attended_led << ',' << to_string(r.command) << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

void write_decision_csv(const std::string& path, const std::vector<DecisionRow>& rows) {
    auto out = open_output(path);
    out << kDecisionHeader << '\n';
    for (const auto& r : rows) {
        out << r.epoch_idx << ',' << format_value(r.decision.ssvep_winner_hz) << ','
            << (r.decision.p300_winner ? std::string(1, *r.decision.p300_winner) : std::string("-"))
            << ',' << (r.decision.agreement ? '1' : '0') << ',' << to_string(r.decision.command)
            << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace bci
