#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bci/spectral.hpp"
#include "bci/types.hpp"

namespace bci {

struct FeedbackEvent {
    enum class Kind { Success, Failure };

    Kind kind{Kind::Failure};
    int pulses{2};
    double pulse_frequency_hz{1000.0};
    double pulse_duration_ms{200.0};
    double inter_pulse_gap_ms{100.0};  // meaningful for Failure only
    std::int64_t t_us{0};
};

struct CommandMessage {
    Command command{Command::NoDecision};
    std::uint64_t sequence_number{0};
    std::int64_t issued_at_us{0};
};

// Agreement gating: the SSVEP winner's configured marker must match the P300
// winner, otherwise the epoch yields NoDecision. Throws DataError when the
// P300 winner is not a configured marker code.
Decision decide(const SsvepFeature& features, std::optional<char> p300_winner,
                const StimulusConfig& config);

// Table lookup; throws ConfigError for an unconfigured frequency.
Command map_to_command(double frequency_hz, const StimulusConfig& config);

FeedbackEvent make_feedback(const Decision& decision);

class CommandSink {
public:
    virtual ~CommandSink() = default;
    // False signals an unreachable transport.
    virtual bool send(const CommandMessage& message) = 0;
};

class RecordingSink : public CommandSink {
public:
    bool send(const CommandMessage& message) override {
        messages.push_back(message);
        return true;
    }

    std::vector<CommandMessage> messages;
};

// Emits `SEQ,COMMAND\n` per message.
class LineProtocolSink : public CommandSink {
public:
    explicit LineProtocolSink(std::ostream& out) : out_(&out) {}
    bool send(const CommandMessage& message) override;

private:
    std::ostream* out_;
};

struct DispatchResult {
    std::optional<CommandMessage> message;
    FeedbackEvent feedback;
};

// Sends agreed commands to the sink (acknowledged before feedback) and turns
// every processed epoch into exactly one feedback event.
class Dispatcher {
public:
    explicit Dispatcher(CommandSink& sink) : sink_(&sink) {}

    DispatchResult dispatch(const Decision& decision);

    const std::vector<std::string>& transport_errors() const { return transport_errors_; }

private:
    CommandSink* sink_;
    std::uint64_t next_sequence_{1};
    std::vector<std::string> transport_errors_;
};

// Pairs the two evidence streams by epoch index, tolerating either side
// arriving first, and releases decisions strictly in epoch order.
class EpochFuser {
public:
    explicit EpochFuser(StimulusConfig config) : config_(std::move(config)) {}

    void submit_features(std::size_t epoch_index, SsvepFeature features);
    void submit_p300(std::size_t epoch_index, std::optional<char> winner);

    // Decisions for every epoch, starting at the first not yet emitted, whose
    // both inputs have arrived.
    std::vector<std::pair<std::size_t, Decision>> drain();

private:
    struct Pending {
        std::optional<SsvepFeature> features;
        std::optional<std::optional<char>> p300;
    };

    StimulusConfig config_;
    std::map<std::size_t, Pending> pending_;
    std::size_t next_to_emit_{0};
};

}  // namespace bci
