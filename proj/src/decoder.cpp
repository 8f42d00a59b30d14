#include "bci/decoder.hpp"

#include <algorithm>
#include <string>

namespace bci {

Decision decide(const SsvepFeature& features, std::optional<char> p300_winner,
                const StimulusConfig& config) {
    for (const auto& led : config.leds) {
        const bool covered =
            std::any_of(features.bands.begin(), features.bands.end(),
                        [&](const SsvepBandPower& b) { return b.frequency_hz == led.frequency_hz; });
        if (!covered) {
            throw DataError("features missing configured frequency " +
                            std::to_string(led.frequency_hz) + " Hz");
        }
    }
    if (p300_winner && config.find_marker(*p300_winner) == nullptr) {
        throw DataError(std::string("P300 winner '") + *p300_winner +
                        "' is not a configured marker");
    }

    const SsvepWinner winner = ssvep_argmax(features);
    const LedEntry* led = config.find_frequency(winner.frequency_hz);
    if (led == nullptr) {
        throw DataError("SSVEP winner frequency " + std::to_string(winner.frequency_hz) +
                        " Hz is not configured");
    }

    Decision d;
    d.ssvep_winner_hz = winner.frequency_hz;
    d.p300_winner = p300_winner;
    d.agreement = p300_winner.has_value() && *p300_winner == led->marker;
    d.command = d.agreement ? led->command : Command::NoDecision;
    d.decided_at_us = features.window_end_us;
    return d;
}

Command map_to_command(double frequency_hz, const StimulusConfig& config) {
    const LedEntry* led = config.find_frequency(frequency_hz);
    if (led == nullptr) {
        throw ConfigError("unknown frequency " + std::to_string(frequency_hz) + " Hz");
    }
    return led->command;
}

FeedbackEvent make_feedback(const Decision& decision) {
    FeedbackEvent f;
    f.t_us = decision.decided_at_us;
    if (decision.agreement) {
        f.kind = FeedbackEvent::Kind::Success;
        f.pulses = 1;
        f.inter_pulse_gap_ms = 0.0;
    } else {
        f.kind = FeedbackEvent::Kind::Failure;
        f.pulses = 2;
        f.inter_pulse_gap_ms = 100.0;
    }
    return f;
}

bool LineProtocolSink::send(const CommandMessage& message) {
    (*out_) << message.sequence_number << ',' << to_string(message.command) << '\n';
    return static_cast<bool>(*out_);
}

DispatchResult Dispatcher::dispatch(const Decision& decision) {
    DispatchResult result;
    result.feedback = make_feedback(decision);
    if (!decision.agreement) return result;

    CommandMessage msg;
    msg.command = decision.command;
    msg.sequence_number = next_sequence_++;
    msg.issued_at_us = decision.decided_at_us;
    const bool delivered = sink_->send(msg);
    result.message = msg;
    if (!delivered) {
        transport_errors_.push_back("command " + std::to_string(msg.sequence_number) + " (" +
                                    to_string(msg.command) + ") was not acknowledged");
        result.feedback.kind = FeedbackEvent::Kind::Failure;
        result.feedback.pulses = 2;
        result.feedback.inter_pulse_gap_ms = 100.0;
    }
    return result;
}

void EpochFuser::submit_features(std::size_t epoch_index, SsvepFeature features) {
    pending_[epoch_index].features = std::move(features);
}

void EpochFuser::submit_p300(std::size_t epoch_index, std::optional<char> winner) {
    pending_[epoch_index].p300 = winner;
}

std::vector<std::pair<std::size_t, Decision>> EpochFuser::drain() {
    std::vector<std::pair<std::size_t, Decision>> out;
    for (;;) {
        auto it = pending_.find(next_to_emit_);
        if (it == pending_.end() || !it->second.features || !it->second.p300) break;
        out.emplace_back(next_to_emit_,
                         decide(*it->second.features, *it->second.p300, config_));
        pending_.erase(it);
        ++next_to_emit_;
    }
    return out;
}

}  // namespace bci
