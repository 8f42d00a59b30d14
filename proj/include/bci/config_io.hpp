#pragma once

#include <string>

#include "bci/types.hpp"

namespace bci {

// Key-value config format, one `key = value` per line, `#` comments.
// Recognized keys: sample_rate_hz, epoch_ms, p300_window_start_ms,
// p300_window_end_ms, and led0..led3 as `frequency_hz,marker,command`.
// Unlisted keys keep their defaults; unknown keys are errors.
StimulusConfig load_stimulus_config(const std::string& path);

// Applies one `key=value` override on top of an existing config.
void apply_config_override(StimulusConfig& config, const std::string& key,
                           const std::string& value);

}  // namespace bci
