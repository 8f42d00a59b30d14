#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bci {

inline constexpr const char* kToolVersion = "1.0.0";

// Reproducibility record written next to every file-producing run. Re-running
// with the same fields (timestamp aside) yields bit-identical outputs.
struct RunManifest {
    std::string subcommand;
    std::vector<std::string> args;
    std::string config_path;  // empty when defaults were used
    std::uint64_t seed{0};
    bool seed_used{false};
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;
    std::string kernels;
    std::string rng_algorithm;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace bci
