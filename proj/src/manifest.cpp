#include "bci/manifest.hpp"

#include <ctime>
#include <fstream>

#include <json.hpp>

#include "bci/types.hpp"

namespace bci {
namespace {

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void write_manifest(const std::string& path, const RunManifest& manifest) {
    nlohmann::json j;
    j["subcommand"] = manifest.subcommand;
    j["args"] = manifest.args;
    if (!manifest.config_path.empty()) j["config"] = manifest.config_path;
    if (manifest.seed_used) j["seed"] = manifest.seed;
    j["inputs"] = manifest.inputs;
    j["outputs"] = manifest.outputs;
    if (!manifest.notes.empty()) j["notes"] = manifest.notes;
    j["kernels"] = manifest.kernels;
    j["rng_algorithm"] = manifest.rng_algorithm;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = utc_now();

    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace bci
