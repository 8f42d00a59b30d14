#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bci/config_io.hpp"
#include "bci/csv_io.hpp"
#include "bci/decoder.hpp"
#include "bci/erp.hpp"
#include "bci/eval.hpp"
#include "bci/filters.hpp"
#include "bci/kernels.hpp"
#include "bci/manifest.hpp"
#include "bci/pipeline.hpp"
#include "bci/rng.hpp"
#include "bci/spectral.hpp"
#include "bci/stimulus.hpp"
#include "bci/synth.hpp"
#include "bci/types.hpp"

namespace {

namespace fs = std::filesystem;
using namespace bci;

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string format_coeff(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_fixed(double v, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

fs::path prepare_outdir(const std::string& outdir) {
    fs::path dir(outdir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + outdir);
    return dir;
}

RunManifest base_manifest(const std::string& subcommand, const std::vector<std::string>& args) {
    RunManifest m;
    m.subcommand = subcommand;
    m.args = args;
    m.kernels = active_kernels().name;
    m.rng_algorithm = kRngAlgorithm;
    return m;
}

StimulusConfig load_config_opt(const std::string& config_path) {
    if (config_path.empty()) return StimulusConfig{};
    return load_stimulus_config(config_path);
}

// ---- filter-design ---------------------------------------------------------

struct FilterDesignArgs {
    std::string kind;
    double lo{0.0}, hi{0.0}, cutoff{0.0}, freq{0.0};
    double q{30.0};
    int order{4};
    double fs{0.0};
    std::string outdir{"out"};
};

int cmd_filter_design(const FilterDesignArgs& a, const std::vector<std::string>& raw_args) {
    FilterDesign design;
    if (a.kind == "bandpass") {
        if (a.lo <= 0.0 || a.hi <= 0.0) throw ConfigError("bandpass needs --lo and --hi");
        design = design_bandpass(a.lo, a.hi, a.order, a.fs);
    } else if (a.kind == "lowpass") {
        if (a.cutoff <= 0.0) throw ConfigError("lowpass needs --cutoff");
        design = design_lowpass(a.cutoff, a.order, a.fs);
    } else if (a.kind == "notch") {
        if (a.freq <= 0.0) throw ConfigError("notch needs --freq");
        design = design_notch(a.freq, a.q, a.fs);
    } else {
        throw ConfigError("unknown filter kind '" + a.kind +
                          "' (expected bandpass, lowpass, or notch)");
    }

    const fs::path dir = prepare_outdir(a.outdir);
    const fs::path coeff_path = dir / (a.kind + "_coefficients.csv");
    const fs::path resp_path = dir / (a.kind + "_response.csv");

    {
        auto out = open_out(coeff_path);
        out << "section,b0,b1,b2,a1,a2\n";
        for (std::size_t s = 0; s < design.sections.size(); ++s) {
            const auto& c = design.sections[s];
            out << s << ',' << format_coeff(c.b0) << ',' << format_coeff(c.b1) << ','
                << format_coeff(c.b2) << ',' << format_coeff(c.a1) << ','
                << format_coeff(c.a2) << '\n';
        }
    }
    {
        auto out = open_out(resp_path);
        out << "frequency_hz,magnitude_db,phase_rad\n";
        const long steps = std::lround(a.fs / 2.0 / 0.1);
        for (long i = 0; i <= steps; ++i) {
            const double f = 0.1 * static_cast<double>(i);
            const auto h = frequency_response(design, f);
            out << format_g(f) << ',' << format_g(20.0 * std::log10(std::abs(h))) << ','
                << format_g(std::arg(h)) << '\n';
        }
    }

    RunManifest m = base_manifest("filter-design", raw_args);
    m.outputs = {coeff_path.string(), resp_path.string()};
    m.notes = {design.description, is_stable(design) ? "stable" : "UNSTABLE"};
    write_manifest((dir / (a.kind + "_manifest.json")).string(), m);

    std::cout << design.description << ": " << design.sections.size() << " sections, "
              << (is_stable(design) ? "stable" : "UNSTABLE") << "\n";
    std::cout << "wrote " << coeff_path.string() << " and " << resp_path.string() << "\n";
    return 0;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    int epochs{0};
    std::uint64_t seed{1};
    std::string config_path;
    std::string outdir{"out"};
    std::string attended{"round-robin"};
    double ssvep_uv{2.0};
    double harmonic{0.3};
    double p300_uv{5.0};
    double p300_latency_ms{350.0};
    double p300_width_ms{200.0};
    double noise_uv{2.0};
    double line_uv{5.0};
    double flash_ms{100.0};
    double jitter_ms{100.0};
    double lead_in_ms{200.0};
    double tail_ms{600.0};
};

std::vector<int> parse_attended(const std::string& text, const StimulusConfig& config,
                                std::size_t epochs) {
    std::vector<int> ids;
    if (text == "round-robin") {
        for (std::size_t e = 0; e < epochs; ++e) {
            ids.push_back(config.leds[e % config.leds.size()].led_id);
        }
        return ids;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find(',', start);
        const std::string tok =
            pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
        if (tok.empty()) throw ConfigError("bad --attended list: empty entry");
        char* end = nullptr;
        const long v = std::strtol(tok.c_str(), &end, 10);
        if (end != tok.c_str() + tok.size()) {
            throw ConfigError("bad --attended entry '" + tok + "'");
        }
        ids.push_back(static_cast<int>(v));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (ids.size() != epochs) {
        throw ConfigError("--attended lists " + std::to_string(ids.size()) +
                          " epochs but --epochs is " + std::to_string(epochs));
    }
    return ids;
}

int cmd_simulate(const SimulateArgs& a, const std::vector<std::string>& raw_args) {
    if (a.epochs < 1) throw ConfigError("--epochs must be >= 1");
    const StimulusConfig config = load_config_opt(a.config_path);
    const auto errors = validate_config(config);
    if (!errors.empty()) throw ConfigError("invalid config: " + errors.front());

    SynthConfig synth;
    synth.attended_led_ids =
        parse_attended(a.attended, config, static_cast<std::size_t>(a.epochs));
    synth.ssvep_amplitude_uv = a.ssvep_uv;
    synth.harmonic_ratio = a.harmonic;
    synth.p300_amplitude_uv = a.p300_uv;
    synth.p300_peak_latency_ms = a.p300_latency_ms;
    synth.p300_width_ms = a.p300_width_ms;
    synth.noise_sigma_uv = a.noise_uv;
    synth.line_noise_amplitude_uv = a.line_uv;
    synth.lead_in_ms = a.lead_in_ms;
    synth.tail_ms = a.tail_ms;
    synth.rng_seed = mix_seed(a.seed, 0xee9);

    const auto schedules = schedule_flashes(config, static_cast<std::size_t>(a.epochs),
                                            mix_seed(a.seed, 0xf1a5), a.flash_ms, a.jitter_ms);
    const SynthOutput out = synthesize_eeg(schedules, synth, config);

    const fs::path dir = prepare_outdir(a.outdir);
    const fs::path rec_path = dir / "recording.csv";
    const fs::path marker_path = dir / "markers.csv";
    const fs::path intent_path = dir / "intent.csv";

    write_recording_csv(rec_path.string(), out.frames);
    write_marker_csv(marker_path.string(), out.markers);
    std::vector<IntentRow> intents;
    for (std::size_t e = 0; e < out.intents.size(); ++e) {
        intents.push_back({e, synth.attended_led_ids[e], out.intents[e]});
    }
    write_intent_csv(intent_path.string(), intents);

    RunManifest m = base_manifest("simulate", raw_args);
    m.seed = a.seed;
    m.seed_used = true;
    m.config_path = a.config_path;
    m.outputs = {rec_path.string(), marker_path.string(), intent_path.string()};
    for (const auto& led : config.leds) {
        const auto check = verify_frequency(schedule_ssvep(
            led.frequency_hz, static_cast<double>(config.epoch_ms) / 1000.0, led.led_id));
        m.notes.push_back("led " + std::to_string(led.led_id) + ": target " +
                          format_g(led.frequency_hz) + " Hz, achieved " +
                          format_g(check.measured_hz) + " Hz, deviation " +
                          format_g(check.deviation_percent) + "%");
    }
    write_manifest((dir / "simulate_manifest.json").string(), m);

    std::cout << "wrote " << out.frames.size() << " frames, " << out.markers.size()
              << " markers, " << intents.size() << " intents to " << dir.string() << "\n";
    return 0;
}

// ---- decode ----------------------------------------------------------------

struct DecodeArgs {
    std::string recording;
    std::string markers;
    std::string config_path;
    std::string outdir{"out"};
    bool no_p300_gate{false};
    bool no_notch{false};
    std::string p300_channel{"pz"};
    std::string p300_mode{"absolute"};
    double p300_threshold_uv{2.0};
    double p300_relative_k{2.0};
};

int cmd_decode(const DecodeArgs& a, const std::vector<std::string>& raw_args) {
    DecodeParams params;
    params.config = load_config_opt(a.config_path);
    params.notch_enabled = !a.no_notch;
    params.p300_gate = !a.no_p300_gate;
    params.p300_threshold_uv = a.p300_threshold_uv;
    params.p300_relative_k = a.p300_relative_k;
    if (a.p300_channel == "pz") {
        params.p300_channel = P300ChannelMode::Pz;
    } else if (a.p300_channel == "mean") {
        params.p300_channel = P300ChannelMode::MeanFzCzPz;
    } else {
        throw ConfigError("--p300-channel must be 'pz' or 'mean'");
    }
    if (a.p300_mode == "absolute") {
        params.p300_threshold_mode = P300ThresholdMode::Absolute;
    } else if (a.p300_mode == "relative") {
        params.p300_threshold_mode = P300ThresholdMode::RelativeBaselineSd;
    } else {
        throw ConfigError("--p300-mode must be 'absolute' or 'relative'");
    }

    StreamingDecoder decoder(params);
    for (const auto& marker : read_marker_csv(a.markers)) decoder.push_marker(marker);

    std::vector<DecisionRow> rows;
    std::vector<std::string> notes;
    auto collect = [&](std::vector<EpochOutcome>&& outcomes) {
        for (auto& o : outcomes) {
            rows.push_back({o.epoch_index, o.decision});
            if (!o.note.empty()) {
                notes.push_back("epoch " + std::to_string(o.epoch_index) + ": " + o.note);
            }
        }
    };

    RecordingReader reader(a.recording);
    while (auto frame = reader.next()) {
        decoder.push_frame(*frame);
        collect(decoder.drain());
    }
    decoder.finish();
    collect(decoder.drain());

    const fs::path dir = prepare_outdir(a.outdir);
    const fs::path decisions_path = dir / "decisions.csv";
    write_decision_csv(decisions_path.string(), rows);

    for (const auto& n : notes) std::cerr << "decode: " << n << "\n";

    RunManifest m = base_manifest("decode", raw_args);
    m.config_path = a.config_path;
    m.inputs = {a.recording, a.markers};
    m.outputs = {decisions_path.string()};
    m.notes = notes;
    write_manifest((dir / "decode_manifest.json").string(), m);

    std::cout << "wrote " << rows.size() << " decisions to " << decisions_path.string() << "\n";
    return 0;
}

// ---- psd -------------------------------------------------------------------

struct PsdArgs {
    std::string recording;
    std::string config_path;
    std::string outdir{"out"};
    std::size_t segment{500};
    double overlap{0.5};
    bool no_notch{false};
    bool raw{false};
    double from_ms{-1.0};
    double to_ms{-1.0};
};

int cmd_psd(const PsdArgs& a, const std::vector<std::string>& raw_args) {
    const StimulusConfig config = load_config_opt(a.config_path);
    const auto frames = read_recording_csv(a.recording);
    if (frames.empty()) throw DataError("empty recording: " + a.recording);

    std::optional<FilterState> notch;
    if (!a.no_notch && !a.raw) {
        notch.emplace(design_notch(50.0, 30.0, config.sample_rate_hz), kNumChannels);
    }
    std::optional<FilterState> bandpass;
    if (!a.raw) {
        bandpass.emplace(design_bandpass(kPassbandLowHz, kPassbandHighHz, 4,
                                         config.sample_rate_hz),
                         1);
    }

    std::vector<double> signal;
    signal.reserve(frames.size());
    for (const auto& frame : frames) {
        if (a.from_ms >= 0.0 && frame.t_us < std::llround(a.from_ms * 1000.0)) continue;
        if (a.to_ms >= 0.0 && frame.t_us >= std::llround(a.to_ms * 1000.0)) continue;
        std::array<double, kNumChannels> ch = frame.uv;
        if (notch) notch->process(ch.data(), ch.data());
        double occ = (ch[3] + ch[4] + ch[5]) / 3.0;
        if (bandpass) bandpass->process(&occ, &occ);
        signal.push_back(occ);
    }

    const auto psd = welch_psd(signal, config.sample_rate_hz, a.segment, a.overlap);

    const fs::path dir = prepare_outdir(a.outdir);
    const fs::path psd_path = dir / "psd.csv";
    {
        auto out = open_out(psd_path);
        out << "frequency_hz,power_uv2_per_hz\n";
        for (std::size_t k = 0; k < psd.power.size(); ++k) {
            out << format_g(psd.bin_frequencies_hz[k]) << ',' << format_g(psd.power[k]) << '\n';
        }
    }

    RunManifest m = base_manifest("psd", raw_args);
    m.config_path = a.config_path;
    m.inputs = {a.recording};
    m.outputs = {psd_path.string()};
    write_manifest((dir / "psd_manifest.json").string(), m);

    std::cout << "wrote " << psd.power.size() << " bins to " << psd_path.string() << "\n";
    return 0;
}

// ---- erp -------------------------------------------------------------------

struct ErpArgs {
    std::string recording;
    std::string markers;
    std::string config_path;
    std::string outdir{"out"};
    bool no_notch{false};
    std::string p300_channel{"pz"};
};

int cmd_erp(const ErpArgs& a, const std::vector<std::string>& raw_args) {
    const StimulusConfig config = load_config_opt(a.config_path);
    const auto frames = read_recording_csv(a.recording);
    const auto markers = read_marker_csv(a.markers);
    if (frames.empty()) throw DataError("empty recording: " + a.recording);

    std::optional<FilterState> notch;
    if (!a.no_notch) notch.emplace(design_notch(50.0, 30.0, config.sample_rate_hz), kNumChannels);
    FilterState lowpass(design_lowpass(15.0, 4, config.sample_rate_hz), 1);

    std::vector<std::int64_t> times;
    std::vector<double> values;
    times.reserve(frames.size());
    values.reserve(frames.size());
    for (const auto& frame : frames) {
        std::array<double, kNumChannels> ch = frame.uv;
        if (notch) notch->process(ch.data(), ch.data());
        double v = a.p300_channel == "mean" ? (ch[0] + ch[1] + ch[2]) / 3.0 : ch[2];
        lowpass.process(&v, &v);
        times.push_back(frame.t_us);
        values.push_back(v);
    }

    // Average baseline-corrected epochs per marker code, configured order.
    std::vector<char> codes;
    for (const auto& led : config.leds) codes.push_back(led.marker);
    std::vector<std::vector<double>> sums(codes.size());
    std::vector<std::size_t> counts(codes.size(), 0);
    std::size_t skipped = 0;
    std::size_t epoch_len = 0;
    for (const auto& marker : markers) {
        const auto idx = static_cast<std::size_t>(
            std::find(codes.begin(), codes.end(), marker.code) - codes.begin());
        if (idx == codes.size()) throw DataError(std::string("marker '") + marker.code +
                                                 "' is not configured");
        try {
            const Epoch epoch = baseline_correct(
                extract_epoch(times, values, marker, config.sample_rate_hz));
            epoch_len = epoch.samples.size();
            if (sums[idx].empty()) sums[idx].assign(epoch.samples.size(), 0.0);
            for (std::size_t i = 0; i < epoch.samples.size(); ++i) {
                sums[idx][i] += epoch.samples[i];
            }
            ++counts[idx];
        } catch (const DataError&) {
            ++skipped;
        }
    }
    if (epoch_len == 0) throw DataError("no complete epochs in " + a.recording);

    const fs::path dir = prepare_outdir(a.outdir);
    const fs::path erp_path = dir / "erp.csv";
    {
        auto out = open_out(erp_path);
        out << "time_ms";
        for (char c : codes) out << ',' << c;
        out << '\n';
        Epoch probe;
        probe.sample_rate_hz = config.sample_rate_hz;
        probe.samples.assign(epoch_len, 0.0);
        for (std::size_t i = 0; i < epoch_len; ++i) {
            out << format_g(probe.time_ms_at(i));
            for (std::size_t c = 0; c < codes.size(); ++c) {
                const double v = counts[c] == 0
                                     ? 0.0
                                     : sums[c][i] / static_cast<double>(counts[c]);
                out << ',' << format_g(v);
            }
            out << '\n';
        }
    }

    RunManifest m = base_manifest("erp", raw_args);
    m.config_path = a.config_path;
    m.inputs = {a.recording, a.markers};
    m.outputs = {erp_path.string()};
    if (skipped > 0) m.notes.push_back(std::to_string(skipped) + " truncated epochs skipped");
    write_manifest((dir / "erp_manifest.json").string(), m);

    std::cout << "wrote averaged waveforms over ";
    for (std::size_t c = 0; c < codes.size(); ++c) {
        std::cout << (c ? "/" : "") << counts[c];
    }
    std::cout << " epochs to " << erp_path.string() << "\n";
    return 0;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateArgs {
    std::string decisions;
    std::string intents;
    std::string fixture;
    std::vector<double> itr;
    std::string outdir;
};

void print_report(const AccuracyReport& report) {
    auto line = [](const RateEntry& e) {
        std::cout << "  " << e.key << ": " << e.successes << "/" << e.attempts << " = "
                  << e.percent_text << "%\n";
    };
    std::cout << "accuracy\n";
    line(report.overall);
    std::cout << "per direction\n";
    for (const auto& e : report.per_direction) line(e);
    std::cout << "per session\n";
    for (const auto& e : report.per_session) line(e);
    if (report.per_participant.size() > 1) {
        std::cout << "per participant\n";
        for (const auto& e : report.per_participant) line(e);
    }
}

void write_report_csv(const fs::path& path, const AccuracyReport& report) {
    auto out = open_out(path);
    out << "stratum,key,successes,attempts,percent\n";
    auto row = [&](const char* stratum, const RateEntry& e) {
        out << stratum << ',' << e.key << ',' << e.successes << ',' << e.attempts << ','
            << e.percent_text << '\n';
    };
    row("overall", report.overall);
    for (const auto& e : report.per_direction) row("direction", e);
    for (const auto& e : report.per_session) row("session", e);
    for (const auto& e : report.per_participant) row("participant", e);
}

int cmd_evaluate(const EvaluateArgs& a, const std::vector<std::string>& raw_args) {
    if (!a.itr.empty()) {
        if (a.itr.size() != 3) throw ConfigError("--itr needs P N T");
        const double p = a.itr[0];
        const int n = static_cast<int>(a.itr[1]);
        const double t = a.itr[2];
        const double bits = itr_bits_per_selection(p, n);
        const double bpm = itr_bpm(p, n, t);
        std::cout << "ITR: " << format_fixed(bits, 4) << " bits/selection, "
                  << format_fixed(bpm, 2) << " bpm (P=" << format_g(p) << ", N=" << n
                  << ", T=" << format_g(t) << " s)\n";
        return 0;
    }

    std::vector<TrialRecord> records;
    std::vector<std::string> inputs;
    std::string note;
    if (!a.fixture.empty()) {
        if (a.fixture != "table2") {
            throw ConfigError("unknown fixture '" + a.fixture + "' (available: table2)");
        }
        records = table2_fixture();
        note = table2_discrepancy_note();
    } else {
        if (a.decisions.empty() || a.intents.empty()) {
            throw ConfigError("evaluate needs --decisions and --intents, or --fixture, or --itr");
        }
        const auto decision_rows = read_decision_csv(a.decisions);
        const auto intent_rows = read_intent_csv(a.intents);
        if (decision_rows.size() != intent_rows.size()) {
            throw DataError("decision log has " + std::to_string(decision_rows.size()) +
                            " rows but intent file has " + std::to_string(intent_rows.size()));
        }
        std::vector<Decision> decisions;
        std::vector<Command> intents;
        for (std::size_t i = 0; i < decision_rows.size(); ++i) {
            if (decision_rows[i].epoch_idx != intent_rows[i].epoch_idx) {
                throw DataError("epoch index mismatch at row " + std::to_string(i + 2));
            }
            decisions.push_back(decision_rows[i].decision);
            intents.push_back(intent_rows[i].command);
        }
        records = score(decisions, intents);
        inputs = {a.decisions, a.intents};
    }

    const AccuracyReport report = aggregate(records);
    print_report(report);
    if (!note.empty()) std::cout << note << "\n";

    if (!a.outdir.empty()) {
        const fs::path dir = prepare_outdir(a.outdir);
        const fs::path report_path = dir / "accuracy.csv";
        write_report_csv(report_path, report);
        RunManifest m = base_manifest("evaluate", raw_args);
        m.inputs = inputs;
        m.outputs = {report_path.string()};
        if (!note.empty()) m.notes.push_back(note);
        write_manifest((dir / "evaluate_manifest.json").string(), m);
        std::cout << "wrote " << report_path.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid SSVEP+P300 brain-computer-interface toolkit"};
    app.require_subcommand(1);
    std::vector<std::string> raw_args(argv + 1, argv + argc);

    FilterDesignArgs fd;
    auto* fd_cmd = app.add_subcommand("filter-design", "Design a filter and dump its response");
    fd_cmd->add_option("kind", fd.kind, "bandpass, lowpass, or notch")->required();
    fd_cmd->add_option("--lo", fd.lo, "bandpass low edge, Hz");
    fd_cmd->add_option("--hi", fd.hi, "bandpass high edge, Hz");
    fd_cmd->add_option("--cutoff", fd.cutoff, "lowpass cutoff, Hz");
    fd_cmd->add_option("--freq", fd.freq, "notch center, Hz");
    fd_cmd->add_option("--q", fd.q, "notch quality factor");
    fd_cmd->add_option("--order", fd.order, "filter order");
    fd_cmd->add_option("--fs", fd.fs, "sample rate, Hz")->required();
    fd_cmd->add_option("--outdir", fd.outdir, "output directory");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic recording");
    sim_cmd->add_option("--epochs", sim.epochs, "stimulation epoch count")->required();
    sim_cmd->add_option("--seed", sim.seed, "RNG seed");
    sim_cmd->add_option("--config", sim.config_path, "stimulus config file");
    sim_cmd->add_option("--outdir", sim.outdir, "output directory");
    sim_cmd->add_option("--attended", sim.attended,
                        "comma-separated LED ids per epoch, or 'round-robin'");
    sim_cmd->add_option("--ssvep-uv", sim.ssvep_uv, "SSVEP amplitude, µV");
    sim_cmd->add_option("--harmonic", sim.harmonic, "second-harmonic ratio");
    sim_cmd->add_option("--p300-uv", sim.p300_uv, "P300 amplitude, µV");
    sim_cmd->add_option("--p300-latency-ms", sim.p300_latency_ms, "P300 peak latency, ms");
    sim_cmd->add_option("--p300-width-ms", sim.p300_width_ms, "P300 bump width, ms");
    sim_cmd->add_option("--noise-uv", sim.noise_uv, "Gaussian noise sigma, µV");
    sim_cmd->add_option("--line-uv", sim.line_uv, "50 Hz line amplitude, µV");
    sim_cmd->add_option("--flash-ms", sim.flash_ms, "flash duration, ms");
    sim_cmd->add_option("--jitter-ms", sim.jitter_ms, "flash onset jitter bound, ms");
    sim_cmd->add_option("--lead-in-ms", sim.lead_in_ms, "recording lead-in, ms");
    sim_cmd->add_option("--tail-ms", sim.tail_ms, "recording tail, ms");

    DecodeArgs dec;
    auto* dec_cmd = app.add_subcommand("decode", "Decode a recording into commands");
    dec_cmd->add_option("--recording", dec.recording, "recording CSV")->required();
    dec_cmd->add_option("--markers", dec.markers, "marker CSV")->required();
    dec_cmd->add_option("--config", dec.config_path, "stimulus config file");
    dec_cmd->add_option("--outdir", dec.outdir, "output directory");
    dec_cmd->add_flag("--no-p300-gate", dec.no_p300_gate, "SSVEP-only diagnostic mode");
    dec_cmd->add_flag("--no-notch", dec.no_notch, "disable the 50 Hz notch");
    dec_cmd->add_option("--p300-channel", dec.p300_channel, "pz or mean");
    dec_cmd->add_option("--p300-mode", dec.p300_mode, "absolute or relative");
    dec_cmd->add_option("--p300-threshold-uv", dec.p300_threshold_uv,
                        "absolute validity threshold, µV");
    dec_cmd->add_option("--p300-relative-k", dec.p300_relative_k,
                        "relative mode: threshold = k * baseline SD");

    PsdArgs psd;
    auto* psd_cmd = app.add_subcommand("psd", "Welch PSD of the SSVEP branch");
    psd_cmd->add_option("--recording", psd.recording, "recording CSV")->required();
    psd_cmd->add_option("--config", psd.config_path, "stimulus config file");
    psd_cmd->add_option("--outdir", psd.outdir, "output directory");
    psd_cmd->add_option("--segment", psd.segment, "Welch segment length, samples");
    psd_cmd->add_option("--overlap", psd.overlap, "Welch overlap fraction");
    psd_cmd->add_flag("--no-notch", psd.no_notch, "disable the 50 Hz notch");
    psd_cmd->add_flag("--raw", psd.raw, "skip all filtering");
    psd_cmd->add_option("--from-ms", psd.from_ms, "window start, ms");
    psd_cmd->add_option("--to-ms", psd.to_ms, "window end, ms (exclusive)");

    ErpArgs erp;
    auto* erp_cmd = app.add_subcommand("erp", "Average marker-locked waveforms");
    erp_cmd->add_option("--recording", erp.recording, "recording CSV")->required();
    erp_cmd->add_option("--markers", erp.markers, "marker CSV")->required();
    erp_cmd->add_option("--config", erp.config_path, "stimulus config file");
    erp_cmd->add_option("--outdir", erp.outdir, "output directory");
    erp_cmd->add_flag("--no-notch", erp.no_notch, "disable the 50 Hz notch");
    erp_cmd->add_option("--p300-channel", erp.p300_channel, "pz or mean");

    EvaluateArgs ev;
    auto* ev_cmd = app.add_subcommand("evaluate", "Score decisions against intents");
    ev_cmd->add_option("--decisions", ev.decisions, "decision log CSV");
    ev_cmd->add_option("--intents", ev.intents, "intent CSV");
    ev_cmd->add_option("--fixture", ev.fixture, "bundled dataset name (table2)");
    ev_cmd->add_option("--itr", ev.itr, "P N T: accuracy, target count, selection time s")
        ->expected(3);
    ev_cmd->add_option("--outdir", ev.outdir, "output directory (optional)");

    try {
        app.parse(argc, argv);
        if (fd_cmd->parsed()) return cmd_filter_design(fd, raw_args);
        if (sim_cmd->parsed()) return cmd_simulate(sim, raw_args);
        if (dec_cmd->parsed()) return cmd_decode(dec, raw_args);
        if (psd_cmd->parsed()) return cmd_psd(psd, raw_args);
        if (erp_cmd->parsed()) return cmd_erp(erp, raw_args);
        if (ev_cmd->parsed()) return cmd_evaluate(ev, raw_args);
        throw ConfigError("no subcommand given");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
