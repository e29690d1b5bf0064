#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ssram/kernel.hpp"
#include "ssram/stimulus.hpp"
#include "ssram/vcd.hpp"

namespace ssram::cli {

namespace fs = std::filesystem;

SramConfig RunConfig::device_config() const {
    SramConfig c;
    c.words = words;
    c.data_bits = bits;
    c.clock_active_rising = !active_low;
    c.timing = timing;
    if (!t_cko_given) c.timing.clock_to_out = timing.access;

    if (bits > kMaxInitColumns) {
        throw ConfigError("--bits above " + std::to_string(kMaxInitColumns) + " is not supported");
    }
    for (std::size_t b = bits; b < init.size(); ++b) {
        if (init[b]) {
            throw ConfigError("--init-" + std::to_string(b) + " given but the device has only " +
                              std::to_string(bits) + " data bits");
        }
    }
    if (std::any_of(init.begin(), init.end(), [](const auto& v) { return v.has_value(); })) {
        c.validate(); // reject a bad geometry before sizing INIT vectors
        for (std::size_t b = 0; b < bits; ++b) {
            c.init.push_back(init[b] ? bv_from_text(*init[b], words) : BitVector(words, Bit::Zero));
        }
    }
    c.validate();
    return c;
}

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Parses and binds a stimulus file; reports errors as <path>:<line>: <msg>.
std::optional<std::pair<Stimulus, std::vector<Event>>> load(const RunConfig& cfg,
                                                            const SramConfig& device,
                                                            std::ostream& err) {
    auto text = read_file(cfg.stimulus_path);
    if (!text) {
        err << "error: cannot read stimulus file '" << cfg.stimulus_path << "'\n";
        return std::nullopt;
    }
    try {
        auto st = parse_stimulus(*text);
        auto events = bind_to_device(st, device);
        return std::make_pair(std::move(st), std::move(events));
    } catch (const StimulusError& e) {
        err << "error: " << cfg.stimulus_path;
        if (e.line()) err << ':' << e.line();
        err << ": " << e.message() << '\n';
    }
    return std::nullopt;
}

std::optional<SramConfig> device_or_error(const RunConfig& cfg, std::ostream& err) {
    try {
        return cfg.device_config();
    } catch (const std::exception& e) {
        err << "error: invalid device configuration: " << e.what() << '\n';
    }
    return std::nullopt;
}

// Display width of a UTF-8 string (counts code points).
std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pin_range(char pin, std::size_t width) {
    if (width == 1) return std::string(1, pin) + "0";
    return std::string(1, pin) + std::to_string(width - 1) + ":" + pin + "0";
}

} // namespace

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto device = device_or_error(cfg, err);
    if (!device) return kExitError;
    auto loaded = load(cfg, *device, err);
    if (!loaded) return kExitError;
    out << cfg.stimulus_path << ": ok (" << loaded->first.signals.size() << " signals, "
        << loaded->second.size() << " events, run " << loaded->first.run_until << "ps)\n";
    return kExitClean;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto device = device_or_error(cfg, err);
    if (!device) return kExitError;
    auto loaded = load(cfg, *device, err);
    if (!loaded) return kExitError;

    std::string vcd_path = cfg.vcd_path;
    if (vcd_path.empty()) vcd_path = fs::path(cfg.stimulus_path).replace_extension(".vcd").string();
    std::ofstream vcd(vcd_path, std::ios::binary | std::ios::trunc);
    if (!vcd) {
        err << "error: cannot write VCD file '" << vcd_path << "'\n";
        return kExitError;
    }

    VcdWriter sink(vcd, Simulator::waveform_signals(*device));
    Simulator sim(*device, &sink);
    for (auto& e : loaded->second) sim.schedule(std::move(e));
    auto report = sim.run(loaded->first.run_until);
    vcd.flush();
    if (!vcd) {
        err << "error: failed writing VCD file '" << vcd_path << "'\n";
        return kExitError;
    }

    if (cfg.report == ReportFormat::JsonLines) {
        write_json_lines_report(out, report);
    } else {
        write_text_report(out, report);
    }
    return report.violations.empty() ? kExitClean : kExitViolations;
}

std::string render_mode_table(const SramConfig& config) {
    const std::string a_pins = pin_range('A', config.addr_bits());
    const std::string d_pins = pin_range('D', config.data_bits);
    const std::string o_pins = pin_range('O', config.data_bits);

    // Applies `prev` then `next` to a fresh device and reports whether word 0
    // took the data inputs.
    auto writes = [&](Bit we, Bit prev, Bit next) {
        SramConfig probe = config;
        probe.init.clear();
        Sram dev(probe);
        BitVector addr(config.addr_bits(), Bit::Zero);
        BitVector data(config.data_bits, Bit::One);
        dev.apply(0, we, prev, addr, data);
        dev.apply(1, we, next, addr, data);
        return dev.peek(0) == data;
    };

    struct Row {
        Bit we;
        std::string clock;
        std::vector<std::pair<Bit, Bit>> probes;
    };
    const auto rise = std::pair{Bit::Zero, Bit::One};
    const auto fall = std::pair{Bit::One, Bit::Zero};
    const bool rising = config.clock_active_rising;
    const std::vector<Row> rows = {
        {Bit::Zero, "X", {{Bit::Zero, Bit::Zero}, rise, fall, {Bit::One, Bit::One}}},
        {Bit::One, "0", {{Bit::Zero, Bit::Zero}}},
        {Bit::One, "1", {{Bit::One, Bit::One}}},
        {Bit::One, rising ? "↑" : "↓", {rising ? rise : fall}},
        {Bit::One, rising ? "↓" : "↑", {rising ? fall : rise}},
    };

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"WE (mode)", "WCLK", d_pins, o_pins});
    for (const auto& r : rows) {
        bool any_write = std::any_of(r.probes.begin(), r.probes.end(),
                                     [&](auto p) { return writes(r.we, p.first, p.second); });
        std::string we = std::string(1, to_char(r.we)) + (any_write ? " (write)" : " (read)");
        cells.push_back({we, r.clock, any_write ? d_pins : "X", any_write ? d_pins : "Data"});
    }

    std::vector<std::size_t> widths(4, 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], display_width(row[c]));
    }
    std::ostringstream out;
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line += std::string(widths[c] - display_width(row[c]) + 2, ' ');
        }
        out << line << '\n';
    }
    out << "Data = word addressed by " << a_pins << '\n';
    return out.str();
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto device = device_or_error(cfg, err);
    if (!device) return kExitError;
    out << render_mode_table(*device);
    return kExitClean;
}

namespace {

void add_device_options(CLI::App& app, RunConfig& cfg) {
    app.add_option("--words", cfg.words, "Number of words (power of two)")->capture_default_str();
    app.add_option("--bits", cfg.bits, "Data bits per word")->capture_default_str();
    app.add_flag("--active-low", cfg.active_low, "Write on the falling WCLK edge");
    auto* init = app.add_option_group("");
    for (std::size_t n = 0; n < kMaxInitColumns; ++n) {
        char two[8];
        std::snprintf(two, sizeof two, "%02zu", n);
        std::string names = "--init-" + std::string(two);
        if (n < 10) names += ",--init-" + std::to_string(n);
        init->add_option_function<std::string>(names, [&cfg, n](const std::string& v) {
            cfg.init[n] = v;
        });
    }
    app.footer("  --init-<n> LITERAL         Initial contents of output-bit column n, one bit per word");
}

void add_timing_options(CLI::App& app, RunConfig& cfg) {
    app.add_option("--t-setup", cfg.timing.setup, "Setup time (ps)")->capture_default_str();
    app.add_option("--t-hold", cfg.timing.hold, "Hold time (ps)")->capture_default_str();
    app.add_option("--t-ac", cfg.timing.access, "Address-to-output access time (ps)")
        ->capture_default_str();
    app.add_option_function<SimTime>(
        "--t-cko", [&cfg](SimTime v) {
            cfg.timing.clock_to_out = v;
            cfg.t_cko_given = true;
        },
        "Clock-to-output delay (ps); defaults to --t-ac");
    app.add_option("--t-ibuf", cfg.timing.input_buffer, "Input buffer delay (ps)")
        ->capture_default_str();
    app.add_option("--t-obuf", cfg.timing.output_buffer, "Output buffer delay (ps)")
        ->capture_default_str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Timing-annotated synchronous SRAM simulator", "ssram"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Simulate a stimulus file, write VCD and a report");
    run->add_option("stimulus", cfg.stimulus_path, "Stimulus (.stim) file")->required();
    run->add_option("-o,--vcd", cfg.vcd_path, "VCD output path (default: <stimulus>.vcd)");
    add_device_options(*run, cfg);
    add_timing_options(*run, cfg);
    run->add_option("--report", cfg.report, "Report format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, ReportFormat>{{"text", ReportFormat::Text},
                                                {"json-lines", ReportFormat::JsonLines}}));

    auto* check = app.add_subcommand("check", "Parse and validate a stimulus file");
    check->add_option("stimulus", cfg.stimulus_path, "Stimulus (.stim) file")->required();
    add_device_options(*check, cfg);

    auto* table = app.add_subcommand("table", "Print the device operating-mode table");
    add_device_options(*table, cfg);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitClean;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitClean;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    if (run->parsed()) return cmd_run(cfg, out, err);
    if (check->parsed()) return cmd_check(cfg, out, err);
    return cmd_table(cfg, out, err);
}

} // namespace ssram::cli
