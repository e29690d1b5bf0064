#include "ssram/stimulus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace ssram {

StimulusError::StimulusError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line),
      message_(message) {}

namespace {
__extension__ using Wide = unsigned __int128;
} // namespace

SimTime ClockSpec::high_time() const {
    auto high = static_cast<Wide>(period) * duty_num / duty_den;
    return static_cast<SimTime>(high);
}

SimTime ClockSpec::first_phase() const {
    return start == Bit::One ? high_time() : period - high_time();
}

const SignalDecl* Stimulus::find(std::string_view name) const noexcept {
    for (const auto& d : signals) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::uint64_t parse_number(std::size_t line, const std::string& tok, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
        throw StimulusError(line, std::string("invalid ") + what + " '" + tok + "'");
    }
    return v;
}

bool valid_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

class Parser {
public:
    Stimulus parse(std::string_view text) {
        std::size_t lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto eol = text.find('\n', pos);
            auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                       : eol - pos);
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            statement(lineno, tokenize(line));
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
        }
        if (!run_line_) throw StimulusError(lineno, "missing 'run' directive");
        for (const auto& e : st_.events) {
            if (e.time > st_.run_until) {
                throw StimulusError(e.line, "event at " + std::to_string(e.time) +
                                                "ps is after run " +
                                                std::to_string(st_.run_until) + "ps");
            }
        }
        return std::move(st_);
    }

private:
    const SignalDecl& declared(std::size_t line, const std::string& name) {
        const auto* d = st_.find(name);
        if (!d) throw StimulusError(line, "unknown signal '" + name + "'");
        return *d;
    }

    void statement(std::size_t line, const std::vector<std::string>& t) {
        if (t.empty()) return;
        const auto& kw = t[0];
        if (kw == "signal") {
            if (t.size() != 3) throw StimulusError(line, "expected 'signal <name> <width>'");
            if (!valid_identifier(t[1])) throw StimulusError(line, "invalid signal name '" + t[1] + "'");
            if (st_.find(t[1])) throw StimulusError(line, "signal '" + t[1] + "' already declared");
            auto width = parse_number(line, t[2], "width");
            if (width == 0) throw StimulusError(line, "width must be positive");
            st_.signals.push_back({t[1], static_cast<std::size_t>(width), line});
        } else if (kw == "clock") {
            clock(line, t);
        } else if (kw == "at") {
            if (t.size() != 4) throw StimulusError(line, "expected 'at <ps> <name> <literal>'");
            auto time = parse_number(line, t[1], "time");
            const auto& decl = declared(line, t[2]);
            BitVector value{1};
            try {
                value = bv_from_text(t[3], decl.width);
            } catch (const LiteralError& e) {
                throw StimulusError(line, std::string(e.what()) + " for signal '" + decl.name +
                                              "' of width " + std::to_string(decl.width));
            }
            if (!assigned_.insert({time, decl.name}).second) {
                throw StimulusError(line, "'" + decl.name + "' assigned twice at " +
                                              std::to_string(time) + "ps");
            }
            st_.events.push_back({time, decl.name, std::move(value), line});
        } else if (kw == "run") {
            if (t.size() != 2) throw StimulusError(line, "expected 'run <ps>'");
            if (run_line_) {
                throw StimulusError(line, "duplicate 'run' (first on line " +
                                              std::to_string(run_line_) + ")");
            }
            st_.run_until = parse_number(line, t[1], "time");
            run_line_ = line;
        } else {
            throw StimulusError(line, "unknown directive '" + kw + "'");
        }
    }

    void clock(std::size_t line, const std::vector<std::string>& t) {
        if (t.size() < 4 || t[2] != "period") {
            throw StimulusError(line, "expected 'clock <name> period <ps> ...'");
        }
        const auto& decl = declared(line, t[1]);
        if (decl.width != 1) throw StimulusError(line, "clock signal '" + decl.name + "' must be 1 bit");
        for (const auto& c : st_.clocks) {
            if (c.signal == decl.name) {
                throw StimulusError(line, "signal '" + decl.name + "' already has a clock (line " +
                                              std::to_string(c.line) + ")");
            }
        }
        ClockSpec c;
        c.signal = decl.name;
        c.line = line;
        c.period = parse_number(line, t[3], "period");
        if (c.period < 2) throw StimulusError(line, "clock period must be at least 2ps");

        std::set<std::string> seen;
        for (std::size_t i = 4; i < t.size(); i += 2) {
            const auto& opt = t[i];
            if (i + 1 >= t.size()) throw StimulusError(line, "option '" + opt + "' needs a value");
            if (!seen.insert(opt).second) throw StimulusError(line, "option '" + opt + "' repeated");
            const auto& val = t[i + 1];
            if (opt == "duty") {
                auto slash = val.find('/');
                if (slash == std::string::npos) throw StimulusError(line, "duty must be <a>/<b>");
                c.duty_num = parse_number(line, val.substr(0, slash), "duty numerator");
                c.duty_den = parse_number(line, val.substr(slash + 1), "duty denominator");
                if (c.duty_den == 0 || c.duty_num == 0 || c.duty_num >= c.duty_den) {
                    throw StimulusError(line, "duty must satisfy 0 < a < b");
                }
            } else if (opt == "start") {
                if (val != "0" && val != "1") throw StimulusError(line, "start must be 0 or 1");
                c.start = val == "1" ? Bit::One : Bit::Zero;
            } else if (opt == "from") {
                c.from = parse_number(line, val, "time");
            } else {
                throw StimulusError(line, "unknown clock option '" + opt + "'");
            }
        }
        if (c.high_time() == 0 || c.high_time() >= c.period) {
            throw StimulusError(line, "duty cycle leaves an empty phase at this period");
        }
        st_.clocks.push_back(std::move(c));
    }

    Stimulus st_;
    std::size_t run_line_ = 0;
    std::set<std::pair<SimTime, std::string>> assigned_;
};

unsigned signal_order(const Stimulus& s, const std::string& name) {
    if (auto port = signal_from_name(name)) return rank(*port);
    for (std::size_t i = 0; i < s.signals.size(); ++i) {
        if (s.signals[i].name == name) return static_cast<unsigned>(std::size(kAllSignals) + i);
    }
    return UINT32_MAX;
}

} // namespace

Stimulus parse_stimulus(std::string_view text) { return Parser{}.parse(text); }

std::string render_stimulus(const Stimulus& s) {
    std::ostringstream out;
    for (const auto& d : s.signals) out << "signal " << d.name << ' ' << d.width << '\n';
    for (const auto& c : s.clocks) {
        out << "clock " << c.signal << " period " << c.period << " duty " << c.duty_num << '/'
            << c.duty_den << " start " << to_char(c.start) << " from " << c.from << '\n';
    }
    for (const auto& e : s.events) {
        out << "at " << e.time << ' ' << e.signal << ' ' << to_literal(e.value) << '\n';
    }
    out << "run " << s.run_until << '\n';
    return out.str();
}

std::vector<StimulusEvent> clock_events(const ClockSpec& clock, SimTime until) {
    std::vector<StimulusEvent> out;
    const SimTime phase = clock.first_phase();
    const Bit other = invert(clock.start);
    for (SimTime cycle = clock.from; cycle <= until; cycle += clock.period) {
        out.push_back({cycle, clock.signal, BitVector(1, clock.start), 0});
        if (cycle + phase <= until) out.push_back({cycle + phase, clock.signal, BitVector(1, other), 0});
        if (until - cycle < clock.period) break;
    }
    return out;
}

std::vector<StimulusEvent> expand(const Stimulus& s) {
    std::vector<StimulusEvent> out = s.events;
    std::map<std::pair<SimTime, std::string>, std::size_t> explicit_at;
    for (const auto& e : s.events) explicit_at[{e.time, e.signal}] = e.line;

    for (const auto& c : s.clocks) {
        for (auto& e : clock_events(c, s.run_until)) {
            if (auto it = explicit_at.find({e.time, e.signal}); it != explicit_at.end()) {
                throw StimulusError(it->second, "explicit event on '" + e.signal + "' at " +
                                                    std::to_string(e.time) +
                                                    "ps collides with its clock (line " +
                                                    std::to_string(c.line) + ")");
            }
            out.push_back(std::move(e));
        }
    }
    std::stable_sort(out.begin(), out.end(), [&](const StimulusEvent& a, const StimulusEvent& b) {
        if (a.time != b.time) return a.time < b.time;
        return signal_order(s, a.signal) < signal_order(s, b.signal);
    });
    return out;
}

std::vector<Event> bind_to_device(const Stimulus& s, const SramConfig& config) {
    for (const auto& d : s.signals) {
        auto port = signal_from_name(d.name);
        if (!port || *port == Signal::O) {
            throw StimulusError(d.line, "'" + d.name + "' is not a device input (WE, WCLK, A, D)");
        }
        std::size_t expected = 1;
        if (*port == Signal::A) expected = config.addr_bits();
        if (*port == Signal::D) expected = config.data_bits;
        if (d.width != expected) {
            throw StimulusError(d.line, "'" + d.name + "' declared with width " +
                                            std::to_string(d.width) + " but the device needs " +
                                            std::to_string(expected));
        }
    }
    std::vector<Event> out;
    for (auto& e : expand(s)) {
        out.push_back({e.time, *signal_from_name(e.signal), std::move(e.value)});
    }
    return out;
}

} // namespace ssram
