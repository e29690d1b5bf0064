#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssram/kernel.hpp"
#include "ssram/logic.hpp"
#include "ssram/signal.hpp"
#include "ssram/sram.hpp"

namespace ssram {

/// Stimulus parse/validation failure. line() is 1-based; 0 when the error is
/// not tied to a single line.
class StimulusError : public std::runtime_error {
public:
    StimulusError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

struct SignalDecl {
    std::string name;
    std::size_t width = 1;
    std::size_t line = 0;

    friend bool operator==(const SignalDecl& a, const SignalDecl& b) {
        return a.name == b.name && a.width == b.width;
    }
};

/// Periodic square wave on a 1-bit signal. The high phase lasts
/// floor(period * duty_num / duty_den) ps; the wave starts at `start` at time
/// `from` and holds that level for its phase before toggling.
struct ClockSpec {
    std::string signal;
    SimTime period = 0;
    std::uint64_t duty_num = 1;
    std::uint64_t duty_den = 2;
    Bit start = Bit::Zero;
    SimTime from = 0;
    std::size_t line = 0;

    SimTime high_time() const;
    SimTime first_phase() const;

    friend bool operator==(const ClockSpec& a, const ClockSpec& b) {
        return a.signal == b.signal && a.period == b.period && a.duty_num == b.duty_num &&
               a.duty_den == b.duty_den && a.start == b.start && a.from == b.from;
    }
};

struct StimulusEvent {
    SimTime time = 0;
    std::string signal;
    BitVector value{1};
    std::size_t line = 0; // 0 for generated clock edges

    friend bool operator==(const StimulusEvent& a, const StimulusEvent& b) {
        return a.time == b.time && a.signal == b.signal && a.value == b.value;
    }
};

/// A parsed `.stim` testbench.
///
///     signal <name> <width>
///     clock <name> period <ps> [duty <a>/<b>] [start <0|1>] [from <ps>]
///     at <ps> <name> <literal>
///     run <ps>
///
/// `#` starts a comment. Signals must be declared before use.
struct Stimulus {
    std::vector<SignalDecl> signals;
    std::vector<StimulusEvent> events;
    std::vector<ClockSpec> clocks;
    SimTime run_until = 0;

    const SignalDecl* find(std::string_view name) const noexcept;

    friend bool operator==(const Stimulus&, const Stimulus&) = default;
};

Stimulus parse_stimulus(std::string_view text);

/// Canonical text form; parse_stimulus(render_stimulus(s)) == s.
std::string render_stimulus(const Stimulus& s);

/// Clock transitions in (from, until], plus the start level at `from`.
std::vector<StimulusEvent> clock_events(const ClockSpec& clock, SimTime until);

/// Explicit events merged with generated clock edges, sorted by time and
/// then by signal rank (WE, WCLK, A, D, then other signals in declaration
/// order). Throws StimulusError when an explicit event lands on a generated
/// edge of the same signal.
std::vector<StimulusEvent> expand(const Stimulus& s);

/// Maps an expanded stimulus onto the device pins. Every declared signal
/// must be one of WE, WCLK, A, D with the width the configuration implies.
std::vector<Event> bind_to_device(const Stimulus& s, const SramConfig& config);

} // namespace ssram
