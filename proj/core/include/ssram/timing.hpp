#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ssram/logic.hpp"
#include "ssram/signal.hpp"
#include "ssram/sram.hpp"

namespace ssram {

struct Transition {
    SimTime time = 0;
    BitVector value{1};
};

/// Per-signal log of value changes with strictly increasing times.
class SignalHistory {
public:
    /// Appends a transition; a repeat of the current value is ignored.
    /// Throws std::invalid_argument when `time` does not advance.
    void record(Signal signal, SimTime time, const BitVector& value);

    const std::vector<Transition>& transitions(Signal signal) const {
        return per_signal_[rank(signal)];
    }

private:
    std::array<std::vector<Transition>, std::size(kAllSignals)> per_signal_;
};

enum class ViolationKind { Setup, Hold };

constexpr std::string_view name(ViolationKind k) noexcept {
    return k == ViolationKind::Setup ? "setup" : "hold";
}

struct Violation {
    ViolationKind kind = ViolationKind::Setup;
    Signal signal = Signal::D;
    SimTime edge_time = 0;
    SimTime actual_stable = 0;
    SimTime required = 0;
    /// Bit positions of `signal` that moved inside the window.
    std::vector<std::size_t> bits;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Setup check for one active edge: WE, A and D must not have changed in
/// the `t_setup` picoseconds up to and including the edge.
std::vector<Violation> check_setup(const SignalHistory& h, SimTime edge_time, SimTime t_setup);

/// Hold check for one active edge: no change in (edge, edge + t_hold].
std::vector<Violation> check_hold(const SignalHistory& h, SimTime edge_time, SimTime t_hold);

/// Setup followed by hold violations for one edge.
std::vector<Violation> check_edge(const SignalHistory& h, SimTime edge_time, SimTime t_setup,
                                  SimTime t_hold);

/// Applies the functional consequence of a violation to the word written at
/// the edge. A data violation makes only the moving bits Unknown; an address
/// or write-enable violation makes the whole word Unknown. Returns the
/// output update to schedule when the damaged word is currently addressed.
std::optional<PortUpdate> corrupt_on_violation(Sram& device, const Violation& v,
                                               std::optional<std::size_t> sampled_word,
                                               SimTime now);

enum class AccessCause { AddressChange, ClockEdge };

constexpr std::string_view name(AccessCause c) noexcept {
    return c == AccessCause::AddressChange ? "address" : "clock";
}

struct AccessMeasurement {
    SimTime trigger_time = 0;
    SimTime settle_time = 0;
    SimTime latency = 0;
    AccessCause cause = AccessCause::AddressChange;

    friend bool operator==(const AccessMeasurement&, const AccessMeasurement&) = default;
};

/// One observed pin change.
struct TraceEntry {
    SimTime time = 0;
    Signal signal = Signal::O;
    BitVector value{1};

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Pairs each trigger (an address change, or an active WCLK edge with WE
/// high) with the last output change after it and no later than the next
/// trigger. Triggers whose window holds no output change are skipped.
std::vector<AccessMeasurement> measure_access(std::span<const TraceEntry> trace,
                                              const SramConfig& config);

/// Stateful checker driven by the kernel: setup checks run at the edge,
/// hold checks once simulated time reaches edge + t_hold.
class TimingChecker {
public:
    TimingChecker(SimTime t_setup, SimTime t_hold) : t_setup_(t_setup), t_hold_(t_hold) {}

    void record(Signal signal, SimTime time, const BitVector& value) {
        history_.record(signal, time, value);
    }

    /// Runs the setup check and queues the hold check for this edge.
    std::vector<Violation> on_write_edge(SimTime edge_time, std::optional<std::size_t> word);

    std::optional<SimTime> next_hold_deadline() const;

    struct HoldOutcome {
        SimTime edge_time = 0;
        std::optional<std::size_t> word;
        std::vector<Violation> violations;
    };

    /// Completes hold checks for every queued edge whose window closed at or
    /// before `now`.
    std::vector<HoldOutcome> collect_hold(SimTime now);

    /// Completes every queued hold check regardless of time.
    std::vector<HoldOutcome> flush();

    const SignalHistory& history() const noexcept { return history_; }

private:
    struct PendingEdge {
        SimTime edge_time;
        std::optional<std::size_t> word;
    };

    SignalHistory history_;
    SimTime t_setup_;
    SimTime t_hold_;
    std::deque<PendingEdge> pending_;
};

} // namespace ssram
