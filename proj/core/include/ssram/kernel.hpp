#pragma once

#include <array>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "ssram/logic.hpp"
#include "ssram/signal.hpp"
#include "ssram/sram.hpp"
#include "ssram/timing.hpp"
#include "ssram/vcd.hpp"

namespace ssram {

class ScheduleError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Event {
    SimTime time = 0;
    Signal signal = Signal::WE;
    BitVector value{1};

    friend bool operator==(const Event&, const Event&) = default;
};

/// Pending events in (time, signal rank, insertion order) order.
class Schedule {
public:
    /// Throws ScheduleError for an event earlier than now().
    void push(Event e);

    /// Enqueues an output update and drops every pending event for the same
    /// port at or after its time, so a newer evaluation always wins.
    void push_output(Event e);

    bool empty() const noexcept { return pending_.empty(); }
    std::size_t size() const noexcept { return pending_.size(); }
    std::optional<SimTime> next_time() const noexcept;

    Event pop();
    void advance(SimTime t);
    SimTime now() const noexcept { return now_; }

private:
    struct Key {
        SimTime time;
        unsigned rank;
        std::uint64_t seq;
        auto operator<=>(const Key&) const = default;
    };

    std::map<Key, Event> pending_;
    std::array<std::set<Key>, std::size(kAllSignals)> by_signal_; // same keys, split by port
    std::uint64_t seq_ = 0;
    SimTime now_ = 0;
};

struct SimulationReport {
    SimTime end_time = 0;
    std::uint64_t events_processed = 0;
    std::uint64_t writes_committed = 0;
    std::vector<Violation> violations;
    std::vector<AccessMeasurement> access;
    std::vector<Diagnostic> diagnostics;
    /// Every pin change in processing order, outputs included.
    std::vector<TraceEntry> trace;
};

/// Single-device discrete-event simulation.
///
/// Each distinct timestamp is one evaluation step: all input events at that
/// time are applied first, the device is evaluated once on the resulting
/// snapshot, timing checks run on any write edge, and output events due at
/// that time are delivered last.
class Simulator {
public:
    explicit Simulator(SramConfig config, VcdWriter* sink = nullptr);

    /// Signals in waveform order: WE, WCLK, A, D, O.
    static std::vector<VcdSignal> waveform_signals(const SramConfig& config);

    /// Throws std::invalid_argument on a width mismatch, ScheduleError for a
    /// past event.
    void schedule(Event e);

    /// Processes every event with time <= until. Call once.
    SimulationReport run(SimTime until);

    const Sram& device() const noexcept { return device_; }
    const Schedule& pending() const noexcept { return schedule_; }

private:
    BitVector& input(Signal s);
    void apply_violations(const std::vector<Violation>& violations, std::optional<std::size_t> word,
                          SimTime now, SimulationReport& report);
    void emit(SimTime t, Signal s, const BitVector& v, SimulationReport& report);

    Sram device_;
    TimingChecker timing_;
    Schedule schedule_;
    VcdWriter* sink_;
    BitVector we_{1};
    BitVector wclk_{1};
    BitVector addr_;
    BitVector data_;
};

} // namespace ssram
