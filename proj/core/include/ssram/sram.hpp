#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssram/logic.hpp"
#include "ssram/signal.hpp"

namespace ssram {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Delays in picoseconds.
struct SramTiming {
    SimTime setup = 1000;
    SimTime hold = 500;
    SimTime access = 3000;        // address change to output (t_ac)
    SimTime clock_to_out = 3000;  // active edge to output (t_cko)
    SimTime input_buffer = 0;
    SimTime output_buffer = 0;

    friend bool operator==(const SramTiming&, const SramTiming&) = default;
};

/// Geometry, clock polarity, initial contents and timing of one device.
/// The defaults describe the 16-word by 2-bit part.
struct SramConfig {
    std::size_t words = 16;
    std::size_t data_bits = 2;
    bool clock_active_rising = true;
    /// init[b] holds column b (the cells feeding output bit b) across all
    /// words: bit w of init[b] is bit b of word w. Empty means all Zero.
    std::vector<BitVector> init;
    SramTiming timing;

    std::size_t addr_bits() const noexcept;

    /// Throws ConfigError when an invariant does not hold.
    void validate() const;
};

enum class EdgeKind { None, Active, Inactive, Indeterminate };

struct PortUpdate {
    SimTime time = 0;
    Signal port = Signal::O;
    BitVector value{1};
};

enum class WriteKind {
    Committed,       // clean write of the data inputs
    Corrupted,       // write condition indeterminate; word set to all-X
    AddressUnknown,  // write attempted with an undecodable address
};

struct WriteEvent {
    WriteKind kind = WriteKind::Committed;
    std::optional<std::size_t> word;
    BitVector data{1};
};

struct ApplyResult {
    std::vector<PortUpdate> updates;
    EdgeKind edge = EdgeKind::None;
    std::optional<WriteEvent> write;
};

struct Diagnostic {
    SimTime time = 0;
    std::string message;
};

/// Behavioral model of a synchronous-write, asynchronous-read static RAM.
///
/// Writes happen only on an active WCLK edge with WE high; the output pin
/// combinationally follows the addressed word. Output changes are not applied
/// here but returned as PortUpdates for the caller to schedule.
class Sram {
public:
    explicit Sram(SramConfig config);

    const SramConfig& config() const noexcept { return config_; }

    /// Presents a new snapshot of all inputs at time `t`. The first WCLK
    /// sample never counts as an edge.
    ApplyResult apply(SimTime t, Bit we, Bit wclk, const BitVector& addr, const BitVector& data);

    BitVector peek(std::size_t word) const;

    /// Sets the listed bits of `word` to Unknown (all bits when `bits` is
    /// empty). If the word is currently addressed the output is rescheduled:
    /// at the clock-to-output time of `edge_time` when that is still ahead of
    /// `now`, otherwise one clock-to-output delay after `now`.
    std::optional<PortUpdate> invalidate(std::size_t word, const std::vector<std::size_t>& bits,
                                         SimTime now, SimTime edge_time);

    /// Records the value actually present on the output pin.
    void drive_output(const BitVector& value);
    const BitVector& output() const noexcept { return output_; }

    Bit we() const noexcept { return we_; }
    Bit wclk() const noexcept { return wclk_; }
    const BitVector& addr() const noexcept { return addr_; }
    const BitVector& data() const noexcept { return data_; }

    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

    EdgeKind classify(Bit prev, Bit next) const noexcept;

private:
    SimTime out_time(SimTime t, SimTime delay) const noexcept;
    BitVector addressed_value() const;

    SramConfig config_;
    std::vector<BitVector> mem_;
    Bit we_ = Bit::Unknown;
    Bit wclk_ = Bit::Unknown;
    bool clock_sampled_ = false;
    BitVector addr_;
    BitVector data_;
    BitVector output_;
    SimTime last_time_ = 0;
    std::vector<Diagnostic> diagnostics_;
};

} // namespace ssram
