#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssram/logic.hpp"
#include "ssram/signal.hpp"

namespace ssram {

class VcdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VcdSignal {
    std::string name;
    std::size_t width = 1;

    friend bool operator==(const VcdSignal&, const VcdSignal&) = default;
};

/// Identifier code for the n-th declared signal: '!', '"', '#', ... and
/// multi-character codes in base 94 past '~'.
std::string vcd_code(std::size_t index);

/// Value Change Dump writer with a 1ps timescale.
///
/// The header and $dumpvars block are written on construction. Changes that
/// repeat the last emitted value are dropped, and a `#<time>` marker is only
/// written when a change is actually emitted.
class VcdWriter {
public:
    /// `initial` defaults to all-Unknown for every signal.
    VcdWriter(std::ostream& out, std::vector<VcdSignal> signals,
              std::vector<BitVector> initial = {});

    void change(SimTime time, std::size_t signal_index, const BitVector& value);
    void change(SimTime time, std::string_view signal_name, const BitVector& value);

    std::size_t index_of(std::string_view signal_name) const;
    const std::string& code(std::size_t signal_index) const { return codes_.at(signal_index); }
    const std::vector<VcdSignal>& signals() const noexcept { return signals_; }

private:
    void write_value(std::size_t index, const BitVector& value);

    std::ostream& out_;
    std::vector<VcdSignal> signals_;
    std::vector<std::string> codes_;
    std::vector<BitVector> last_;
    SimTime now_ = 0;
    std::optional<SimTime> marker_;
};

struct VcdChange {
    SimTime time = 0;
    std::string name;
    BitVector value{1};

    friend bool operator==(const VcdChange&, const VcdChange&) = default;
};

struct VcdDump {
    std::vector<VcdSignal> signals;
    std::vector<BitVector> initial;
    std::vector<VcdChange> changes;

    /// Value of `signal_name` right after all changes at or before `time`.
    BitVector value_at(std::string_view signal_name, SimTime time) const;
};

/// Reads back the subset of VCD that VcdWriter produces.
VcdDump parse_vcd(std::string_view text);

} // namespace ssram
