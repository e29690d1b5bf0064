#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace ssram {

/// Simulation time in integer picoseconds.
using SimTime = std::uint64_t;

/// Device pins. Enumerator order is the same-timestamp processing rank.
enum class Signal : std::uint8_t { WE, WCLK, A, D, O };

inline constexpr Signal kAllSignals[] = {Signal::WE, Signal::WCLK, Signal::A, Signal::D, Signal::O};

constexpr unsigned rank(Signal s) noexcept { return static_cast<unsigned>(s); }

constexpr std::string_view name(Signal s) noexcept {
    switch (s) {
    case Signal::WE: return "WE";
    case Signal::WCLK: return "WCLK";
    case Signal::A: return "A";
    case Signal::D: return "D";
    case Signal::O: return "O";
    }
    return "?";
}

constexpr std::optional<Signal> signal_from_name(std::string_view n) noexcept {
    for (Signal s : kAllSignals) {
        if (name(s) == n) return s;
    }
    return std::nullopt;
}

} // namespace ssram
