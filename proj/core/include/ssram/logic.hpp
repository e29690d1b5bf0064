#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ssram {

/// Three-valued logic scalar. There is no high-impedance state: the device
/// has no output enable, so nothing in the simulator ever floats.
enum class Bit : std::uint8_t { Zero, One, Unknown };

constexpr char to_char(Bit b) noexcept {
    switch (b) {
    case Bit::Zero: return '0';
    case Bit::One: return '1';
    default: return 'x';
    }
}

constexpr Bit bit_from_bool(bool v) noexcept { return v ? Bit::One : Bit::Zero; }

constexpr Bit invert(Bit b) noexcept {
    switch (b) {
    case Bit::Zero: return Bit::One;
    case Bit::One: return Bit::Zero;
    default: return Bit::Unknown;
    }
}

/// Malformed or out-of-range literal text.
class LiteralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fixed-width vector of Bit. Index 0 is the least-significant bit; the
/// textual form is MSB-first, matching the A3:A0 pin notation.
class BitVector {
public:
    /// All bits set to `fill`. Throws std::invalid_argument if width is 0.
    explicit BitVector(std::size_t width, Bit fill = Bit::Unknown);

    /// LSB-first list of bits.
    BitVector(std::initializer_list<Bit> lsb_first);

    static BitVector from_uint(std::uint64_t value, std::size_t width);

    std::size_t width() const noexcept { return bits_.size(); }

    Bit operator[](std::size_t i) const { return bits_.at(i); }
    void set(std::size_t i, Bit b) { bits_.at(i) = b; }

    bool is_fully_defined() const noexcept;

    /// Sum of bit_i * 2^i, or nullopt when any bit is Unknown. Widths above
    /// 64 only decode when the excess high bits are Zero.
    std::optional<std::uint64_t> to_index() const noexcept;

    /// MSB-first characters from {0,1,x}.
    std::string to_string() const;

    const std::vector<Bit>& bits() const noexcept { return bits_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::vector<Bit> bits_;
};

/// Parse `0b[01xX]+`, `0x[0-9a-fA-F]+` or a decimal integer into a vector of
/// exactly `width` bits, zero-extending at the MSB end.
BitVector bv_from_text(std::string_view text, std::size_t width);

/// Canonical literal: `0b` followed by the MSB-first rendering.
std::string to_literal(const BitVector& v);

inline bool bv_is_fully_defined(const BitVector& v) noexcept { return v.is_fully_defined(); }
inline std::optional<std::uint64_t> bv_to_index(const BitVector& v) noexcept { return v.to_index(); }

} // namespace ssram
