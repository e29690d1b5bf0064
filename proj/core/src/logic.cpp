#include "ssram/logic.hpp"

#include <algorithm>

namespace ssram {

BitVector::BitVector(std::size_t width, Bit fill) : bits_(width, fill) {
    if (width == 0) {
        throw std::invalid_argument("bit vector width must be positive");
    }
}

BitVector::BitVector(std::initializer_list<Bit> lsb_first) : bits_(lsb_first) {
    if (bits_.empty()) {
        throw std::invalid_argument("bit vector width must be positive");
    }
}

BitVector BitVector::from_uint(std::uint64_t value, std::size_t width) {
    BitVector v(width, Bit::Zero);
    for (std::size_t i = 0; i < width && i < 64; ++i) {
        v.bits_[i] = bit_from_bool(((value >> i) & 1U) != 0);
    }
    if (width < 64 && (value >> width) != 0) {
        throw std::invalid_argument("value " + std::to_string(value) + " does not fit in " +
                                    std::to_string(width) + " bits");
    }
    return v;
}

bool BitVector::is_fully_defined() const noexcept {
    return std::none_of(bits_.begin(), bits_.end(), [](Bit b) { return b == Bit::Unknown; });
}

std::optional<std::uint64_t> BitVector::to_index() const noexcept {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        switch (bits_[i]) {
        case Bit::Unknown:
            return std::nullopt;
        case Bit::One:
            if (i >= 64) return std::nullopt;
            index |= std::uint64_t{1} << i;
            break;
        case Bit::Zero:
            break;
        }
    }
    return index;
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto it = bits_.rbegin(); it != bits_.rend(); ++it) {
        s.push_back(to_char(*it));
    }
    return s;
}

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

[[noreturn]] void fail(std::string_view text, const std::string& why) {
    throw LiteralError("bad literal '" + std::string(text) + "': " + why);
}

// Writes MSB-first digit bits into `out` starting at the LSB end; anything
// that lands above `width` must be Zero.
void place_bits(std::string_view text, const std::vector<Bit>& lsb_first, std::size_t width,
                BitVector& out) {
    for (std::size_t i = 0; i < lsb_first.size(); ++i) {
        if (i < width) {
            out.set(i, lsb_first[i]);
        } else if (lsb_first[i] != Bit::Zero) {
            fail(text, "value exceeds width " + std::to_string(width));
        }
    }
}

} // namespace

BitVector bv_from_text(std::string_view text, std::size_t width) {
    if (width == 0) {
        throw std::invalid_argument("bit vector width must be positive");
    }
    BitVector out(width, Bit::Zero);
    std::vector<Bit> digits; // LSB first

    if (text.starts_with("0b")) {
        auto body = text.substr(2);
        if (body.empty()) fail(text, "no binary digits");
        for (auto it = body.rbegin(); it != body.rend(); ++it) {
            switch (*it) {
            case '0': digits.push_back(Bit::Zero); break;
            case '1': digits.push_back(Bit::One); break;
            case 'x':
            case 'X': digits.push_back(Bit::Unknown); break;
            default: fail(text, std::string("invalid binary digit '") + *it + "'");
            }
        }
    } else if (text.starts_with("0x")) {
        auto body = text.substr(2);
        if (body.empty()) fail(text, "no hex digits");
        for (auto it = body.rbegin(); it != body.rend(); ++it) {
            if (*it == 'x' || *it == 'X') fail(text, "unknown digits are only allowed in 0b literals");
            int v = hex_value(*it);
            if (v < 0) fail(text, std::string("invalid hex digit '") + *it + "'");
            for (int b = 0; b < 4; ++b) digits.push_back(bit_from_bool(((v >> b) & 1) != 0));
        }
    } else {
        if (text.empty()) fail(text, "empty");
        std::uint64_t value = 0;
        for (char c : text) {
            if (c == 'x' || c == 'X') fail(text, "unknown digits are only allowed in 0b literals");
            if (c < '0' || c > '9') fail(text, std::string("invalid decimal digit '") + c + "'");
            auto d = static_cast<std::uint64_t>(c - '0');
            if (value > (UINT64_MAX - d) / 10) fail(text, "decimal value overflows 64 bits");
            value = value * 10 + d;
        }
        for (int b = 0; b < 64; ++b) digits.push_back(bit_from_bool(((value >> b) & 1U) != 0));
    }
    place_bits(text, digits, width, out);
    return out;
}

std::string to_literal(const BitVector& v) { return "0b" + v.to_string(); }

} // namespace ssram
