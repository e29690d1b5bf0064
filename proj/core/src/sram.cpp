#include "ssram/sram.hpp"

#include <bit>

namespace ssram {

std::size_t SramConfig::addr_bits() const noexcept {
    return words == 0 ? 0 : static_cast<std::size_t>(std::countr_zero(words));
}

void SramConfig::validate() const {
    if (words < 2 || !std::has_single_bit(words)) {
        throw ConfigError("words must be a power of two >= 2, got " + std::to_string(words));
    }
    if (data_bits == 0) {
        throw ConfigError("data_bits must be positive");
    }
    if (!init.empty()) {
        if (init.size() != data_bits) {
            throw ConfigError("expected " + std::to_string(data_bits) + " INIT vectors, got " +
                              std::to_string(init.size()));
        }
        for (std::size_t b = 0; b < init.size(); ++b) {
            if (init[b].width() != words) {
                throw ConfigError("INIT vector " + std::to_string(b) + " has width " +
                                  std::to_string(init[b].width()) + ", expected " +
                                  std::to_string(words));
            }
        }
    }
    if (timing.access == 0) throw ConfigError("t_ac must be positive");
    if (timing.clock_to_out == 0) throw ConfigError("t_cko must be positive");
}

Sram::Sram(SramConfig config)
    : config_((config.validate(), std::move(config))),
      addr_(config_.addr_bits(), Bit::Unknown),
      data_(config_.data_bits, Bit::Unknown),
      output_(config_.data_bits, Bit::Unknown) {
    mem_.assign(config_.words, BitVector(config_.data_bits, Bit::Zero));
    if (!config_.init.empty()) {
        for (std::size_t w = 0; w < config_.words; ++w) {
            for (std::size_t b = 0; b < config_.data_bits; ++b) {
                mem_[w].set(b, config_.init[b][w]);
            }
        }
    }
}

EdgeKind Sram::classify(Bit prev, Bit next) const noexcept {
    if (prev == next) return EdgeKind::None;
    if (prev == Bit::Unknown || next == Bit::Unknown) return EdgeKind::Indeterminate;
    bool rising = next == Bit::One;
    return rising == config_.clock_active_rising ? EdgeKind::Active : EdgeKind::Inactive;
}

SimTime Sram::out_time(SimTime t, SimTime delay) const noexcept {
    return t + config_.timing.input_buffer + delay + config_.timing.output_buffer;
}

BitVector Sram::addressed_value() const {
    if (auto idx = addr_.to_index()) return mem_[*idx];
    return BitVector(config_.data_bits, Bit::Unknown);
}

ApplyResult Sram::apply(SimTime t, Bit we, Bit wclk, const BitVector& addr, const BitVector& data) {
    if (addr.width() != config_.addr_bits()) {
        throw std::invalid_argument("address width " + std::to_string(addr.width()) +
                                    " does not match " + std::to_string(config_.addr_bits()));
    }
    if (data.width() != config_.data_bits) {
        throw std::invalid_argument("data width " + std::to_string(data.width()) +
                                    " does not match " + std::to_string(config_.data_bits));
    }
    if (t < last_time_) {
        throw std::invalid_argument("apply at " + std::to_string(t) + "ps precedes " +
                                    std::to_string(last_time_) + "ps");
    }
    last_time_ = t;

    ApplyResult result;
    result.edge = clock_sampled_ ? classify(wclk_, wclk) : EdgeKind::None;
    const bool addr_changed = addr != addr_;

    we_ = we;
    wclk_ = wclk;
    clock_sampled_ = true;
    addr_ = addr;
    data_ = data;

    const auto idx = addr_.to_index();
    const bool clean_write = result.edge == EdgeKind::Active && we == Bit::One;
    const bool maybe_write = (result.edge == EdgeKind::Active && we == Bit::Unknown) ||
                             (result.edge == EdgeKind::Indeterminate && we != Bit::Zero);

    if (clean_write || maybe_write) {
        WriteEvent w;
        w.word = idx;
        if (!idx) {
            w.kind = WriteKind::AddressUnknown;
            w.data = data;
            diagnostics_.push_back({t, "write with indeterminate address " + addr_.to_string() +
                                           "; output forced to x"});
        } else if (clean_write) {
            w.kind = WriteKind::Committed;
            w.data = data;
            mem_[*idx] = data;
        } else {
            w.kind = WriteKind::Corrupted;
            w.data = BitVector(config_.data_bits, Bit::Unknown);
            mem_[*idx] = w.data;
            diagnostics_.push_back({t, std::string(result.edge == EdgeKind::Indeterminate
                                                       ? "indeterminate clock edge"
                                                       : "indeterminate write enable") +
                                           " at active edge; word " + std::to_string(*idx) +
                                           " set to x"});
        }
        result.write = std::move(w);
        result.updates.push_back(
            {out_time(t, config_.timing.clock_to_out), Signal::O, addressed_value()});
    } else if (addr_changed) {
        result.updates.push_back({out_time(t, config_.timing.access), Signal::O, addressed_value()});
    }
    return result;
}

BitVector Sram::peek(std::size_t word) const {
    if (word >= mem_.size()) {
        throw std::out_of_range("word " + std::to_string(word) + " out of range [0, " +
                                std::to_string(mem_.size()) + ")");
    }
    return mem_[word];
}

std::optional<PortUpdate> Sram::invalidate(std::size_t word, const std::vector<std::size_t>& bits,
                                           SimTime now, SimTime edge_time) {
    if (word >= mem_.size()) {
        throw std::out_of_range("word " + std::to_string(word) + " out of range");
    }
    auto& cell = mem_[word];
    if (bits.empty()) {
        cell = BitVector(config_.data_bits, Bit::Unknown);
    } else {
        for (auto b : bits) cell.set(b, Bit::Unknown);
    }

    auto idx = addr_.to_index();
    if (!idx || *idx != word) return std::nullopt;
    SimTime when = out_time(edge_time, config_.timing.clock_to_out);
    if (when <= now) when = out_time(now, config_.timing.clock_to_out);
    return PortUpdate{when, Signal::O, cell};
}

void Sram::drive_output(const BitVector& value) {
    if (value.width() != config_.data_bits) {
        throw std::invalid_argument("output width mismatch");
    }
    output_ = value;
}

} // namespace ssram
