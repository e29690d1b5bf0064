#include "ssram/vcd.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ssram {

std::string vcd_code(std::size_t index) {
    constexpr std::size_t kRadix = 94; // '!' .. '~'
    std::string code;
    do {
        code.push_back(static_cast<char>('!' + index % kRadix));
        index /= kRadix;
    } while (index-- > 0);
    return code;
}

VcdWriter::VcdWriter(std::ostream& out, std::vector<VcdSignal> signals,
                     std::vector<BitVector> initial)
    : out_(out), signals_(std::move(signals)) {
    std::unordered_set<std::string> seen;
    for (const auto& s : signals_) {
        if (!seen.insert(s.name).second) throw VcdError("duplicate signal name '" + s.name + "'");
        if (s.width == 0) throw VcdError("signal '" + s.name + "' has zero width");
    }
    if (initial.empty()) {
        for (const auto& s : signals_) initial.emplace_back(s.width, Bit::Unknown);
    }
    if (initial.size() != signals_.size()) throw VcdError("initial value count mismatch");
    for (std::size_t i = 0; i < signals_.size(); ++i) {
        if (initial[i].width() != signals_[i].width) {
            throw VcdError("initial value width mismatch for '" + signals_[i].name + "'");
        }
        codes_.push_back(vcd_code(i));
    }
    last_ = std::move(initial);

    out_ << "$timescale 1ps $end\n";
    for (std::size_t i = 0; i < signals_.size(); ++i) {
        out_ << "$var wire " << signals_[i].width << ' ' << codes_[i] << ' ' << signals_[i].name
             << " $end\n";
    }
    out_ << "$enddefinitions $end\n";
    out_ << "$dumpvars\n";
    for (std::size_t i = 0; i < signals_.size(); ++i) write_value(i, last_[i]);
    out_ << "$end\n";
}

void VcdWriter::write_value(std::size_t index, const BitVector& value) {
    if (signals_[index].width == 1) {
        out_ << to_char(value[0]) << codes_[index] << '\n';
    } else {
        out_ << 'b' << value.to_string() << ' ' << codes_[index] << '\n';
    }
}

std::size_t VcdWriter::index_of(std::string_view signal_name) const {
    for (std::size_t i = 0; i < signals_.size(); ++i) {
        if (signals_[i].name == signal_name) return i;
    }
    throw VcdError("undeclared signal '" + std::string(signal_name) + "'");
}

void VcdWriter::change(SimTime time, std::size_t signal_index, const BitVector& value) {
    if (signal_index >= signals_.size()) throw VcdError("undeclared signal index");
    if (time < now_) {
        throw VcdError("time " + std::to_string(time) + " precedes " + std::to_string(now_));
    }
    if (value.width() != signals_[signal_index].width) {
        throw VcdError("width mismatch on '" + signals_[signal_index].name + "'");
    }
    now_ = time;
    if (last_[signal_index] == value) return;
    if (!marker_ || *marker_ != time) {
        out_ << '#' << time << '\n';
        marker_ = time;
    }
    write_value(signal_index, value);
    last_[signal_index] = value;
}

void VcdWriter::change(SimTime time, std::string_view signal_name, const BitVector& value) {
    change(time, index_of(signal_name), value);
}

BitVector VcdDump::value_at(std::string_view signal_name, SimTime time) const {
    for (std::size_t i = 0; i < signals.size(); ++i) {
        if (signals[i].name != signal_name) continue;
        BitVector v = initial.at(i);
        for (const auto& c : changes) {
            if (c.time > time) break;
            if (c.name == signal_name) v = c.value;
        }
        return v;
    }
    throw VcdError("undeclared signal '" + std::string(signal_name) + "'");
}

namespace {

BitVector parse_bits(std::string_view text, std::size_t width) {
    BitVector v(width, Bit::Zero);
    if (text.size() > width) throw VcdError("value wider than declared: " + std::string(text));
    for (std::size_t i = 0; i < text.size(); ++i) {
        switch (text[text.size() - 1 - i]) {
        case '0': v.set(i, Bit::Zero); break;
        case '1': v.set(i, Bit::One); break;
        case 'x':
        case 'X': v.set(i, Bit::Unknown); break;
        default: throw VcdError("bad value character in '" + std::string(text) + "'");
        }
    }
    return v;
}

} // namespace

VcdDump parse_vcd(std::string_view text) {
    VcdDump dump;
    std::unordered_map<std::string, std::size_t> by_code;
    std::istringstream in{std::string(text)};
    std::string line;
    bool in_defs = true;
    bool in_dumpvars = false;
    SimTime now = 0;
    bool have_time = false;

    auto apply = [&](const std::string& code, BitVector value) {
        auto it = by_code.find(code);
        if (it == by_code.end()) throw VcdError("unknown identifier code '" + code + "'");
        if (in_dumpvars) {
            dump.initial[it->second] = std::move(value);
        } else {
            if (!have_time) throw VcdError("value change before first time marker");
            dump.changes.push_back({now, dump.signals[it->second].name, std::move(value)});
        }
    };

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (in_defs) {
            std::istringstream ls(line);
            std::string kw;
            ls >> kw;
            if (kw == "$var") {
                std::string type, code, name;
                std::size_t width = 0;
                ls >> type >> width >> code >> name;
                if (!ls || width == 0) throw VcdError("malformed $var: " + line);
                by_code[code] = dump.signals.size();
                dump.signals.push_back({name, width});
                dump.initial.emplace_back(width, Bit::Unknown);
            } else if (kw == "$enddefinitions") {
                in_defs = false;
            }
            continue;
        }
        if (line == "$dumpvars") {
            in_dumpvars = true;
        } else if (line == "$end") {
            in_dumpvars = false;
        } else if (line[0] == '#') {
            SimTime t = 0;
            auto [p, ec] = std::from_chars(line.data() + 1, line.data() + line.size(), t);
            if (ec != std::errc{} || p != line.data() + line.size()) {
                throw VcdError("bad time marker: " + line);
            }
            if (have_time && t <= now) throw VcdError("time markers must increase: " + line);
            now = t;
            have_time = true;
        } else if (line[0] == 'b') {
            auto space = line.find(' ');
            if (space == std::string::npos) throw VcdError("malformed vector change: " + line);
            std::string code = line.substr(space + 1);
            auto it = by_code.find(code);
            if (it == by_code.end()) throw VcdError("unknown identifier code '" + code + "'");
            apply(code, parse_bits(std::string_view(line).substr(1, space - 1),
                                   dump.signals[it->second].width));
        } else {
            apply(line.substr(1), parse_bits(std::string_view(line).substr(0, 1), 1));
        }
    }
    if (in_defs) throw VcdError("missing $enddefinitions");
    return dump;
}

} // namespace ssram
