#include "ssram/timing.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace ssram {

void SignalHistory::record(Signal signal, SimTime time, const BitVector& value) {
    auto& log = per_signal_[rank(signal)];
    if (!log.empty()) {
        if (log.back().value == value) return;
        if (time <= log.back().time) {
            throw std::invalid_argument("transition on " + std::string(name(signal)) + " at " +
                                        std::to_string(time) + "ps does not follow " +
                                        std::to_string(log.back().time) + "ps");
        }
    }
    log.push_back({time, value});
}

namespace {

constexpr Signal kCheckedSignals[] = {Signal::WE, Signal::A, Signal::D};

void add_changed_bits(const BitVector& before, const BitVector& after, std::set<std::size_t>& out) {
    for (std::size_t i = 0; i < after.width(); ++i) {
        if (i >= before.width() || before[i] != after[i]) out.insert(i);
    }
}

const BitVector& previous_value(const std::vector<Transition>& log, std::size_t i,
                                const BitVector& unknown) {
    return i == 0 ? unknown : log[i - 1].value;
}

} // namespace

std::vector<Violation> check_setup(const SignalHistory& h, SimTime edge_time, SimTime t_setup) {
    std::vector<Violation> out;
    if (t_setup == 0) return out;
    for (Signal s : kCheckedSignals) {
        const auto& log = h.transitions(s);
        auto past_edge = std::upper_bound(log.begin(), log.end(), edge_time,
                                          [](SimTime t, const Transition& tr) { return t < tr.time; });
        if (past_edge == log.begin()) continue;
        const auto& last = *std::prev(past_edge);
        SimTime stable = edge_time - last.time;
        if (stable >= t_setup) continue;

        std::set<std::size_t> bits;
        BitVector unknown(last.value.width(), Bit::Unknown);
        for (auto i = static_cast<std::size_t>(past_edge - log.begin()); i-- > 0;) {
            if (edge_time - log[i].time >= t_setup) break;
            add_changed_bits(previous_value(log, i, unknown), log[i].value, bits);
        }
        out.push_back({ViolationKind::Setup, s, edge_time, stable, t_setup,
                       {bits.begin(), bits.end()}});
    }
    return out;
}

std::vector<Violation> check_hold(const SignalHistory& h, SimTime edge_time, SimTime t_hold) {
    std::vector<Violation> out;
    if (t_hold == 0) return out;
    for (Signal s : kCheckedSignals) {
        const auto& log = h.transitions(s);
        auto first = std::upper_bound(log.begin(), log.end(), edge_time,
                                      [](SimTime t, const Transition& tr) { return t < tr.time; });
        if (first == log.end() || first->time - edge_time > t_hold) continue;

        std::set<std::size_t> bits;
        BitVector unknown(first->value.width(), Bit::Unknown);
        for (auto i = static_cast<std::size_t>(first - log.begin());
             i < log.size() && log[i].time - edge_time <= t_hold; ++i) {
            add_changed_bits(previous_value(log, i, unknown), log[i].value, bits);
        }
        out.push_back({ViolationKind::Hold, s, edge_time, first->time - edge_time, t_hold,
                       {bits.begin(), bits.end()}});
    }
    return out;
}

std::vector<Violation> check_edge(const SignalHistory& h, SimTime edge_time, SimTime t_setup,
                                  SimTime t_hold) {
    auto out = check_setup(h, edge_time, t_setup);
    auto hold = check_hold(h, edge_time, t_hold);
    out.insert(out.end(), hold.begin(), hold.end());
    return out;
}

std::optional<PortUpdate> corrupt_on_violation(Sram& device, const Violation& v,
                                               std::optional<std::size_t> sampled_word,
                                               SimTime now) {
    if (!sampled_word) return std::nullopt;
    static const std::vector<std::size_t> whole_word;
    const auto& bits = v.signal == Signal::D ? v.bits : whole_word;
    return device.invalidate(*sampled_word, bits, now, v.edge_time);
}

std::vector<AccessMeasurement> measure_access(std::span<const TraceEntry> trace,
                                              const SramConfig& config) {
    struct Trigger {
        SimTime time;
        AccessCause cause;
    };
    std::vector<Trigger> triggers;

    Bit we = Bit::Unknown;
    std::optional<Bit> clock;
    for (const auto& e : trace) {
        switch (e.signal) {
        case Signal::WE:
            we = e.value[0];
            break;
        case Signal::WCLK: {
            Bit next = e.value[0];
            if (clock && *clock != Bit::Unknown && next != Bit::Unknown && *clock != next &&
                (next == Bit::One) == config.clock_active_rising && we == Bit::One) {
                triggers.push_back({e.time, AccessCause::ClockEdge});
            }
            clock = next;
            break;
        }
        case Signal::A:
            triggers.push_back({e.time, AccessCause::AddressChange});
            break;
        default:
            break;
        }
    }

    std::vector<SimTime> output_changes;
    for (const auto& e : trace) {
        if (e.signal == Signal::O) output_changes.push_back(e.time);
    }

    std::vector<AccessMeasurement> out;
    for (std::size_t i = 0; i < triggers.size(); ++i) {
        const SimTime start = triggers[i].time;
        // Output change at exactly the next trigger's time still belongs here.
        auto lo = std::upper_bound(output_changes.begin(), output_changes.end(), start);
        auto hi = i + 1 < triggers.size()
                      ? std::upper_bound(output_changes.begin(), output_changes.end(),
                                         triggers[i + 1].time)
                      : output_changes.end();
        if (lo >= hi) continue;
        SimTime settle = *std::prev(hi);
        out.push_back({start, settle, settle - start, triggers[i].cause});
    }
    return out;
}

std::vector<Violation> TimingChecker::on_write_edge(SimTime edge_time,
                                                    std::optional<std::size_t> word) {
    pending_.push_back({edge_time, word});
    return check_setup(history_, edge_time, t_setup_);
}

std::optional<SimTime> TimingChecker::next_hold_deadline() const {
    if (pending_.empty()) return std::nullopt;
    return pending_.front().edge_time + t_hold_;
}

std::vector<TimingChecker::HoldOutcome> TimingChecker::collect_hold(SimTime now) {
    std::vector<HoldOutcome> out;
    while (!pending_.empty() && pending_.front().edge_time + t_hold_ <= now) {
        const auto edge = pending_.front();
        pending_.pop_front();
        out.push_back({edge.edge_time, edge.word, check_hold(history_, edge.edge_time, t_hold_)});
    }
    return out;
}

std::vector<TimingChecker::HoldOutcome> TimingChecker::flush() {
    std::vector<HoldOutcome> out;
    for (const auto& edge : pending_) {
        out.push_back({edge.edge_time, edge.word, check_hold(history_, edge.edge_time, t_hold_)});
    }
    pending_.clear();
    return out;
}

} // namespace ssram
