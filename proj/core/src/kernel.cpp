#include "ssram/kernel.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace ssram {

void Schedule::push(Event e) {
    if (e.time < now_) {
        throw ScheduleError("event on " + std::string(name(e.signal)) + " at " +
                            std::to_string(e.time) + "ps is in the past (now " +
                            std::to_string(now_) + "ps)");
    }
    Key key{e.time, rank(e.signal), seq_++};
    by_signal_[key.rank].insert(key);
    pending_.emplace(key, std::move(e));
}

void Schedule::push_output(Event e) {
    if (e.time < now_) {
        throw ScheduleError("output update at " + std::to_string(e.time) + "ps is in the past");
    }
    auto& keys = by_signal_[rank(e.signal)];
    for (auto it = keys.lower_bound(Key{e.time, 0, 0}); it != keys.end();) {
        pending_.erase(*it);
        it = keys.erase(it);
    }
    push(std::move(e));
}

std::optional<SimTime> Schedule::next_time() const noexcept {
    if (pending_.empty()) return std::nullopt;
    return pending_.begin()->first.time;
}

Event Schedule::pop() {
    if (pending_.empty()) throw ScheduleError("pop from empty schedule");
    auto node = pending_.extract(pending_.begin());
    by_signal_[node.key().rank].erase(node.key());
    now_ = node.key().time;
    return std::move(node.mapped());
}

void Schedule::advance(SimTime t) {
    if (t < now_) throw ScheduleError("cannot move time backwards");
    if (auto next = next_time(); next && *next < t) {
        throw ScheduleError("cannot advance past a pending event");
    }
    now_ = t;
}

Simulator::Simulator(SramConfig config, VcdWriter* sink)
    : device_(std::move(config)),
      timing_(device_.config().timing.setup, device_.config().timing.hold),
      sink_(sink),
      we_(1, Bit::Unknown),
      wclk_(1, Bit::Unknown),
      addr_(device_.config().addr_bits(), Bit::Unknown),
      data_(device_.config().data_bits, Bit::Unknown) {}

std::vector<VcdSignal> Simulator::waveform_signals(const SramConfig& config) {
    return {{"WE", 1},
            {"WCLK", 1},
            {"A", config.addr_bits()},
            {"D", config.data_bits},
            {"O", config.data_bits}};
}

void Simulator::schedule(Event e) {
    const auto& cfg = device_.config();
    std::size_t expected = 1;
    switch (e.signal) {
    case Signal::A: expected = cfg.addr_bits(); break;
    case Signal::D:
    case Signal::O: expected = cfg.data_bits; break;
    default: break;
    }
    if (e.value.width() != expected) {
        throw std::invalid_argument("event on " + std::string(name(e.signal)) + " has width " +
                                    std::to_string(e.value.width()) + ", expected " +
                                    std::to_string(expected));
    }
    schedule_.push(std::move(e));
}

BitVector& Simulator::input(Signal s) {
    switch (s) {
    case Signal::WE: return we_;
    case Signal::WCLK: return wclk_;
    case Signal::A: return addr_;
    case Signal::D: return data_;
    default: throw std::logic_error("O is not an input");
    }
}

void Simulator::emit(SimTime t, Signal s, const BitVector& v, SimulationReport& report) {
    report.trace.push_back({t, s, v});
    if (sink_) sink_->change(t, static_cast<std::size_t>(rank(s)), v);
}

void Simulator::apply_violations(const std::vector<Violation>& violations,
                                 std::optional<std::size_t> word, SimTime now,
                                 SimulationReport& report) {
    for (const auto& v : violations) {
        report.violations.push_back(v);
        if (auto update = corrupt_on_violation(device_, v, word, now)) {
            schedule_.push_output({update->time, update->port, update->value});
        }
    }
}

SimulationReport Simulator::run(SimTime until) {
    SimulationReport report;

    for (;;) {
        auto next = schedule_.next_time();
        auto deadline = timing_.next_hold_deadline();
        if (!next && !deadline) break;
        SimTime now = next && deadline ? std::min(*next, *deadline) : next ? *next : *deadline;
        if (now > until) break;

        std::array<std::optional<BitVector>, 4> inputs;
        std::vector<BitVector> outputs;
        while (schedule_.next_time() == now) {
            Event e = schedule_.pop();
            ++report.events_processed;
            if (e.signal == Signal::O) {
                outputs.push_back(std::move(e.value));
            } else {
                inputs[rank(e.signal)] = std::move(e.value); // last assignment wins
            }
        }
        schedule_.advance(now);

        bool any_input = false;
        for (Signal s : {Signal::WE, Signal::WCLK, Signal::A, Signal::D}) {
            auto& value = inputs[rank(s)];
            if (!value) continue;
            any_input = true;
            auto& current = input(s);
            if (*value == current) continue;
            current = *value;
            timing_.record(s, now, current);
            emit(now, s, current, report);
        }

        if (any_input) {
            auto result = device_.apply(now, we_[0], wclk_[0], addr_, data_);
            for (auto& u : result.updates) schedule_.push_output({u.time, u.port, std::move(u.value)});
            if (result.write && result.edge == EdgeKind::Active && we_[0] == Bit::One) {
                if (result.write->kind == WriteKind::Committed) ++report.writes_committed;
                apply_violations(timing_.on_write_edge(now, result.write->word), result.write->word,
                                 now, report);
            }
        }

        for (auto& value : outputs) {
            if (value == device_.output()) continue;
            device_.drive_output(value);
            emit(now, Signal::O, value, report);
        }

        for (auto& outcome : timing_.collect_hold(now)) {
            apply_violations(outcome.violations, outcome.word, now, report);
        }
    }

    for (auto& outcome : timing_.flush()) {
        apply_violations(outcome.violations, outcome.word, std::max(until, schedule_.now()), report);
    }

    report.end_time = until;
    report.access = measure_access(report.trace, device_.config());
    report.diagnostics = device_.diagnostics();
    return report;
}

} // namespace ssram
