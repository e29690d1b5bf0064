#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include <nlohmann/json.hpp>

namespace ssram::cli {

namespace {

struct AccessSummary {
    SimTime min = 0;
    SimTime max = 0;
    double avg = 0;
};

std::optional<AccessSummary> summarize(const std::vector<AccessMeasurement>& access) {
    if (access.empty()) return std::nullopt;
    AccessSummary s;
    s.min = std::min_element(access.begin(), access.end(), [](auto& a, auto& b) {
                return a.latency < b.latency;
            })->latency;
    s.max = std::max_element(access.begin(), access.end(), [](auto& a, auto& b) {
                return a.latency < b.latency;
            })->latency;
    long double total = 0;
    for (const auto& m : access) total += m.latency;
    s.avg = static_cast<double>(total / access.size());
    return s;
}

} // namespace

std::string format_ns(double ps) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ps / 1000.0);
    return buf;
}

void write_text_report(std::ostream& out, const SimulationReport& report) {
    out << "events: " << report.events_processed << '\n';
    out << "writes: " << report.writes_committed << '\n';
    out << "violations: " << report.violations.size() << '\n';
    for (const auto& v : report.violations) {
        out << "VIOLATION " << name(v.kind) << " signal=" << name(v.signal) << " edge=" << v.edge_time
            << "ps stable=" << v.actual_stable << "ps required=" << v.required << "ps\n";
    }
    for (const auto& m : report.access) {
        out << "ACCESS cause=" << name(m.cause) << " trigger=" << m.trigger_time
            << "ps settle=" << m.settle_time << "ps latency=" << m.latency << "ps\n";
    }
    for (const auto& d : report.diagnostics) {
        out << "DIAGNOSTIC time=" << d.time << "ps " << d.message << '\n';
    }
    if (auto s = summarize(report.access)) {
        out << "access_time: min=" << format_ns(static_cast<double>(s->min))
            << "ns avg=" << format_ns(s->avg) << "ns max=" << format_ns(static_cast<double>(s->max))
            << "ns\n";
    } else {
        out << "access_time: none\n";
    }
}

void write_json_lines_report(std::ostream& out, const SimulationReport& report) {
    using nlohmann::json;
    out << json{{"type", "summary"},
                {"end_time", report.end_time},
                {"events", report.events_processed},
                {"writes", report.writes_committed},
                {"violations", report.violations.size()}}
               .dump()
        << '\n';
    for (const auto& v : report.violations) {
        out << json{{"type", "violation"},
                    {"kind", name(v.kind)},
                    {"signal", name(v.signal)},
                    {"edge_time", v.edge_time},
                    {"actual_stable", v.actual_stable},
                    {"required", v.required}}
                   .dump()
            << '\n';
    }
    for (const auto& m : report.access) {
        out << json{{"type", "access"},
                    {"cause", name(m.cause)},
                    {"trigger_time", m.trigger_time},
                    {"settle_time", m.settle_time},
                    {"latency", m.latency}}
                   .dump()
            << '\n';
    }
    for (const auto& d : report.diagnostics) {
        out << json{{"type", "diagnostic"}, {"time", d.time}, {"message", d.message}}.dump() << '\n';
    }
    if (auto s = summarize(report.access)) {
        out << json{{"type", "access_time"},
                    {"min_ns", format_ns(static_cast<double>(s->min))},
                    {"avg_ns", format_ns(s->avg)},
                    {"max_ns", format_ns(static_cast<double>(s->max))}}
                   .dump()
            << '\n';
    }
}

} // namespace ssram::cli
