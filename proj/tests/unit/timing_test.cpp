#include <gtest/gtest.h>

#include <random>

#include "ssram/timing.hpp"

namespace ssram {
namespace {

BitVector b1(unsigned v) { return BitVector::from_uint(v, 1); }
BitVector a4(unsigned v) { return BitVector::from_uint(v, 4); }
BitVector d2(unsigned v) { return BitVector::from_uint(v, 2); }

TEST(SignalHistory, RecordAppendsTransitions) {
    SignalHistory h;
    h.record(Signal::WE, 0, b1(1));
    EXPECT_EQ(h.transitions(Signal::WE).size(), 1u);
    h.record(Signal::WE, 10, b1(1));
    EXPECT_EQ(h.transitions(Signal::WE).size(), 1u);
    h.record(Signal::WE, 20, b1(0));
    EXPECT_EQ(h.transitions(Signal::WE).size(), 2u);
    EXPECT_THROW(h.record(Signal::WE, 15, b1(1)), std::invalid_argument);
    EXPECT_THROW(h.record(Signal::WE, 20, b1(1)), std::invalid_argument);
}

SignalHistory quiet_history() {
    SignalHistory h;
    h.record(Signal::WE, 0, b1(1));
    h.record(Signal::A, 0, a4(5));
    h.record(Signal::D, 0, d2(1));
    return h;
}

TEST(CheckEdge, SetupViolationWindowArithmetic) {
    auto h = quiet_history();
    h.record(Signal::D, 9500, d2(3));
    auto v = check_edge(h, 10000, 1000, 500);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, ViolationKind::Setup);
    EXPECT_EQ(v[0].signal, Signal::D);
    EXPECT_EQ(v[0].edge_time, 10000u);
    EXPECT_EQ(v[0].actual_stable, 500u);
    EXPECT_EQ(v[0].required, 1000u);
    EXPECT_EQ(v[0].bits, (std::vector<std::size_t>{1}));
}

TEST(CheckEdge, QuietWindowsAreClean) {
    auto h = quiet_history();
    h.record(Signal::D, 20000, d2(2));
    EXPECT_TRUE(check_edge(h, 10000, 1000, 500).empty());
}

TEST(CheckEdge, ChangeAtEdgeIsZeroStableSetup) {
    auto h = quiet_history();
    h.record(Signal::A, 10000, a4(6));
    auto v = check_edge(h, 10000, 1000, 500);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, ViolationKind::Setup);
    EXPECT_EQ(v[0].signal, Signal::A);
    EXPECT_EQ(v[0].actual_stable, 0u);
}

TEST(CheckEdge, WindowBoundaries) {
    {
        auto h = quiet_history();
        h.record(Signal::D, 9000, d2(2)); // exactly t_setup before
        EXPECT_TRUE(check_setup(h, 10000, 1000).empty());
    }
    {
        auto h = quiet_history();
        h.record(Signal::D, 9001, d2(2));
        EXPECT_EQ(check_setup(h, 10000, 1000).size(), 1u);
    }
    {
        auto h = quiet_history();
        h.record(Signal::WE, 10500, b1(0)); // closing edge of hold window is inclusive
        auto v = check_hold(h, 10000, 500);
        ASSERT_EQ(v.size(), 1u);
        EXPECT_EQ(v[0].kind, ViolationKind::Hold);
        EXPECT_EQ(v[0].actual_stable, 500u);
    }
    {
        auto h = quiet_history();
        h.record(Signal::WE, 10501, b1(0));
        EXPECT_TRUE(check_hold(h, 10000, 500).empty());
    }
}

TEST(CheckEdge, HoldReportsFirstChangeAndAllMovingBits) {
    auto h = quiet_history();
    h.record(Signal::D, 10100, d2(0));
    h.record(Signal::D, 10300, d2(2));
    auto v = check_hold(h, 10000, 500);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].actual_stable, 100u);
    EXPECT_EQ(v[0].bits, (std::vector<std::size_t>{0, 1}));
}

TEST(CheckEdge, ZeroWindowsNeverFire) {
    auto h = quiet_history();
    h.record(Signal::D, 10000, d2(2));
    h.record(Signal::A, 10001, a4(1));
    EXPECT_TRUE(check_edge(h, 10000, 0, 0).empty());
}

TEST(CheckEdge, WclkIsNotChecked) {
    auto h = quiet_history();
    h.record(Signal::WCLK, 9999, b1(0));
    h.record(Signal::WCLK, 10000, b1(1));
    EXPECT_TRUE(check_edge(h, 10000, 1000, 500).empty());
}

// Oracle: a transition at t is inside the edge's windows iff
// edge - t < setup (t <= edge) or 0 < t - edge <= hold.
TEST(CheckEdge, CompletenessOverRandomWindows) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5000; ++trial) {
        const SimTime setup = 1 + rng() % 3000;
        const SimTime hold = 1 + rng() % 3000;
        const SimTime edge = 10000;
        const SimTime t = 1 + rng() % 19999;
        auto h = quiet_history();
        Signal s = std::array{Signal::WE, Signal::A, Signal::D}[rng() % 3];
        BitVector next = s == Signal::WE ? b1(0) : s == Signal::A ? a4(9) : d2(2);
        h.record(s, t, next);

        bool in_setup = t <= edge && edge - t < setup;
        bool in_hold = t > edge && t - edge <= hold;
        auto v = check_edge(h, edge, setup, hold);
        ASSERT_EQ(v.size(), (in_setup || in_hold) ? 1u : 0u) << "t=" << t;
        if (!v.empty()) {
            EXPECT_EQ(v[0].signal, s);
            EXPECT_EQ(v[0].kind, in_setup ? ViolationKind::Setup : ViolationKind::Hold);
            EXPECT_EQ(v[0].actual_stable, in_setup ? edge - t : t - edge);
            EXPECT_LT(v[0].actual_stable, v[0].required);
        }
    }
}

TEST(CorruptOnViolation, DataBitOnlyTouchesThatBit) {
    Sram s{SramConfig{}};
    s.apply(0, Bit::One, Bit::Zero, a4(5), d2(3));
    s.apply(10000, Bit::One, Bit::One, a4(5), d2(3));
    Violation v{ViolationKind::Setup, Signal::D, 10000, 500, 1000, {0}};
    corrupt_on_violation(s, v, 5, 10000);
    EXPECT_EQ(s.peek(5)[1], Bit::One);
    EXPECT_EQ(s.peek(5)[0], Bit::Unknown);
}

TEST(CorruptOnViolation, NoViolationKeepsData) {
    Sram s{SramConfig{}};
    s.apply(0, Bit::One, Bit::Zero, a4(5), d2(3));
    s.apply(10000, Bit::One, Bit::One, a4(5), d2(3));
    EXPECT_EQ(s.peek(5), d2(3));
}

TEST(CorruptOnViolation, AddressAndWriteEnableKillTheWord) {
    for (Signal sig : {Signal::A, Signal::WE}) {
        Sram s{SramConfig{}};
        s.apply(0, Bit::One, Bit::Zero, a4(5), d2(3));
        s.apply(10000, Bit::One, Bit::One, a4(5), d2(3));
        Violation v{ViolationKind::Hold, sig, 10000, 100, 500, {0}};
        auto upd = corrupt_on_violation(s, v, 5, 10100);
        EXPECT_EQ(s.peek(5).to_string(), "xx");
        ASSERT_TRUE(upd.has_value());
        EXPECT_EQ(upd->time, 13000u);
    }
}

TEST(CorruptOnViolation, UnknownSampledAddressIsNoOp) {
    Sram s{SramConfig{}};
    Violation v{ViolationKind::Setup, Signal::A, 10, 0, 1000, {}};
    EXPECT_FALSE(corrupt_on_violation(s, v, std::nullopt, 10).has_value());
    for (std::size_t w = 0; w < 16; ++w) EXPECT_EQ(s.peek(w), d2(0));
}

TEST(CorruptOnViolation, NeverFlipsDefinedBits) {
    std::mt19937 rng(17);
    SramConfig c;
    c.init = {bv_from_text("0x5A5A", 16), bv_from_text("0x0FF0", 16)};
    Sram s(c);
    std::vector<BitVector> before;
    for (std::size_t w = 0; w < 16; ++w) before.push_back(s.peek(w));
    for (int i = 0; i < 200; ++i) {
        Signal sig = std::array{Signal::WE, Signal::A, Signal::D}[rng() % 3];
        Violation v{ViolationKind::Setup, sig, 0, 0, 1, {rng() % 2}};
        corrupt_on_violation(s, v, rng() % 16, 0);
        for (std::size_t w = 0; w < 16; ++w) {
            for (std::size_t b = 0; b < 2; ++b) {
                Bit now = s.peek(w)[b];
                ASSERT_TRUE(now == before[w][b] || now == Bit::Unknown);
            }
        }
    }
}

std::vector<TraceEntry> trace_of(std::initializer_list<TraceEntry> e) { return e; }

TEST(MeasureAccess, AddressChangeLatency) {
    SramConfig c;
    auto m = measure_access(trace_of({{5000, Signal::A, a4(1)}, {8000, Signal::O, d2(2)}}), c);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0], (AccessMeasurement{5000, 8000, 3000, AccessCause::AddressChange}));
    EXPECT_GE(m[0].latency, 2000u);
    EXPECT_LE(m[0].latency, 4000u);
}

TEST(MeasureAccess, NoTriggersNoMeasurements) {
    SramConfig c;
    EXPECT_TRUE(measure_access(trace_of({{8000, Signal::O, d2(2)}}), c).empty());
    EXPECT_TRUE(measure_access({}, c).empty());
}

TEST(MeasureAccess, WriteEdgeLatency) {
    SramConfig c;
    c.timing.clock_to_out = 2000;
    auto m = measure_access(trace_of({{0, Signal::WE, b1(1)},
                                      {0, Signal::WCLK, b1(0)},
                                      {10000, Signal::WCLK, b1(1)},
                                      {12000, Signal::O, d2(1)}}),
                            c);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0], (AccessMeasurement{10000, 12000, 2000, AccessCause::ClockEdge}));
}

TEST(MeasureAccess, ReadModeEdgesAreNotTriggers) {
    SramConfig c;
    auto m = measure_access(trace_of({{0, Signal::WE, b1(0)},
                                      {0, Signal::WCLK, b1(0)},
                                      {10000, Signal::WCLK, b1(1)},
                                      {12000, Signal::O, d2(1)}}),
                            c);
    EXPECT_TRUE(m.empty());
}

TEST(MeasureAccess, SettleIsLastChangeBeforeNextTrigger) {
    SramConfig c;
    auto m = measure_access(trace_of({{0, Signal::A, a4(1)},
                                      {1000, Signal::O, d2(1)},
                                      {2500, Signal::O, d2(2)},
                                      {4000, Signal::A, a4(2)},
                                      {4000, Signal::O, d2(3)},
                                      {7000, Signal::O, d2(0)}}),
                            c);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0], (AccessMeasurement{0, 4000, 4000, AccessCause::AddressChange}));
    EXPECT_EQ(m[1], (AccessMeasurement{4000, 7000, 3000, AccessCause::AddressChange}));
}

TEST(TimingChecker, HoldDeadlines) {
    TimingChecker tc(1000, 500);
    tc.record(Signal::WE, 0, b1(1));
    tc.record(Signal::A, 0, a4(3));
    tc.record(Signal::D, 0, d2(1));
    EXPECT_TRUE(tc.on_write_edge(5000, 3).empty());
    EXPECT_EQ(tc.next_hold_deadline(), 5500u);
    tc.record(Signal::D, 5300, d2(0));
    EXPECT_TRUE(tc.collect_hold(5499).empty());
    auto done = tc.collect_hold(5500);
    ASSERT_EQ(done.size(), 1u);
    EXPECT_EQ(done[0].word, 3u);
    ASSERT_EQ(done[0].violations.size(), 1u);
    EXPECT_EQ(done[0].violations[0].actual_stable, 300u);
    EXPECT_FALSE(tc.next_hold_deadline().has_value());
}

} // namespace
} // namespace ssram
