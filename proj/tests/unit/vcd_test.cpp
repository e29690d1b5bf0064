#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "ssram/vcd.hpp"

namespace ssram {
namespace {

TEST(VcdCode, FirstCodesAndUniqueness) {
    EXPECT_EQ(vcd_code(0), "!");
    EXPECT_EQ(vcd_code(1), "\"");
    EXPECT_EQ(vcd_code(93), "~");
    EXPECT_EQ(vcd_code(94).size(), 2u);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < 20000; ++i) {
        auto c = vcd_code(i);
        for (char ch : c) ASSERT_TRUE(ch >= '!' && ch <= '~');
        ASSERT_TRUE(seen.insert(c).second) << i;
    }
}

TEST(VcdWriter, HeaderDeclaresSignals) {
    std::ostringstream os;
    VcdWriter w(os, {{"WCLK", 1}, {"A", 4}});
    EXPECT_EQ(os.str(),
              "$timescale 1ps $end\n"
              "$var wire 1 ! WCLK $end\n"
              "$var wire 4 \" A $end\n"
              "$enddefinitions $end\n"
              "$dumpvars\n"
              "x!\n"
              "bxxxx \"\n"
              "$end\n");
}

TEST(VcdWriter, NoSignals) {
    std::ostringstream os;
    VcdWriter w(os, {});
    EXPECT_EQ(os.str(), "$timescale 1ps $end\n$enddefinitions $end\n$dumpvars\n$end\n");
    EXPECT_THROW(w.change(0, "X", BitVector(1)), VcdError);
}

TEST(VcdWriter, ScalarChange) {
    std::ostringstream os;
    VcdWriter w(os, {{"WCLK", 1}});
    auto header = os.str();
    w.change(10000, "WCLK", BitVector(1, Bit::One));
    EXPECT_EQ(os.str().substr(header.size()), "#10000\n1!\n");
}

TEST(VcdWriter, RepeatedValueAndTimeMarkerSuppressed) {
    std::ostringstream os;
    VcdWriter w(os, {{"WCLK", 1}, {"O", 2}});
    auto header = os.str();
    w.change(5, "WCLK", BitVector(1, Bit::Unknown)); // same as initial
    w.change(10, "O", bv_from_text("0b1x", 2));
    w.change(10, "WCLK", BitVector(1, Bit::Zero));
    w.change(20, "O", bv_from_text("0b1x", 2));
    EXPECT_EQ(os.str().substr(header.size()), "#10\nb1x \"\n0!\n");
}

TEST(VcdWriter, Errors) {
    std::ostringstream os;
    VcdWriter w(os, {{"A", 4}});
    w.change(100, "A", BitVector::from_uint(1, 4));
    EXPECT_THROW(w.change(50, "A", BitVector::from_uint(2, 4)), VcdError);
    EXPECT_THROW(w.change(200, "B", BitVector::from_uint(2, 4)), VcdError);
    EXPECT_THROW(w.change(200, "A", BitVector::from_uint(2, 3)), VcdError);
    EXPECT_THROW(VcdWriter(os, {{"A", 1}, {"A", 1}}), VcdError);
    EXPECT_THROW(VcdWriter(os, {{"A", 0}}), VcdError);
}

TEST(VcdParse, Errors) {
    EXPECT_THROW(parse_vcd("$var wire 1 ! A $end\n"), VcdError);
    EXPECT_THROW(parse_vcd("$var wire 1 ! A $end\n$enddefinitions $end\n1!\n"), VcdError);
    EXPECT_THROW(parse_vcd("$var wire 1 ! A $end\n$enddefinitions $end\n#5\n1?\n"), VcdError);
    EXPECT_THROW(parse_vcd("$var wire 1 ! A $end\n$enddefinitions $end\n#5\n#5\n"), VcdError);
}

TEST(VcdParse, RoundTripRandomChanges) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<VcdSignal> sigs;
        std::size_t n = 1 + rng() % 120; // exercises two-character codes
        for (std::size_t i = 0; i < n; ++i) sigs.push_back({"s" + std::to_string(i), 1 + rng() % 6});
        std::ostringstream os;
        VcdWriter w(os, sigs);
        std::vector<BitVector> cur;
        for (const auto& s : sigs) cur.emplace_back(s.width, Bit::Unknown);
        std::vector<VcdChange> expected;
        SimTime t = 0;
        for (int i = 0; i < 200; ++i) {
            t += rng() % 3 == 0 ? 0 : rng() % 1000;
            std::size_t idx = rng() % n;
            BitVector v(sigs[idx].width);
            for (std::size_t b = 0; b < v.width(); ++b) v.set(b, static_cast<Bit>(rng() % 3));
            w.change(t, idx, v);
            if (!(cur[idx] == v)) expected.push_back({t, sigs[idx].name, v});
            cur[idx] = v;
        }
        auto dump = parse_vcd(os.str());
        EXPECT_EQ(dump.signals, sigs);
        EXPECT_EQ(dump.changes, expected);
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(dump.value_at(sigs[i].name, t), cur[i]);
    }
}

TEST(VcdDump, ValueAt) {
    std::ostringstream os;
    VcdWriter w(os, {{"A", 2}});
    w.change(10, "A", BitVector::from_uint(1, 2));
    w.change(20, "A", BitVector::from_uint(2, 2));
    auto d = parse_vcd(os.str());
    EXPECT_EQ(d.value_at("A", 0).to_string(), "xx");
    EXPECT_EQ(d.value_at("A", 10).to_string(), "01");
    EXPECT_EQ(d.value_at("A", 19).to_string(), "01");
    EXPECT_EQ(d.value_at("A", 25).to_string(), "10");
    EXPECT_THROW(d.value_at("B", 0), VcdError);
}

} // namespace
} // namespace ssram
