#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "isac/scene.h"

using namespace isac;

namespace {

SystemConfig table_config() {
    SystemConfig c;
    c.propagation_speed = 3e8;
    return c;
}

}  // namespace

TEST(LinkBudget, NoisePower) {
    SystemConfig c;
    EXPECT_NEAR(noise_power(c) / std::pow(10.0, -12.4), 1.0, 1e-14);
    c.bandwidth_hz *= 2.0;
    EXPECT_NEAR(noise_power(c) / std::pow(10.0, -12.4), 2.0, 1e-14);
    c.bandwidth_hz = 1e9;
    EXPECT_NEAR(noise_power(c), 3.981071705534986e-12, 1e-24);
}

TEST(LinkBudget, TargetGainAgainstRadarEquation) {
    const SystemConfig c = table_config();
    const double lambda = 3e8 / 2.4e9;
    const double ref = 0.1 * 16.0 * 16.0 * lambda * lambda * 10.0 /
                       (std::pow(4.0 * std::numbers::pi, 3) * std::pow(192.0, 4));
    EXPECT_NEAR(target_gain(c, 192.0) / ref, 1.0, 1e-13);
    EXPECT_NEAR(target_gain(c, 192.0), 1.4832880041297338e-12, 1e-25);
    EXPECT_NEAR(target_gain(c, 96.0) / target_gain(c, 192.0), 16.0, 1e-12);
    SystemConfig g2 = c;
    g2.antenna_gain *= 2.0;
    EXPECT_NEAR(target_gain(g2, 192.0) / target_gain(c, 192.0), 4.0, 1e-12);
    EXPECT_NEAR(distance_for_gain(c, target_gain(c, 137.5)), 137.5, 1e-10);
}

TEST(LinkBudget, GainMonotoneInDistance) {
    const SystemConfig c = table_config();
    double prev = target_gain(c, 1.0);
    int prev_bins = 0;
    for (double d = 1.5; d < 500.0; d += 0.5) {
        const double g = target_gain(c, d);
        EXPECT_LT(g, prev);
        prev = g;
        const int l = delay_bins(d, c.bandwidth_hz, c.propagation_speed);
        EXPECT_GE(l, prev_bins);
        prev_bins = l;
    }
}

TEST(Delay, BinsAndDistance) {
    EXPECT_EQ(delay_bins(192.0, 100e6, 3e8), 128);
    EXPECT_EQ(delay_bins(48.0, 100e6, 3e8), 32);
    EXPECT_EQ(delay_bins(0.0, 100e6, 3e8), 0);
    EXPECT_EQ(delay_bins(192.0, 100e6), 128);  // default c still rounds to 128
    EXPECT_DOUBLE_EQ(distance_from_bins(128, 100e6, 3e8), 192.0);
    EXPECT_EQ(distance_from_bins(0, 100e6), 0.0);
    for (int l = 0; l <= 2048; ++l) ASSERT_EQ(delay_bins(distance_from_bins(l, 1e9), 1e9), l);
}

TEST(Delay, TiesRoundAwayFromZero) {
    // 2 d B / c = 2.5 exactly
    EXPECT_EQ(delay_bins(3.75, 100e6, 3e8), 3);
    EXPECT_THROW(delay_bins(-1.0, 100e6), std::invalid_argument);
    EXPECT_THROW(distance_from_bins(-1, 100e6), std::invalid_argument);
}

TEST(Scene, BuildTableScene) {
    const SystemConfig c = table_config();
    const WaveformConfig wf{WaveformKind::zp, 512, 128, 0};
    const ChannelScene s = build_scene(c, wf, 192.0, 1.0, 0.0, {}, Hypothesis::h1);
    EXPECT_EQ(s.target_delay, 128);
    EXPECT_NEAR(s.target_gain_sq, 1.48e-12, 0.01e-12);
    EXPECT_DOUBLE_EQ(s.rsi_gain_sq(), s.noise_power);
    EXPECT_EQ(s.under(Hypothesis::h0).effective_target_gain_sq(), 0.0);
    EXPECT_EQ(s.effective_target_gain_sq(), s.target_gain_sq);
}

TEST(Scene, ClutterSplitsEqually) {
    const SystemConfig c = table_config();
    const WaveformConfig wf{WaveformKind::cp, 512, 128, 0};
    const ChannelScene one = build_scene(c, wf, 192.0, 0.0, 1.0, {32}, Hypothesis::h1);
    EXPECT_DOUBLE_EQ(one.clutter_gain_sq(), one.noise_power);
    const ChannelScene four = build_scene(c, wf, 192.0, 0.0, 1.0, {8, 16, 24, 32}, Hypothesis::h1);
    EXPECT_DOUBLE_EQ(four.clutter_gain_sq(), 0.25 * four.noise_power);
}

TEST(Scene, ZeroDistanceAccepted) {
    const SystemConfig c = table_config();
    const ChannelScene s = build_scene(c, {WaveformKind::zp, 512, 128, 0}, 0.0, 0.0, 0.0, {}, Hypothesis::h1);
    EXPECT_EQ(s.target_delay, 0);
    EXPECT_EQ(s.target_gain_sq, 0.0);
}

TEST(Scene, RejectsInvalid) {
    const SystemConfig c = table_config();
    const WaveformConfig wf{WaveformKind::zp, 512, 128, 0};
    EXPECT_THROW(build_scene(c, wf, 10.0, -1.0, 0.0, {}, Hypothesis::h1), std::invalid_argument);
    EXPECT_THROW(build_scene(c, wf, 10.0, 0.0, 1.0, {}, Hypothesis::h1), std::invalid_argument);
    EXPECT_THROW(build_scene(c, wf, 10.0, 0.0, 1.0, {5, 5}, Hypothesis::h1), std::invalid_argument);
    EXPECT_THROW((WaveformConfig{WaveformKind::zp, 512, 128, 128}.validate()), std::invalid_argument);
    EXPECT_THROW((WaveformConfig{WaveformKind::zp, 512, 128, -513}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((WaveformConfig{WaveformKind::zp, 512, 128, -512}.validate()));
    EXPECT_THROW((WaveformConfig{WaveformKind::cp, 512, 128, 3}.validate()), std::invalid_argument);
    SystemConfig bad = c;
    bad.pathloss_exp = 0.5;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Scene, ZpAndCpCarryEqualAveragePower) {
    for (int nf : {64, 512, 1024})
        for (int ng : {16, 128, 256}) {
            const WaveformConfig wf{WaveformKind::zp, nf, ng, 0};
            EXPECT_NEAR(wf.power_factor() * nf / wf.total(), 1.0, 1e-15);
        }
}
