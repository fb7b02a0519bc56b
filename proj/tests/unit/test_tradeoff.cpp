#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "isac/detector_cp.h"
#include "isac/detector_zp.h"
#include "isac/tradeoff.h"

using namespace isac;

namespace {

SystemConfig mmwave() {
    SystemConfig c;
    c.carrier_freq_hz = 24e9;
    c.bandwidth_hz = 1e9;
    c.antenna_gain = 64.0;
    c.noise_psd_w_hz = std::pow(10.0, -20.4);
    c.propagation_speed = 3e8;
    return c;
}

}  // namespace

TEST(RangeQuery, GammaThresholdsUseIncompleteGammaInverse) {
    RangeQuery rq;
    rq.guard_size = 128;
    EXPECT_NEAR(lambda_norm_zp(rq), boost::math::gamma_q_inv(128.0, 1e-3), 1e-9);
    EXPECT_NEAR(lambda_norm_cp(rq), boost::math::gamma_q_inv(1152.0, 1e-3), 1e-8);
    rq.pfa = 0.0;
    EXPECT_THROW(lambda_norm_zp(rq), std::invalid_argument);
}

TEST(RequiredSnr, ReachesTargetPd) {
    for (int n : {16, 128, 1024}) {
        const double rho = snr_required_zp(0.9, 1e-3, n);
        const double lam = boost::math::gamma_q_inv(static_cast<double>(n), 1e-3);
        EXPECT_NEAR(boost::math::gamma_q(static_cast<double>(n), lam / (1.0 + rho)), 0.9, 1e-10);
    }
    EXPECT_THROW(snr_required_zp(1e-4, 1e-3, 64), std::domain_error);
}

TEST(RangeFromSnr, InvertsLinkBudget) {
    const SystemConfig c = mmwave();
    const WaveformConfig zp{WaveformKind::zp, 1024, 128, 0};
    const WaveformConfig cp{WaveformKind::cp, 1024, 128, 0};
    const double d = range_from_snr(c, 0.05, zp, 0.0);
    EXPECT_NEAR(target_gain(c, d) * zp.power_factor() / noise_power(c), 0.05, 1e-13);
    const double dc = range_from_snr(c, 0.05, cp, 3.0);
    EXPECT_NEAR(target_gain(c, dc) / (4.0 * noise_power(c)), 0.05, 1e-13);
}

TEST(DeltaRatio, AgreesWithRangesFromLinkBudget) {
    const SystemConfig c = mmwave();
    for (int guard : {64, 128, 256})
        for (double rsi : {0.0, 0.5, 10.0}) {
            RangeQuery rq;
            rq.guard_size = guard;
            rq.rsi_ratio = rsi;
            const double d_zp = range_from_snr(c, snr_required_zp(rq), rq.zp(), 0.0);
            const double d_cp = range_from_snr(c, snr_required_cp(rq), rq.cp(), rsi);
            EXPECT_NEAR(delta_ratio(rq), d_cp / d_zp, 1e-12);
        }
}

TEST(DeltaRatio, DecreasesWithRsi) {
    RangeQuery rq;
    double prev = delta_ratio(rq);
    for (double db = -20.0; db <= 40.0; db += 2.0) {
        rq.rsi_ratio = db_to_linear(db);
        const double d = delta_ratio(rq);
        EXPECT_LT(d, prev);
        prev = d;
    }
}

TEST(DeltaRatio, ChecksImpliedDelay) {
    SystemConfig c = mmwave();
    c.antenna_gain = 1e4;  // pushes the ZP range beyond N_f bins
    RangeQuery rq;
    EXPECT_THROW(delta_ratio(rq, &c), std::domain_error);
}

TEST(EqualRange, ClosedFormMatchesBisection) {
    for (Model cfar : {Model::gamma, Model::gaussian})
        for (int guard : {64, 128, 256}) {
            RangeQuery rq;
            rq.guard_size = guard;
            rq.cfar = cfar;
            const EqualRange a = equal_range_rsi(rq);
            const EqualRange b = equal_range_rsi_bisect(rq);
            ASSERT_TRUE(a.feasible);
            ASSERT_TRUE(b.feasible);
            EXPECT_NEAR(a.rsi_db, b.rsi_db, 1e-9);
            RangeQuery at = rq;
            at.rsi_ratio = a.rsi_ratio;
            EXPECT_NEAR(delta_ratio(at), 1.0, 1e-10);
        }
}

TEST(EqualRange, InfeasibleWhenZpAlreadyWins) {
    RangeQuery rq;
    rq.fft_size = 64;
    rq.guard_size = 960;
    EXPECT_FALSE(equal_range_rsi(rq).feasible);
    EXPECT_FALSE(equal_range_rsi_bisect(rq).feasible);
}

TEST(Kld, NonnegativeAndGrowsWithTarget) {
    const WaveformConfig zp{WaveformKind::zp, 256, 64, 0};
    const WaveformConfig cp{WaveformKind::cp, 256, 64, 0};
    ChannelScene s;
    s.noise_power = 1.0;
    s.target_delay = 40;
    double prev = 0.0;
    for (double g = 0.01; g < 2.0; g *= 1.5) {
        s.target_gain_sq = g;
        const KldPair k = kld_compare(s, zp, s, cp);
        EXPECT_GE(k.cp, 0.0);
        EXPECT_GT(k.zp, prev);
        prev = k.zp;
    }
}

TEST(ModelSelect, Rules) {
    const WaveformConfig zp{WaveformKind::zp, 512, 128, 0};
    ChannelScene s;
    s.noise_power = 1.0;
    s.target_delay = 32;
    s.target_gain_sq = 0.1;
    const ModelSelection a = model_select(s, zp);
    EXPECT_EQ(a.model, Model::exact);
    EXPECT_TRUE(std::isnan(a.covariance_fraction));
    EXPECT_NEAR(a.sigma_ratio, sigma_ratio(s, zp), 1e-12);

    ChannelScene shifted = s;
    const ModelSelection b = model_select(shifted, {WaveformKind::zp, 512, 128, -8});
    EXPECT_EQ(b.model, Model::gaussian);
    EXPECT_TRUE(std::isnan(b.sigma_ratio));

    const WaveformConfig cp{WaveformKind::cp, 512, 128, 0};
    EXPECT_EQ(model_select(s, cp).model, Model::gamma);
    ChannelScene strong = s;
    strong.rsi_ratio = 10.0;
    strong.target_gain_sq = 10.0;
    strong.target_delay = 64;
    EXPECT_EQ(model_select(strong, cp).model, Model::gaussian);
    ChannelScene clutter = s;
    clutter.clutter_ratio = 0.001;
    clutter.clutter_delays = {8};
    EXPECT_EQ(model_select(clutter, cp).model, Model::gaussian);
}

TEST(FindCrossing, Linear) {
    auto f = [](double x) { return 1.0 - 0.01 * x; };
    EXPECT_NEAR(find_crossing(f, 0.0, 100.0, 0.9), 10.0, 1e-6);
    EXPECT_THROW(find_crossing(f, 20.0, 100.0, 0.9), std::domain_error);
}

TEST(UpperBound, DominatesFixedGuard) {
    SystemConfig c = mmwave();
    c.bandwidth_hz = 100e6;
    c.carrier_freq_hz = 24e9;
    c.noise_psd_w_hz = std::pow(10.0, -20.4);
    const WaveformConfig wf{WaveformKind::zp, 512, 128, 0};
    for (double d = 20.0; d <= 300.0; d += 10.0) {
        const double fixed = zp_pd_at_distance(c, wf, d, 1e-3, Model::gamma);
        const double ub = pd_upper_bound(c, wf, d, 1e-3, Model::gamma);
        EXPECT_GE(ub, fixed - 1e-9) << d;
    }
}
