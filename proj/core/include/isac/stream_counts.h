#pragma once

#include <vector>

#include "isac/scene.h"
#include "isac/stats.h"

namespace isac {

struct ChannelTap {
    double gain_sq = 0.0;
    int delay = 0;
};

// Taps in the fixed order RSI (delay 0), clutters, target. Under H0 the target
// tap is kept with zero gain so indices line up across hypotheses.
using UnifiedChannel = std::vector<ChannelTap>;

UnifiedChannel unified_channel(const ChannelScene& scene);

struct Window {
    int start = 0;
    int length = 0;
};

// Energy window of the decision statistic within the current symbol [0, N).
Window detection_window(const WaveformConfig& wf);

// Symmetric square matrix of counts indexed by tap.
class CountMatrix {
public:
    CountMatrix() = default;
    explicit CountMatrix(std::size_t n) : n_(n), v_(n * n, 0) {}
    long long& at(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
    long long at(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_ = 0;
    std::vector<long long> v_;
};

// Exact second-order bookkeeping of the windowed energy statistic, obtained by
// mapping every received sample n - L_j back to the data sample it carries.
//
//  mean_counts[j]   # window samples where tap j sees a nonzero data sample
//  overlap_counts   O(j,k) = # window samples where taps j and k both see nonzero data
//  pair_counts      P(j,k) = #{(n, m): tap j at n and tap k at m see the same data sample}
//  diag_counts      D(j,k) = #{n: taps j and k see the same data sample at n}
//  joint_dup_counts Q(j,k) = #{n != m: tap j repeats a sample across (n, m) and so does tap k}
//  self_counts[j]   # unordered pairs n < m where tap j repeats a data sample
//
// Covariance weight of an unordered tap pair is P + D^2 + Q; for distinct delays
// in a ZP stream D = Q = 0.
struct StreamCounts {
    Window window;
    std::vector<long long> mean_counts;
    CountMatrix overlap_counts;
    CountMatrix pair_counts;
    CountMatrix diag_counts;
    CountMatrix joint_dup_counts;
    std::vector<long long> self_counts;

    long long cross_weight(std::size_t j, std::size_t k) const;
};

// Delays must satisfy 0 <= L < 2N (three-symbol stream coverage).
StreamCounts count_stream(const std::vector<int>& delays, const WaveformConfig& wf);

// Mean and variance of the windowed energy statistic for the given channel.
GaussianMoments stream_moments(const UnifiedChannel& channel, const WaveformConfig& wf,
                               double noise_power);

}  // namespace isac
