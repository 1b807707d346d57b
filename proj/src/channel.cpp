#include "owsync/channel.hpp"

#include <algorithm>
#include <cmath>

namespace owsync {

void ChannelConfig::validate() const {
    if (!taps.empty() && taps.front() == 0.0) {
        throw ConfigError("channel taps[0] must be non-zero");
    }
    if (snr_db && !std::isfinite(*snr_db)) {
        throw ConfigError("snr_db must be finite; leave it empty for a noise-free channel");
    }
}

StreamLayout build_stream(const ModemConfig& config, const UnipolarFrame& training, Rng& rng) {
    if (training.samples.size() != config.frame_len()) {
        throw SizeError("build_stream: training frame length does not match the config");
    }
    const UnipolarFrame before = modulate(config, draw_payload(config, rng));
    const UnipolarFrame after = modulate(config, draw_payload(config, rng));

    StreamLayout layout;
    layout.samples.reserve(3 * config.frame_len());
    for (const auto* frame : {&before, &training, &after}) {
        layout.samples.insert(layout.samples.end(), frame->samples.begin(), frame->samples.end());
    }
    layout.true_start = config.frame_len() + config.cp_len;
    return layout;
}

double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

RealVec awgn(std::span<const double> x, SnrDb snr_db, Rng& rng) {
    RealVec out(x.begin(), x.end());
    if (!snr_db) return out;
    std::normal_distribution<double> noise(0.0, std::sqrt(noise_variance(*snr_db)));
    for (auto& v : out) v += noise(rng);
    return out;
}

RealVec fir(std::span<const double> x, std::span<const double> taps) {
    if (taps.empty()) throw ConfigError("fir: taps must be non-empty");
    RealVec out(x.size(), 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
        double acc = 0.0;
        const std::size_t depth = std::min(taps.size(), n + 1);
        for (std::size_t k = 0; k < depth; ++k) acc += taps[k] * x[n - k];
        out[n] = acc;
    }
    return out;
}

RealVec apply_channel(std::span<const double> x, const ChannelConfig& channel, Rng& rng) {
    if (channel.taps.empty()) return awgn(x, channel.snr_db, rng);
    const RealVec filtered = fir(x, channel.taps);
    return awgn(filtered, channel.snr_db, rng);
}

}  // namespace owsync
