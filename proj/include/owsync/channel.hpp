#pragma once

#include <optional>
#include <span>

#include "owsync/modem.hpp"

namespace owsync {

/// Electrical SNR in dB; an empty value means the noise-free channel.
using SnrDb = std::optional<double>;

/// Three concatenated frames: random data, training, random data.
struct StreamLayout {
    RealVec samples;
    // Index of the training body's first sample (its CP excluded).
    std::size_t true_start = 0;
};

struct ChannelConfig {
    SnrDb snr_db;
    // Optional causal FIR; taps[0] must be non-zero.
    RealVec taps;
    std::uint64_t seed = 0;

    void validate() const;
};

StreamLayout build_stream(const ModemConfig& config, const UnipolarFrame& training, Rng& rng);

/// Noise variance for the given SNR, referred to unit signal power.
double noise_variance(double snr_db);

/// Adds N(0, 10^(-snr/10)) samples. Noise-free SNR returns the input unchanged.
RealVec awgn(std::span<const double> x, SnrDb snr_db, Rng& rng);

/// Causal linear convolution truncated to the input length.
RealVec fir(std::span<const double> x, std::span<const double> taps);

/// FIR (when taps are given) followed by receiver-referred AWGN.
RealVec apply_channel(std::span<const double> x, const ChannelConfig& channel, Rng& rng);

}  // namespace owsync
