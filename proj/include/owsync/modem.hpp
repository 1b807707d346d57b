#pragma once

#include <span>
#include <variant>

#include "owsync/random.hpp"
#include "owsync/types.hpp"

namespace owsync {

/// Parameters of one asymmetrically clipped OFDM link.
///
/// `constellation_order` is a square QAM order for ACO and a PAM order for
/// PAM-DMT and DHT. `power_scale` multiplies unit-energy constellation
/// points; make_modem_config() sets it so the unclipped time signal has unit
/// mean electrical power.
struct ModemConfig {
    Scheme scheme = Scheme::ACO;
    std::size_t n_fft = 256;
    std::size_t cp_len = 32;
    unsigned constellation_order = 4;
    double power_scale = 1.0;

    std::size_t frame_len() const noexcept { return n_fft + cp_len; }
    // N/4 for ACO, N/2 - 1 for PAM-DMT, N/2 for DHT.
    std::size_t payload_count() const noexcept;
    // Throws ConfigError on any broken invariant.
    void validate() const;
};

double compute_power_scale(const ModemConfig& config);

/// Validated config with the analytic unit-power scale filled in.
ModemConfig make_modem_config(Scheme scheme, std::size_t n_fft, std::size_t cp_len,
                              unsigned constellation_order);

/// Constellation points carried by one symbol, already multiplied by
/// power_scale. Complex for ACO, real otherwise.
struct PayloadSymbols {
    std::variant<ComplexVec, RealVec> values;

    std::size_t count() const noexcept;
    bool is_complex() const noexcept { return std::holds_alternative<ComplexVec>(values); }
    const ComplexVec& complex_values() const;
    const RealVec& real_values() const;
};

/// Clipped transmit frame: CP followed by the N-sample body, all samples >= 0.
struct UnipolarFrame {
    RealVec samples;

    std::span<const double> body(std::size_t cp_len) const {
        return std::span<const double>(samples).subspan(cp_len);
    }
};

/// A modulated symbol together with its unclipped body, which is what a
/// receiver stores as the reference copy of a training symbol.
struct ModulatedSymbol {
    RealVec bipolar_body;
    UnipolarFrame frame;
};

ComplexVec map_aco(std::span<const Complex> payload, std::size_t n_fft);
ComplexVec map_pamdmt(std::span<const double> payload, std::size_t n_fft);
RealVec map_dht(std::span<const double> payload, std::size_t n_fft);

RealVec clip_negative(std::span<const double> x);
RealVec add_cp(std::span<const double> body, std::size_t cp_len);
RealVec remove_cp(std::span<const double> frame, std::size_t cp_len);

PayloadSymbols draw_payload(const ModemConfig& config, Rng& rng);

/// Map and transform without CP or clipping.
RealVec synthesize_body(const ModemConfig& config, const PayloadSymbols& payload);

UnipolarFrame modulate(const ModemConfig& config, const PayloadSymbols& payload);
ModulatedSymbol modulate_with_reference(const ModemConfig& config, const PayloadSymbols& payload);

/// Strips the CP, transforms and extracts the data carriers. The factor of
/// two lost to clipping is restored, so a clean frame returns its payload.
PayloadSymbols demodulate(const ModemConfig& config, std::span<const double> frame);

}  // namespace owsync
