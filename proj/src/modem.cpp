#include "owsync/modem.hpp"

#include <algorithm>
#include <cmath>

#include "owsync/constellation.hpp"
#include "owsync/transforms.hpp"

namespace owsync {

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::ACO: return "aco";
        case Scheme::PAM_DMT: return "pamdmt";
        case Scheme::DHT: return "dht";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "aco") return Scheme::ACO;
    if (name == "pamdmt") return Scheme::PAM_DMT;
    if (name == "dht") return Scheme::DHT;
    throw ConfigError("unknown scheme '" + name + "' (expected aco, pamdmt or dht)");
}

std::size_t ModemConfig::payload_count() const noexcept {
    switch (scheme) {
        case Scheme::ACO: return n_fft / 4;
        case Scheme::PAM_DMT: return n_fft / 2 - 1;
        case Scheme::DHT: return n_fft / 2;
    }
    return 0;
}

void ModemConfig::validate() const {
    if (n_fft < 4 || !is_power_of_two(n_fft)) {
        throw ConfigError("n_fft must be a power of two >= 4, got " + std::to_string(n_fft));
    }
    if (cp_len >= n_fft) {
        throw ConfigError("cp_len " + std::to_string(cp_len) + " must be below n_fft " +
                          std::to_string(n_fft));
    }
    if (scheme == Scheme::ACO) {
        QamConstellation{constellation_order};
    } else {
        PamConstellation{constellation_order};
    }
    if (!(power_scale > 0.0) || !std::isfinite(power_scale)) {
        throw ConfigError("power_scale must be positive and finite");
    }
}

double compute_power_scale(const ModemConfig& config) {
    // Parseval: with unit-energy points on `active` bins, E{x^2} is
    // active * s^2 / N^2 for the 1/N inverse DFT and active * s^2 / N for the
    // unitary DHT. Solve for E{x^2} = 1.
    const double n = static_cast<double>(config.n_fft);
    switch (config.scheme) {
        case Scheme::ACO: return n / std::sqrt(n / 2.0);      // N/2 active bins
        case Scheme::PAM_DMT: return n / std::sqrt(n - 2.0);  // all bins but 0 and N/2
        case Scheme::DHT: return std::sqrt(n / (n / 2.0));    // N/2 odd bins
    }
    return 1.0;
}

ModemConfig make_modem_config(Scheme scheme, std::size_t n_fft, std::size_t cp_len,
                              unsigned constellation_order) {
    ModemConfig config{scheme, n_fft, cp_len, constellation_order, 1.0};
    config.validate();
    config.power_scale = compute_power_scale(config);
    return config;
}

std::size_t PayloadSymbols::count() const noexcept {
    return std::visit([](const auto& v) { return v.size(); }, values);
}

const ComplexVec& PayloadSymbols::complex_values() const {
    if (const auto* v = std::get_if<ComplexVec>(&values)) return *v;
    throw ConfigError("payload holds real symbols, complex expected");
}

const RealVec& PayloadSymbols::real_values() const {
    if (const auto* v = std::get_if<RealVec>(&values)) return *v;
    throw ConfigError("payload holds complex symbols, real expected");
}

namespace {

void require_count(std::size_t got, std::size_t want, const char* op) {
    if (got != want) {
        throw SizeError(std::string(op) + ": expected " + std::to_string(want) +
                        " payload symbols, got " + std::to_string(got));
    }
}

void require_size(std::size_t n_fft, const char* op) {
    if (n_fft < 4 || !is_power_of_two(n_fft)) {
        throw SizeError(std::string(op) + ": n_fft " + std::to_string(n_fft) +
                        " is not a power of two >= 4");
    }
}

}  // namespace

ComplexVec map_aco(std::span<const Complex> payload, std::size_t n_fft) {
    require_size(n_fft, "map_aco");
    require_count(payload.size(), n_fft / 4, "map_aco");
    ComplexVec spectrum(n_fft);
    for (std::size_t m = 0; m < payload.size(); ++m) {
        const std::size_t k = 2 * m + 1;
        spectrum[k] = payload[m];
        spectrum[n_fft - k] = std::conj(payload[m]);
    }
    return spectrum;
}

ComplexVec map_pamdmt(std::span<const double> payload, std::size_t n_fft) {
    require_size(n_fft, "map_pamdmt");
    require_count(payload.size(), n_fft / 2 - 1, "map_pamdmt");
    ComplexVec spectrum(n_fft);
    for (std::size_t k = 1; k < n_fft / 2; ++k) {
        spectrum[k] = Complex(0.0, payload[k - 1]);
        spectrum[n_fft - k] = Complex(0.0, -payload[k - 1]);
    }
    return spectrum;
}

RealVec map_dht(std::span<const double> payload, std::size_t n_fft) {
    require_size(n_fft, "map_dht");
    require_count(payload.size(), n_fft / 2, "map_dht");
    RealVec spectrum(n_fft, 0.0);
    for (std::size_t m = 0; m < payload.size(); ++m) spectrum[2 * m + 1] = payload[m];
    return spectrum;
}

RealVec clip_negative(std::span<const double> x) {
    RealVec out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [](double v) { return v > 0.0 ? v : 0.0; });
    return out;
}

RealVec add_cp(std::span<const double> body, std::size_t cp_len) {
    if (cp_len > body.size()) {
        throw SizeError("add_cp: cp_len " + std::to_string(cp_len) + " exceeds body length " +
                        std::to_string(body.size()));
    }
    RealVec out;
    out.reserve(body.size() + cp_len);
    out.insert(out.end(), body.end() - static_cast<std::ptrdiff_t>(cp_len), body.end());
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

RealVec remove_cp(std::span<const double> frame, std::size_t cp_len) {
    if (cp_len > frame.size()) {
        throw SizeError("remove_cp: cp_len " + std::to_string(cp_len) +
                        " exceeds frame length " + std::to_string(frame.size()));
    }
    return RealVec(frame.begin() + static_cast<std::ptrdiff_t>(cp_len), frame.end());
}

PayloadSymbols draw_payload(const ModemConfig& config, Rng& rng) {
    const std::size_t count = config.payload_count();
    if (config.scheme == Scheme::ACO) {
        const QamConstellation qam(config.constellation_order);
        ComplexVec values(count);
        for (auto& v : values) v = qam.draw(rng) * config.power_scale;
        return {std::move(values)};
    }
    const PamConstellation pam(config.constellation_order);
    RealVec values(count);
    for (auto& v : values) v = pam.draw(rng) * config.power_scale;
    return {std::move(values)};
}

RealVec synthesize_body(const ModemConfig& config, const PayloadSymbols& payload) {
    switch (config.scheme) {
        case Scheme::ACO: return idft_real(map_aco(payload.complex_values(), config.n_fft));
        case Scheme::PAM_DMT: return idft_real(map_pamdmt(payload.real_values(), config.n_fft));
        case Scheme::DHT: return dht(map_dht(payload.real_values(), config.n_fft));
    }
    throw ConfigError("unknown scheme");
}

ModulatedSymbol modulate_with_reference(const ModemConfig& config, const PayloadSymbols& payload) {
    RealVec body = synthesize_body(config, payload);
    // CP first, then clip, in transmitter order.
    UnipolarFrame frame{clip_negative(add_cp(body, config.cp_len))};
    return {std::move(body), std::move(frame)};
}

UnipolarFrame modulate(const ModemConfig& config, const PayloadSymbols& payload) {
    return modulate_with_reference(config, payload).frame;
}

PayloadSymbols demodulate(const ModemConfig& config, std::span<const double> frame) {
    if (frame.size() != config.frame_len()) {
        throw SizeError("demodulate: frame length " + std::to_string(frame.size()) +
                        " != n_fft + cp_len = " + std::to_string(config.frame_len()));
    }
    const std::size_t n = config.n_fft;
    const RealVec body = remove_cp(frame, config.cp_len);
    switch (config.scheme) {
        case Scheme::ACO: {
            const ComplexVec spectrum = dft(ComplexVec(body.begin(), body.end()));
            ComplexVec values(n / 4);
            for (std::size_t m = 0; m < values.size(); ++m) values[m] = 2.0 * spectrum[2 * m + 1];
            return {std::move(values)};
        }
        case Scheme::PAM_DMT: {
            const ComplexVec spectrum = dft(ComplexVec(body.begin(), body.end()));
            RealVec values(n / 2 - 1);
            for (std::size_t k = 1; k < n / 2; ++k) values[k - 1] = 2.0 * spectrum[k].imag();
            return {std::move(values)};
        }
        case Scheme::DHT: {
            const RealVec spectrum = dht(body);
            RealVec values(n / 2);
            for (std::size_t m = 0; m < values.size(); ++m) values[m] = 2.0 * spectrum[2 * m + 1];
            return {std::move(values)};
        }
    }
    throw ConfigError("unknown scheme");
}

}  // namespace owsync
