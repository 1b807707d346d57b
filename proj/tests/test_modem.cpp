#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "owsync/modem.hpp"
#include "owsync/transforms.hpp"

using namespace owsync;

namespace {

const Scheme kSchemes[] = {Scheme::ACO, Scheme::PAM_DMT, Scheme::DHT};

unsigned default_order(Scheme s) { return s == Scheme::ACO ? 16u : 4u; }

}  // namespace

TEST_CASE("map_aco places payload on odd bins with Hermitian mirrors") {
    const Complex a(1, 2), b(-3, 0.5);
    const ComplexVec s = map_aco(ComplexVec{a, b}, 8);
    const ComplexVec want{0, a, 0, b, 0, std::conj(b), 0, std::conj(a)};
    CHECK(oracle::max_abs_diff(s, want) == 0.0);

    for (const Complex& v : map_aco(ComplexVec(64), 256)) CHECK(v == Complex{});
    CHECK_THROWS_AS(map_aco(ComplexVec(3), 8), SizeError);

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexVec spectrum = map_aco(oracle::random_complex(64, rng), 256);
        for (std::size_t k = 1; k < 256; ++k) {
            REQUIRE(spectrum[256 - k] == std::conj(spectrum[k]));
        }
        for (std::size_t k = 0; k < 256; k += 2) REQUIRE(spectrum[k] == Complex{});
    }
}

TEST_CASE("map_pamdmt modulates imaginary parts only") {
    const ComplexVec s = map_pamdmt(RealVec{1.0}, 4);
    CHECK(oracle::max_abs_diff(s, ComplexVec{0, {0, 1}, 0, {0, -1}}) == 0.0);
    CHECK(oracle::max_abs_diff(idft(s), ComplexVec{0, -0.5, 0, 0.5}) < 1e-15);
    CHECK_THROWS_AS(map_pamdmt(RealVec(2), 4), SizeError);

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexVec spectrum = map_pamdmt(oracle::random_real(127, rng), 256);
        for (const Complex& v : spectrum) REQUIRE(v.real() == 0.0);
        REQUIRE(spectrum[0] == Complex{});
        REQUIRE(spectrum[128] == Complex{});
    }
}

TEST_CASE("map_dht fills every odd bin without conjugates") {
    CHECK(map_dht(RealVec{1, 0}, 4) == RealVec{0, 1, 0, 0});
    CHECK(oracle::max_abs_diff(dht(RealVec{0, 1, 0, 0}), RealVec{0.5, 0.5, -0.5, -0.5}) < 1e-15);
    CHECK_THROWS_AS(map_dht(RealVec(3), 8), SizeError);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const RealVec x = dht(map_dht(oracle::random_real(128, rng), 256));
        for (std::size_t n = 0; n < 128; ++n) REQUIRE(std::abs(x[n + 128] + x[n]) < 1e-12);
    }
}

TEST_CASE("clip and cyclic prefix") {
    CHECK(clip_negative(RealVec{1, 0, -1, 0}) == RealVec{1, 0, 0, 0});
    CHECK(clip_negative(RealVec{0, -0.5, 0, 0.5}) == RealVec{0, 0, 0, 0.5});
    CHECK(clip_negative(RealVec{0.25, 3, 0}) == RealVec{0.25, 3, 0});

    CHECK(add_cp(RealVec{1, 2, 3, 4}, 2) == RealVec{3, 4, 1, 2, 3, 4});
    CHECK(add_cp(RealVec{1, 2, 3, 4}, 0) == RealVec{1, 2, 3, 4});
    CHECK(remove_cp(RealVec{3, 4, 1, 2, 3, 4}, 2) == RealVec{1, 2, 3, 4});
    CHECK_THROWS_AS(add_cp(RealVec{1, 2}, 3), SizeError);
    CHECK_THROWS_AS(remove_cp(RealVec{1, 2}, 3), SizeError);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const RealVec body = oracle::random_real(8 + trial, rng);
        REQUIRE(remove_cp(add_cp(body, trial % 8), trial % 8) == body);
    }
}

TEST_CASE("modulate hand examples at N = 4") {
    ModemConfig aco{Scheme::ACO, 4, 0, 4, 1.0};
    // X = [0, 2, 0, 2] gives x = [1, 0, -1, 0].
    const UnipolarFrame f = modulate(aco, PayloadSymbols{ComplexVec{2.0}});
    CHECK(oracle::max_abs_diff(f.samples, RealVec{1, 0, 0, 0}) < 1e-15);

    ModemConfig pam{Scheme::PAM_DMT, 4, 0, 2, 1.0};
    const UnipolarFrame g = modulate(pam, PayloadSymbols{RealVec{1.0}});
    CHECK(oracle::max_abs_diff(g.samples, RealVec{0, 0, 0, 0.5}) < 1e-15);

    CHECK_THROWS_AS(modulate(aco, PayloadSymbols{RealVec{1.0}}), ConfigError);
    CHECK_THROWS_AS(modulate(pam, PayloadSymbols{RealVec{1.0, 2.0}}), SizeError);
}

TEST_CASE("modem configuration is validated") {
    CHECK_NOTHROW(make_modem_config(Scheme::ACO, 256, 32, 16));
    CHECK_THROWS_AS(make_modem_config(Scheme::ACO, 250, 32, 4), ConfigError);
    CHECK_THROWS_AS(make_modem_config(Scheme::ACO, 256, 256, 4), ConfigError);
    CHECK_THROWS_AS(make_modem_config(Scheme::ACO, 256, 32, 8), ConfigError);
    CHECK_THROWS_AS(make_modem_config(Scheme::DHT, 256, 32, 6), ConfigError);
    ModemConfig bad = make_modem_config(Scheme::DHT, 64, 8, 2);
    bad.power_scale = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK(make_modem_config(Scheme::PAM_DMT, 64, 8, 2).payload_count() == 31);
    CHECK_THROWS_AS(parse_scheme("dco"), ConfigError);
}

TEST_CASE("analytic power scales") {
    CHECK(compute_power_scale(make_modem_config(Scheme::ACO, 256, 32, 4)) ==
          doctest::Approx(std::sqrt(512.0)));
    CHECK(compute_power_scale(make_modem_config(Scheme::DHT, 256, 32, 4)) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(compute_power_scale(make_modem_config(Scheme::PAM_DMT, 256, 32, 4)) ==
          doctest::Approx(256.0 / std::sqrt(254.0)));

    // Zero constellation values give a silent frame whatever the scale.
    const ModemConfig c = make_modem_config(Scheme::ACO, 64, 8, 4);
    for (double v : modulate(c, PayloadSymbols{ComplexVec(16)}).samples) CHECK(v == 0.0);
}

TEST_CASE("unit unclipped power, half of it after clipping") {
    for (Scheme scheme : kSchemes) {
        CAPTURE(to_string(scheme));
        const ModemConfig c = make_modem_config(scheme, 256, 32, default_order(scheme));
        Rng rng(5);
        double pre = 0.0, post = 0.0;
        const int symbols = 10000;
        for (int i = 0; i < symbols; ++i) {
            const ModulatedSymbol s = modulate_with_reference(c, draw_payload(c, rng));
            for (double v : s.bipolar_body) pre += v * v;
            for (double v : s.frame.body(c.cp_len)) post += v * v;
        }
        pre /= symbols * 256.0;
        post /= symbols * 256.0;
        CHECK(pre >= 0.99);
        CHECK(pre <= 1.01);
        CHECK(post == doctest::Approx(pre / 2).epsilon(1e-9));
    }
}

TEST_CASE("clipped frames are non-negative and keep the bipolar signal") {
    for (Scheme scheme : kSchemes) {
        CAPTURE(to_string(scheme));
        const ModemConfig c = make_modem_config(scheme, 256, 32, default_order(scheme));
        Rng rng(6);
        for (int trial = 0; trial < 1000; ++trial) {
            const ModulatedSymbol s = modulate_with_reference(c, draw_payload(c, rng));
            const auto body = s.frame.body(c.cp_len);
            REQUIRE(*std::min_element(s.frame.samples.begin(), s.frame.samples.end()) == 0.0);
            if (scheme == Scheme::PAM_DMT) {
                REQUIRE(body[0] == 0.0);
                REQUIRE(body[128] == 0.0);
                for (std::size_t n = 1; n < 128; ++n) {
                    REQUIRE(std::abs(body[n] - body[256 - n] - s.bipolar_body[n]) < 1e-12);
                }
            } else {
                for (std::size_t n = 0; n < 128; ++n) {
                    REQUIRE(std::abs(body[n] - body[n + 128] - s.bipolar_body[n]) < 1e-12);
                    REQUIRE(body[n] * body[n + 128] == 0.0);
                }
            }
        }
    }
}

namespace {

// Carrier-domain view of a body computed with the direct-sum oracle:
// complex spectrum for the DFT schemes, Hartley spectrum (in .real()) for DHT.
ComplexVec oracle_spectrum(Scheme scheme, const RealVec& body) {
    if (scheme == Scheme::DHT) {
        const RealVec h = oracle::direct_dht(body);
        return ComplexVec(h.begin(), h.end());
    }
    return oracle::direct_dft(ComplexVec(body.begin(), body.end()));
}

ComplexVec fast_spectrum(Scheme scheme, const RealVec& body) {
    if (scheme == Scheme::DHT) {
        const RealVec h = dht(body);
        return ComplexVec(h.begin(), h.end());
    }
    return dft(ComplexVec(body.begin(), body.end()));
}

// Checks that clipping halved the data carriers and put everything else on
// the complementary carriers.
void check_orthogonality(Scheme scheme, std::size_t n, int symbols, bool use_oracle) {
    const ModemConfig c = make_modem_config(scheme, n, n / 8, default_order(scheme));
    Rng rng(7);
    double worst = 0.0;
    double distortion = 0.0;
    for (int trial = 0; trial < symbols; ++trial) {
        const ModulatedSymbol s = modulate_with_reference(c, draw_payload(c, rng));
        const RealVec clipped(s.frame.body(c.cp_len).begin(), s.frame.body(c.cp_len).end());
        auto spectrum = use_oracle ? oracle_spectrum : fast_spectrum;
        const ComplexVec before = spectrum(scheme, s.bipolar_body);
        const ComplexVec after = spectrum(scheme, clipped);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex noise = after[k] - 0.5 * before[k];
            if (scheme == Scheme::PAM_DMT) {
                worst = std::max(worst, std::abs(noise.imag()));
                distortion += std::abs(noise.real());
            } else if (k % 2 == 1) {
                worst = std::max(worst, std::abs(noise));
            } else {
                distortion += std::abs(noise);
            }
        }
    }
    CHECK(worst < 1e-9);
    CHECK(distortion > 0.0);  // clipping did distort the other carriers
}

}  // namespace

TEST_CASE("clipping noise stays off the data carriers") {
    for (Scheme scheme : kSchemes) {
        CAPTURE(to_string(scheme));
        check_orthogonality(scheme, 16, 200, true);
        check_orthogonality(scheme, 256, 1000, false);
    }
}

TEST_CASE("noise-free demodulation recovers the payload") {
    for (Scheme scheme : kSchemes) {
        CAPTURE(to_string(scheme));
        for (std::size_t n : {16u, 256u}) {
            const ModemConfig c = make_modem_config(scheme, n, n / 8, default_order(scheme));
            Rng rng(8);
            for (int trial = 0; trial < 1000; ++trial) {
                const PayloadSymbols p = draw_payload(c, rng);
                const PayloadSymbols q = demodulate(c, modulate(c, p).samples);
                if (scheme == Scheme::ACO) {
                    REQUIRE(oracle::max_abs_diff(p.complex_values(), q.complex_values()) < 1e-9);
                } else {
                    REQUIRE(oracle::max_abs_diff(p.real_values(), q.real_values()) < 1e-9);
                }
            }
        }
        const ModemConfig c = make_modem_config(scheme, 64, 8, default_order(scheme));
        const PayloadSymbols zero = demodulate(c, RealVec(72, 0.0));
        CHECK(zero.count() == c.payload_count());
        std::visit([](const auto& values) {
            for (const auto& v : values) CHECK(std::abs(v) == 0.0);
        }, zero.values);
        CHECK_THROWS_AS(demodulate(c, RealVec(64, 0.0)), SizeError);
    }
}
