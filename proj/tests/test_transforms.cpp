#include <doctest.h>

#include "oracle.hpp"
#include "owsync/transforms.hpp"

using namespace owsync;

TEST_CASE("idft hand examples") {
    const ComplexVec flat{1, 1, 1, 1};
    const ComplexVec impulse = idft(flat);
    CHECK(oracle::max_abs_diff(impulse, ComplexVec{1, 0, 0, 0}) < 1e-15);

    const ComplexVec cosine = idft(ComplexVec{0, 2, 0, 2});
    CHECK(oracle::max_abs_diff(cosine, ComplexVec{1, 0, -1, 0}) < 1e-15);
}

TEST_CASE("dft hand examples") {
    CHECK(oracle::max_abs_diff(dft(ComplexVec{1, 0, 0, 0}), ComplexVec{1, 1, 1, 1}) < 1e-15);
    CHECK(oracle::max_abs_diff(dft(ComplexVec{1, 0, -1, 0}), ComplexVec{0, 2, 0, 2}) < 1e-15);
}

TEST_CASE("dht hand examples") {
    const RealVec y = dht(RealVec{0, 1, 0, 0});
    CHECK(oracle::max_abs_diff(y, RealVec{0.5, 0.5, -0.5, -0.5}) < 1e-15);
    const RealVec zeros = dht(RealVec(64, 0.0));
    for (double v : zeros) CHECK(v == 0.0);
}

TEST_CASE("non power-of-two sizes are rejected") {
    CHECK_THROWS_AS(dft(ComplexVec(6)), SizeError);
    CHECK_THROWS_AS(idft(ComplexVec(12)), SizeError);
    CHECK_THROWS_AS(dht(RealVec(3)), SizeError);
    CHECK_THROWS_AS(dht(RealVec{}), SizeError);
}

TEST_CASE("fast transforms match the direct sums") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {4u, 8u, 16u, 32u, 64u}) {
        const ComplexVec x = oracle::random_complex(n, rng);
        CHECK(oracle::max_abs_diff(dft(x), oracle::direct_dft(x)) < 1e-10);
        CHECK(oracle::max_abs_diff(idft(x), oracle::direct_idft(x)) < 1e-10);
        const RealVec r = oracle::random_real(n, rng);
        CHECK(oracle::max_abs_diff(dht(r), oracle::direct_dht(r)) < 1e-10);
    }
}

TEST_CASE("round trips and Parseval on random inputs") {
    std::mt19937_64 rng(12);
    for (std::size_t n : {16u, 64u, 256u, 1024u}) {
        for (int trial = 0; trial < 100; ++trial) {
            const ComplexVec x = oracle::random_complex(n, rng);
            REQUIRE(oracle::max_abs_diff(dft(idft(x)), x) < 1e-9);
            REQUIRE(oracle::max_abs_diff(idft(dft(x)), x) < 1e-9);

            const ComplexVec spectrum = dft(x);
            double time_energy = 0.0, freq_energy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                time_energy += std::norm(x[i]);
                freq_energy += std::norm(spectrum[i]);
            }
            REQUIRE(std::abs(time_energy - freq_energy / double(n)) / time_energy < 1e-9);

            const RealVec r = oracle::random_real(n, rng);
            REQUIRE(oracle::max_abs_diff(dht(dht(r)), r) < 1e-9);
        }
    }
}

TEST_CASE("Hermitian spectra give real signals") {
    std::mt19937_64 rng(13);
    for (std::size_t n : {16u, 256u, 1024u}) {
        ComplexVec spectrum = oracle::random_complex(n, rng);
        spectrum[0] = spectrum[0].real();
        spectrum[n / 2] = spectrum[n / 2].real();
        for (std::size_t k = 1; k < n / 2; ++k) spectrum[n - k] = std::conj(spectrum[k]);
        for (const Complex& v : idft(spectrum)) REQUIRE(std::abs(v.imag()) < 1e-12);
    }
}

TEST_CASE("odd-bin spectra are antisymmetric over half a symbol") {
    std::mt19937_64 rng(14);
    for (std::size_t n : {16u, 256u}) {
        ComplexVec hermitian(n);
        RealVec hartley(n, 0.0);
        const ComplexVec draws = oracle::random_complex(n, rng);
        for (std::size_t k = 1; k < n / 2; k += 2) {
            hermitian[k] = draws[k];
            hermitian[n - k] = std::conj(draws[k]);
        }
        for (std::size_t k = 1; k < n; k += 2) hartley[k] = draws[k].real();
        const RealVec x = idft_real(hermitian);
        const RealVec y = dht(hartley);
        for (std::size_t t = 0; t < n / 2; ++t) {
            REQUIRE(std::abs(x[t + n / 2] + x[t]) < 1e-12);
            REQUIRE(std::abs(y[t + n / 2] + y[t]) < 1e-12);
        }
    }
}
