#include "owsync/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace owsync {

namespace {

void require_radix2(std::size_t n, const char* op) {
    if (!is_power_of_two(n)) {
        throw SizeError(std::string(op) + ": length " + std::to_string(n) +
                        " is not a power of two");
    }
}

// FFTW plans cached per (length, direction). Planning is not thread-safe,
// execution on new arrays is.
fftw_plan plan_for(std::size_t n, int sign) {
    static std::mutex guard;
    static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
    const std::lock_guard lock(guard);
    auto it = plans.find({n, sign});
    if (it == plans.end()) {
        ComplexVec scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = plans.emplace(std::pair{n, sign}, p).first;
    }
    return it->second;
}

void fft_in_place(ComplexVec& a, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(plan_for(a.size(), sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD), buf, buf);
}

}  // namespace

ComplexVec dft(std::span<const Complex> signal) {
    require_radix2(signal.size(), "dft");
    ComplexVec out(signal.begin(), signal.end());
    fft_in_place(out, -1);
    return out;
}

ComplexVec idft(std::span<const Complex> spectrum) {
    require_radix2(spectrum.size(), "idft");
    ComplexVec out(spectrum.begin(), spectrum.end());
    fft_in_place(out, +1);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

RealVec idft_real(std::span<const Complex> spectrum) {
    const ComplexVec time = idft(spectrum);
    RealVec out(time.size());
    for (std::size_t i = 0; i < time.size(); ++i) out[i] = time[i].real();
    return out;
}

RealVec dht(std::span<const double> signal) {
    require_radix2(signal.size(), "dht");
    // cas kernel from the forward DFT: H = Re{F} - Im{F}.
    ComplexVec work(signal.begin(), signal.end());
    fft_in_place(work, -1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(work.size()));
    RealVec out(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) {
        out[i] = (work[i].real() - work[i].imag()) * scale;
    }
    return out;
}

}  // namespace owsync
