#include "owsync/constellation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace owsync {

unsigned gray_encode(unsigned value) noexcept { return value ^ (value >> 1); }

unsigned gray_decode(unsigned code) noexcept {
    unsigned value = code;
    for (unsigned shift = 1; shift < 32; shift <<= 1) value ^= value >> shift;
    return value;
}

PamConstellation::PamConstellation(unsigned order) : order_(order) {
    if (order < 2 || !is_power_of_two(order)) {
        throw ConfigError("PAM order must be a power of two >= 2, got " + std::to_string(order));
    }
    bits_ = static_cast<unsigned>(std::countr_zero(order));
    // Mean of (2i - M + 1)^2 over i is (M^2 - 1) / 3.
    const double m = order;
    step_ = 1.0 / std::sqrt((m * m - 1.0) / 3.0);
}

double PamConstellation::point(unsigned label) const {
    if (label >= order_) throw RangeError("PAM label out of range");
    const unsigned index = gray_decode(label);
    return (2.0 * index - (order_ - 1.0)) * step_;
}

unsigned PamConstellation::decide(double value) const {
    const double index = std::round((value / step_ + (order_ - 1.0)) / 2.0);
    const auto clamped = static_cast<unsigned>(std::clamp(index, 0.0, order_ - 1.0));
    return gray_encode(clamped);
}

namespace {

unsigned qam_axis_order(unsigned order) {
    const auto side = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(order))));
    if (order < 4 || !is_power_of_two(order) || side * side != order) {
        throw ConfigError("QAM order must be a square power of two >= 4, got " +
                          std::to_string(order));
    }
    return side;
}

}  // namespace

QamConstellation::QamConstellation(unsigned order)
    : order_(order), axis_(qam_axis_order(order)) {}

Complex QamConstellation::point(unsigned label) const {
    if (label >= order_) throw RangeError("QAM label out of range");
    const unsigned b = axis_.bits_per_symbol();
    const unsigned mask = (1u << b) - 1;
    // Each axis carries half of the unit energy.
    return Complex(axis_.point(label >> b), axis_.point(label & mask)) * std::sqrt(0.5);
}

unsigned QamConstellation::decide(Complex value) const {
    const double undo = std::sqrt(2.0);
    const unsigned b = axis_.bits_per_symbol();
    return (axis_.decide(value.real() * undo) << b) | axis_.decide(value.imag() * undo);
}

}  // namespace owsync
