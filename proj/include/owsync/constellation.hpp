#pragma once

#include <cstdint>
#include <random>

#include "owsync/types.hpp"

namespace owsync {

/// Gray-mapped M-PAM with levels +-1, +-3, ... scaled to unit average energy.
class PamConstellation {
public:
    explicit PamConstellation(unsigned order);

    unsigned order() const noexcept { return order_; }
    unsigned bits_per_symbol() const noexcept { return bits_; }

    // Amplitude of the level carrying Gray label `label`.
    double point(unsigned label) const;
    // Hard decision: label of the nearest level.
    unsigned decide(double value) const;

    template <class Rng>
    double draw(Rng& rng) const {
        std::uniform_int_distribution<unsigned> pick(0, order_ - 1);
        return point(pick(rng));
    }

private:
    unsigned order_;
    unsigned bits_;
    double step_;  // spacing between adjacent unscaled levels after normalization
};

/// Square Gray-mapped M-QAM with unit average energy, built as the product
/// of two sqrt(M)-PAM axes (high label bits on I, low bits on Q).
class QamConstellation {
public:
    explicit QamConstellation(unsigned order);

    unsigned order() const noexcept { return order_; }
    unsigned bits_per_symbol() const noexcept { return 2 * axis_.bits_per_symbol(); }
    // Unit-energy PAM of one grid axis; QAM points use it scaled by 1/sqrt(2).
    const PamConstellation& axis() const noexcept { return axis_; }

    Complex point(unsigned label) const;
    unsigned decide(Complex value) const;

    template <class Rng>
    Complex draw(Rng& rng) const {
        std::uniform_int_distribution<unsigned> pick(0, order_ - 1);
        return point(pick(rng));
    }

private:
    unsigned order_;
    PamConstellation axis_;
};

unsigned gray_encode(unsigned value) noexcept;
unsigned gray_decode(unsigned code) noexcept;

}  // namespace owsync
