#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace owsync {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;
using RealVec = std::vector<double>;

/// Optical OFDM family. All three produce a real, non-negative frame after
/// clipping and carry their information loss-free through the clip.
enum class Scheme { ACO, PAM_DMT, DHT };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);

// Vector length does not satisfy an operation's precondition.
class SizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Offset or window falls outside the data it indexes.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Inconsistent or unsupported parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

constexpr bool is_power_of_two(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

}  // namespace owsync
