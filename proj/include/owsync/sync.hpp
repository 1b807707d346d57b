#pragma once

#include <optional>
#include <span>
#include <string>

#include "owsync/modem.hpp"

namespace owsync {

enum class MetricKind { PROPOSED, TIAN, SCHMIDL, PARK };

std::string to_string(MetricKind kind);
MetricKind parse_metric(const std::string& name);

/// Candidate offsets d in [first, last] (inclusive), measured from the
/// absolute stream index `origin`.
struct SearchRange {
    std::ptrdiff_t origin = 0;
    std::ptrdiff_t first = 0;
    std::ptrdiff_t last = 0;

    std::size_t size() const noexcept {
        return last < first ? 0 : static_cast<std::size_t>(last - first + 1);
    }
    bool contains(std::ptrdiff_t d) const noexcept { return d >= first && d <= last; }
};

SearchRange intersect(const SearchRange& a, const SearchRange& b);

/// Metric values over a contiguous block of offsets.
struct TimingMetricSeries {
    std::ptrdiff_t first_offset = 0;
    RealVec values;

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    std::ptrdiff_t offset(std::size_t i) const noexcept {
        return first_offset + static_cast<std::ptrdiff_t>(i);
    }
    std::ptrdiff_t last_offset() const noexcept {
        return first_offset + static_cast<std::ptrdiff_t>(values.size()) - 1;
    }
    std::vector<std::ptrdiff_t> offsets() const;
    // Value at offset d; RangeError if d is not covered.
    double at(std::ptrdiff_t d) const;
};

struct SyncResult {
    std::ptrdiff_t d_hat = 0;
    double peak_value = 0.0;
    std::optional<bool> correct;
};

/// Receiver settings for the bipolar-correlation metric. The template is the
/// unclipped training body; only its first `correlation_len` samples are used.
struct SyncConfig {
    Scheme scheme = Scheme::ACO;
    std::size_t n_fft = 256;
    std::size_t correlation_len = 128;
    SearchRange search_range;
    RealVec local_template;

    void validate() const;
};

// Bipolar reconstruction from one clipped N-sample window. Both return N/2
// samples and throw SizeError for any other window length.
//   ACO / DHT: r(n) = w(n) - w(n + N/2)
//   PAM-DMT:   r(0) = 0, r(n) = w(n) - w(N - n)
RealVec reconstruct_bipolar_aco(std::span<const double> window);
RealVec reconstruct_bipolar_pamdmt(std::span<const double> window);
RealVec reconstruct_bipolar(Scheme scheme, std::span<const double> window);

/// Every offset at which `kind` can be evaluated on a stream of the given
/// length without leaving it.
SearchRange valid_range(MetricKind kind, std::size_t n_fft, std::size_t stream_len,
                        std::ptrdiff_t origin);

/// M(d) = (1/L) sum_{n<L} r_d(n) p(n), where r_d is the bipolar signal
/// rebuilt from the window starting at origin + d.
TimingMetricSeries metric_proposed(std::span<const double> stream,
                                   std::span<const double> local_template, Scheme scheme,
                                   std::size_t n_fft, std::size_t correlation_len,
                                   const SearchRange& range);
TimingMetricSeries metric_proposed(std::span<const double> stream, const SyncConfig& config);

/// Simple mirror metric for odd-bin real-valued training:
/// M(d) = 1/(N/8 - 1) sum_{n=1}^{N/4-1} r(c - n) r(c + n), c = origin + d.
/// Peaks at d = N/2 when origin is the training body start.
TimingMetricSeries metric_tian(std::span<const double> stream, std::size_t n_fft,
                               const SearchRange& range);

/// Repeated-halves metric, M = P^2 / R^2 with
/// P = sum_m r(s+m) r(s+m+N/2), R = sum_m r(s+m+N/2)^2, s = origin + d.
/// Zero energy gives M = 0.
TimingMetricSeries metric_schmidl(std::span<const double> stream, std::size_t n_fft,
                                  const SearchRange& range);

/// Mirror-symmetric metric about the body centre c = origin + d + N/2,
/// M = P^2 / R^2 with P = sum_{m=1}^{N/2-1} r(c-m) r(c+m), R = sum r(c+m)^2.
/// Zero energy gives M = 0.
TimingMetricSeries metric_park(std::span<const double> stream, std::size_t n_fft,
                               const SearchRange& range);

// Training symbols for the comparison schemes. All require an ACO config
// and n_fft >= 16, and are scaled to unit unclipped power.
//
// Tian: real PAM symbols on the odd bins, mirrored (X_{N-k} = X_k), with a
// zero sum so the body has zeros at 0, N/4, N/2 and 3N/4.
ModulatedSymbol gen_tian_training(Rng& rng, const ModemConfig& config);
// Schmidl: QAM on the even bins with Hermitian symmetry; body is [A, A].
ModulatedSymbol gen_schmidl_training(Rng& rng, const ModemConfig& config);
// Park: real PAM on the even bins; body is even and N/2-periodic.
ModulatedSymbol gen_park_training(Rng& rng, const ModemConfig& config);

/// Argmax over the series; ties go to the smallest offset. Throws
/// std::invalid_argument on an empty series.
SyncResult detect(const TimingMetricSeries& series,
                  std::optional<std::ptrdiff_t> true_offset = std::nullopt);

}  // namespace owsync
