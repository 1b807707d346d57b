#include "owsync/sync.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "owsync/constellation.hpp"
#include "owsync/transforms.hpp"

namespace owsync {

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::PROPOSED: return "proposed";
        case MetricKind::TIAN: return "tian";
        case MetricKind::SCHMIDL: return "schmidl";
        case MetricKind::PARK: return "park";
    }
    return "unknown";
}

MetricKind parse_metric(const std::string& name) {
    if (name == "proposed") return MetricKind::PROPOSED;
    if (name == "tian") return MetricKind::TIAN;
    if (name == "schmidl") return MetricKind::SCHMIDL;
    if (name == "park") return MetricKind::PARK;
    throw ConfigError("unknown metric '" + name + "' (expected proposed, tian, schmidl or park)");
}

SearchRange intersect(const SearchRange& a, const SearchRange& b) {
    if (a.origin != b.origin) throw ConfigError("cannot intersect ranges with different origins");
    return {a.origin, std::max(a.first, b.first), std::min(a.last, b.last)};
}

std::vector<std::ptrdiff_t> TimingMetricSeries::offsets() const {
    std::vector<std::ptrdiff_t> out(values.size());
    std::iota(out.begin(), out.end(), first_offset);
    return out;
}

double TimingMetricSeries::at(std::ptrdiff_t d) const {
    if (d < first_offset || d > last_offset()) {
        throw RangeError("offset " + std::to_string(d) + " outside the metric series");
    }
    return values[static_cast<std::size_t>(d - first_offset)];
}

void SyncConfig::validate() const {
    if (n_fft < 4 || !is_power_of_two(n_fft)) throw ConfigError("n_fft must be a power of two");
    if (correlation_len < 1 || correlation_len > n_fft / 2) {
        throw ConfigError("correlation length " + std::to_string(correlation_len) +
                          " outside [1, " + std::to_string(n_fft / 2) + "]");
    }
    if (local_template.size() < correlation_len) {
        throw ConfigError("local template shorter than the correlation length");
    }
}

namespace {

void require_window(std::size_t size, const char* op) {
    if (size < 4 || !is_power_of_two(size)) {
        throw SizeError(std::string(op) + ": window length " + std::to_string(size) +
                        " is not a power of two >= 4");
    }
}

void require_inside(const SearchRange& range, const SearchRange& valid, const char* op) {
    if (range.size() == 0) return;
    if (range.first < valid.first || range.last > valid.last) {
        throw RangeError(std::string(op) + ": offsets [" + std::to_string(range.first) + ", " +
                         std::to_string(range.last) + "] leave the stream (valid [" +
                         std::to_string(valid.first) + ", " + std::to_string(valid.last) + "])");
    }
}

void require_baseline_config(const ModemConfig& config, const char* op) {
    config.validate();
    if (config.scheme != Scheme::ACO) {
        throw ConfigError(std::string(op) + ": comparison training symbols are defined for ACO");
    }
    if (config.n_fft < 16) throw ConfigError(std::string(op) + ": n_fft must be >= 16");
}

// Even-symmetric real signal from a real spectrum that is zero off `bins`,
// with X_{N-k} = X_k.
RealVec real_mirrored_body(std::span<const std::size_t> bins, std::span<const double> values,
                           std::size_t n_fft) {
    ComplexVec spectrum(n_fft);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        spectrum[bins[i]] = values[i];
        spectrum[n_fft - bins[i]] = values[i];
    }
    return idft_real(spectrum);
}

ModulatedSymbol finish_training(const ModemConfig& config, RealVec body) {
    UnipolarFrame frame{clip_negative(add_cp(body, config.cp_len))};
    return {std::move(body), std::move(frame)};
}

// sqrt(M)-PAM for a square M-QAM order.
PamConstellation axis_pam(const ModemConfig& config) {
    return QamConstellation(config.constellation_order).axis();
}

std::vector<std::size_t> bin_sequence(std::size_t first, std::size_t end) {
    std::vector<std::size_t> bins;
    for (std::size_t k = first; k < end; k += 2) bins.push_back(k);
    return bins;
}

}  // namespace

RealVec reconstruct_bipolar_aco(std::span<const double> window) {
    require_window(window.size(), "reconstruct_bipolar_aco");
    const std::size_t half = window.size() / 2;
    RealVec out(half);
    for (std::size_t n = 0; n < half; ++n) out[n] = window[n] - window[n + half];
    return out;
}

RealVec reconstruct_bipolar_pamdmt(std::span<const double> window) {
    require_window(window.size(), "reconstruct_bipolar_pamdmt");
    const std::size_t n_fft = window.size();
    RealVec out(n_fft / 2, 0.0);
    for (std::size_t n = 1; n < n_fft / 2; ++n) out[n] = window[n] - window[n_fft - n];
    return out;
}

RealVec reconstruct_bipolar(Scheme scheme, std::span<const double> window) {
    return scheme == Scheme::PAM_DMT ? reconstruct_bipolar_pamdmt(window)
                                     : reconstruct_bipolar_aco(window);
}

SearchRange valid_range(MetricKind kind, std::size_t n_fft, std::size_t stream_len,
                        std::ptrdiff_t origin) {
    const auto n = static_cast<std::ptrdiff_t>(n_fft);
    const auto len = static_cast<std::ptrdiff_t>(stream_len);
    switch (kind) {
        case MetricKind::PROPOSED:
        case MetricKind::SCHMIDL:
            return {origin, -origin, len - n - origin};
        case MetricKind::TIAN: {
            const std::ptrdiff_t reach = n / 4 - 1;
            return {origin, reach - origin, len - 1 - reach - origin};
        }
        case MetricKind::PARK:
            // Centre c = origin + d + N/2 needs c +- (N/2 - 1) inside.
            return {origin, -1 - origin, len - n - origin};
    }
    throw ConfigError("unknown metric");
}

TimingMetricSeries metric_proposed(std::span<const double> stream,
                                   std::span<const double> local_template, Scheme scheme,
                                   std::size_t n_fft, std::size_t correlation_len,
                                   const SearchRange& range) {
    if (n_fft < 4 || !is_power_of_two(n_fft)) {
        throw SizeError("metric_proposed: n_fft is not a power of two >= 4");
    }
    if (correlation_len < 1 || correlation_len > n_fft / 2) {
        throw ConfigError("metric_proposed: correlation length outside [1, N/2]");
    }
    if (local_template.size() < correlation_len) {
        throw SizeError("metric_proposed: template shorter than the correlation length");
    }
    require_inside(range, valid_range(MetricKind::PROPOSED, n_fft, stream.size(), range.origin),
                   "metric_proposed");

    TimingMetricSeries series{range.first, RealVec(range.size())};
    const std::size_t half = n_fft / 2;
    const double inv_len = 1.0 / static_cast<double>(correlation_len);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double* w = stream.data() + (range.origin + series.offset(i));
        double acc = 0.0;
        // Reconstruction fused into the correlation.
        if (scheme == Scheme::PAM_DMT) {
            for (std::size_t n = 1; n < correlation_len; ++n) {
                acc += (w[n] - w[n_fft - n]) * local_template[n];
            }
        } else {
            for (std::size_t n = 0; n < correlation_len; ++n) {
                acc += (w[n] - w[n + half]) * local_template[n];
            }
        }
        series.values[i] = acc * inv_len;
    }
    return series;
}

TimingMetricSeries metric_proposed(std::span<const double> stream, const SyncConfig& config) {
    config.validate();
    return metric_proposed(stream, config.local_template, config.scheme, config.n_fft,
                           config.correlation_len, config.search_range);
}

TimingMetricSeries metric_tian(std::span<const double> stream, std::size_t n_fft,
                               const SearchRange& range) {
    if (n_fft < 16 || !is_power_of_two(n_fft)) {
        throw SizeError("metric_tian: n_fft must be a power of two >= 16");
    }
    require_inside(range, valid_range(MetricKind::TIAN, n_fft, stream.size(), range.origin),
                   "metric_tian");
    TimingMetricSeries series{range.first, RealVec(range.size())};
    const std::size_t reach = n_fft / 4 - 1;
    const double norm = 1.0 / (static_cast<double>(n_fft) / 8.0 - 1.0);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double* c = stream.data() + (range.origin + series.offset(i));
        double acc = 0.0;
        for (std::size_t n = 1; n <= reach; ++n) {
            acc += c[-static_cast<std::ptrdiff_t>(n)] * c[n];
        }
        series.values[i] = acc * norm;
    }
    return series;
}

namespace {

double normalized_square(double p, double r) { return r > 0.0 ? (p * p) / (r * r) : 0.0; }

}  // namespace

TimingMetricSeries metric_schmidl(std::span<const double> stream, std::size_t n_fft,
                                  const SearchRange& range) {
    if (n_fft < 4 || !is_power_of_two(n_fft)) {
        throw SizeError("metric_schmidl: n_fft is not a power of two >= 4");
    }
    require_inside(range, valid_range(MetricKind::SCHMIDL, n_fft, stream.size(), range.origin),
                   "metric_schmidl");
    TimingMetricSeries series{range.first, RealVec(range.size())};
    const std::size_t half = n_fft / 2;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double* s = stream.data() + (range.origin + series.offset(i));
        double p = 0.0;
        double r = 0.0;
        for (std::size_t m = 0; m < half; ++m) {
            p += s[m] * s[m + half];
            r += s[m + half] * s[m + half];
        }
        series.values[i] = normalized_square(p, r);
    }
    return series;
}

TimingMetricSeries metric_park(std::span<const double> stream, std::size_t n_fft,
                               const SearchRange& range) {
    if (n_fft < 4 || !is_power_of_two(n_fft)) {
        throw SizeError("metric_park: n_fft is not a power of two >= 4");
    }
    require_inside(range, valid_range(MetricKind::PARK, n_fft, stream.size(), range.origin),
                   "metric_park");
    TimingMetricSeries series{range.first, RealVec(range.size())};
    const std::size_t half = n_fft / 2;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double* c = stream.data() + (range.origin + series.offset(i) +
                                           static_cast<std::ptrdiff_t>(half));
        double p = 0.0;
        double r = 0.0;
        for (std::size_t m = 1; m < half; ++m) {
            const double ahead = c[m];
            p += c[-static_cast<std::ptrdiff_t>(m)] * ahead;
            r += ahead * ahead;
        }
        series.values[i] = normalized_square(p, r);
    }
    return series;
}

ModulatedSymbol gen_tian_training(Rng& rng, const ModemConfig& config) {
    require_baseline_config(config, "gen_tian_training");
    const std::size_t n_fft = config.n_fft;
    const PamConstellation pam = axis_pam(config);
    const std::vector<std::size_t> bins = bin_sequence(1, n_fft / 2);  // N/4 odd bins

    // Half the bins get fresh symbols, the rest their negatives, so the
    // spectrum sums to zero and x(0) = x(N/2) = 0.
    RealVec values;
    values.reserve(bins.size());
    for (std::size_t i = 0; i < bins.size() / 2; ++i) {
        const double v = pam.draw(rng);
        values.push_back(v);
        values.push_back(-v);
    }
    std::shuffle(values.begin(), values.end(), rng);

    // Same active-bin count as ACO data, hence the same scale.
    const double scale = std::sqrt(2.0 * static_cast<double>(n_fft));
    for (auto& v : values) v *= scale;
    RealVec body = real_mirrored_body(bins, values, n_fft);
    // These samples are zero analytically; drop the rounding residue.
    for (std::size_t q = 0; q < 4; ++q) body[q * n_fft / 4] = 0.0;
    return finish_training(config, std::move(body));
}

ModulatedSymbol gen_schmidl_training(Rng& rng, const ModemConfig& config) {
    require_baseline_config(config, "gen_schmidl_training");
    const std::size_t n_fft = config.n_fft;
    const QamConstellation qam(config.constellation_order);
    const std::vector<std::size_t> bins = bin_sequence(2, n_fft / 2);  // N/4 - 1 even bins
    const double scale =
        static_cast<double>(n_fft) / std::sqrt(2.0 * static_cast<double>(bins.size()));

    ComplexVec spectrum(n_fft);
    for (const std::size_t k : bins) {
        const Complex v = qam.draw(rng) * scale;
        spectrum[k] = v;
        spectrum[n_fft - k] = std::conj(v);
    }
    return finish_training(config, idft_real(spectrum));
}

ModulatedSymbol gen_park_training(Rng& rng, const ModemConfig& config) {
    require_baseline_config(config, "gen_park_training");
    const std::size_t n_fft = config.n_fft;
    const PamConstellation pam = axis_pam(config);
    const std::vector<std::size_t> bins = bin_sequence(2, n_fft / 2);
    const double scale =
        static_cast<double>(n_fft) / std::sqrt(2.0 * static_cast<double>(bins.size()));

    RealVec values(bins.size());
    for (auto& v : values) v = pam.draw(rng) * scale;
    return finish_training(config, real_mirrored_body(bins, values, n_fft));
}

SyncResult detect(const TimingMetricSeries& series, std::optional<std::ptrdiff_t> true_offset) {
    if (series.empty()) throw std::invalid_argument("detect: empty metric series");
    // max_element keeps the first of equal maxima, i.e. the smallest offset.
    const auto best = std::max_element(series.values.begin(), series.values.end());
    SyncResult result;
    result.d_hat = series.offset(static_cast<std::size_t>(best - series.values.begin()));
    result.peak_value = *best;
    if (true_offset) result.correct = (result.d_hat == *true_offset);
    return result;
}

}  // namespace owsync
