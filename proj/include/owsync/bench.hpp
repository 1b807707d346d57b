#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "owsync/channel.hpp"
#include "owsync/sync.hpp"

namespace owsync {

struct ExperimentConfig {
    Scheme scheme = Scheme::ACO;
    std::size_t n_fft = 256;
    std::size_t cp_len = 32;
    unsigned constellation_order = 4;
    MetricKind metric = MetricKind::PROPOSED;
    std::size_t correlation_len = 128;
    std::vector<SnrDb> snr_points{SnrDb{}};
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    RealVec channel_taps;
    // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned workers = 0;

    void validate() const;
    ModemConfig modem() const;
};

struct SnrDetection {
    SnrDb snr_db;
    std::size_t correct = 0;
    std::size_t trials = 0;
    double rate = 0.0;
    double ci_halfwidth = 0.0;
};

struct TrialReport {
    enum class Kind { MetricAverage, DetectionSweep };

    Kind kind = Kind::MetricAverage;
    ExperimentConfig config;
    // Per-offset mean at the first SNR point.
    TimingMetricSeries averaged_metric;
    std::vector<SnrDetection> detection;
    double wall_time_s = 0.0;
};

struct WilsonInterval {
    double center = 0.0;
    double halfwidth = 0.0;
    double lower() const noexcept { return center - halfwidth; }
    double upper() const noexcept { return center + halfwidth; }
};

/// Wilson score interval; the default z gives 95% coverage.
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z = 1.959963984540054);

/// Offset at which a correctly synchronized metric peaks, relative to the
/// training body start: N/2 for the Tian metric, 0 for the others.
std::ptrdiff_t expected_offset(MetricKind kind, std::size_t n_fft);

/// [-N - cp, N] around the training body, clipped to where the metric can
/// be evaluated on a three-frame stream.
SearchRange figure_range(const ExperimentConfig& config);

TrialReport run_metric_average(const ExperimentConfig& config);
TrialReport run_detection_sweep(const ExperimentConfig& config);

std::string format_double(double value);
std::string format_snr(const SnrDb& snr);

void write_csv(const TrialReport& report, std::ostream& out);
void emit_csv(const TrialReport& report, const std::filesystem::path& path);
std::string render_svg(const TrialReport& report);
void emit_plot(const TrialReport& report, const std::filesystem::path& path);

}  // namespace owsync
