#include "owsync/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace owsync {

namespace {

// Trials are reduced in fixed blocks, in block order, so the result is the
// same for any worker count.
constexpr std::size_t kBlockTrials = 64;

bool is_baseline(MetricKind kind) { return kind != MetricKind::PROPOSED; }

ModulatedSymbol make_training(const ExperimentConfig& config, const ModemConfig& modem,
                              Rng& rng) {
    switch (config.metric) {
        case MetricKind::PROPOSED: return modulate_with_reference(modem, draw_payload(modem, rng));
        case MetricKind::TIAN: return gen_tian_training(rng, modem);
        case MetricKind::SCHMIDL: return gen_schmidl_training(rng, modem);
        case MetricKind::PARK: return gen_park_training(rng, modem);
    }
    throw ConfigError("unknown metric");
}

TimingMetricSeries evaluate(const ExperimentConfig& config, std::span<const double> stream,
                            std::span<const double> reference, const SearchRange& range) {
    switch (config.metric) {
        case MetricKind::PROPOSED:
            return metric_proposed(stream, reference, config.scheme, config.n_fft,
                                   config.correlation_len, range);
        case MetricKind::TIAN: return metric_tian(stream, config.n_fft, range);
        case MetricKind::SCHMIDL: return metric_schmidl(stream, config.n_fft, range);
        case MetricKind::PARK: return metric_park(stream, config.n_fft, range);
    }
    throw ConfigError("unknown metric");
}

struct BlockResult {
    RealVec metric_sum;
    std::vector<std::size_t> correct;
};

BlockResult run_block(const ExperimentConfig& config, const ModemConfig& modem,
                      const SearchRange& range, std::size_t first_trial, std::size_t end_trial) {
    BlockResult block{RealVec(range.size(), 0.0),
                      std::vector<std::size_t>(config.snr_points.size(), 0)};
    const std::ptrdiff_t target = expected_offset(config.metric, config.n_fft);
    for (std::size_t t = first_trial; t < end_trial; ++t) {
        Rng tx = make_rng(config.seed, t, 0);
        const ModulatedSymbol training = make_training(config, modem, tx);
        const StreamLayout layout = build_stream(modem, training.frame, tx);
        for (std::size_t j = 0; j < config.snr_points.size(); ++j) {
            Rng noise = make_rng(config.seed, t, j + 1);
            const ChannelConfig channel{config.snr_points[j], config.channel_taps, config.seed};
            const RealVec received = apply_channel(layout.samples, channel, noise);
            const TimingMetricSeries series =
                evaluate(config, received, training.bipolar_body, range);
            if (j == 0) {
                for (std::size_t i = 0; i < series.size(); ++i) {
                    block.metric_sum[i] += series.values[i];
                }
            }
            if (*detect(series, target).correct) ++block.correct[j];
        }
    }
    return block;
}

TrialReport run_trials(const ExperimentConfig& config, TrialReport::Kind kind) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    const ModemConfig modem = config.modem();
    const SearchRange range = figure_range(config);

    const std::size_t blocks = (config.trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<BlockResult> results(blocks);
    unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(blocks));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t b = next++; b < blocks; b = next++) {
            const std::size_t first = b * kBlockTrials;
            results[b] = run_block(config, modem, range, first,
                                   std::min(config.trials, first + kBlockTrials));
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    TrialReport report;
    report.kind = kind;
    report.config = config;
    RealVec sum(range.size(), 0.0);
    std::vector<std::size_t> correct(config.snr_points.size(), 0);
    for (const auto& block : results) {
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += block.metric_sum[i];
        for (std::size_t j = 0; j < correct.size(); ++j) correct[j] += block.correct[j];
    }
    const double inv = 1.0 / static_cast<double>(config.trials);
    report.averaged_metric.first_offset = range.first;
    report.averaged_metric.values.resize(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) report.averaged_metric.values[i] = sum[i] * inv;
    for (std::size_t j = 0; j < correct.size(); ++j) {
        const WilsonInterval ci = wilson_interval(correct[j], config.trials);
        report.detection.push_back({config.snr_points[j], correct[j], config.trials,
                                    static_cast<double>(correct[j]) * inv, ci.halfwidth});
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n_fft < 16 || !is_power_of_two(n_fft)) {
        throw ConfigError("n_fft must be a power of two >= 16, got " + std::to_string(n_fft));
    }
    modem().validate();
    if (correlation_len < 1 || correlation_len > n_fft / 2) {
        throw ConfigError("correlation length " + std::to_string(correlation_len) +
                          " outside [1, " + std::to_string(n_fft / 2) + "]");
    }
    if (is_baseline(metric) && scheme != Scheme::ACO) {
        throw ConfigError("the " + to_string(metric) + " metric is only defined for aco");
    }
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (snr_points.empty()) throw ConfigError("at least one SNR point is required");
    for (const auto& snr : snr_points) {
        if (snr && !std::isfinite(*snr)) throw ConfigError("SNR values must be finite or 'inf'");
    }
    ChannelConfig{SnrDb{}, channel_taps, seed}.validate();
}

ModemConfig ExperimentConfig::modem() const {
    return make_modem_config(scheme, n_fft, cp_len, constellation_order);
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) return {};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {center, half};
}

std::ptrdiff_t expected_offset(MetricKind kind, std::size_t n_fft) {
    return kind == MetricKind::TIAN ? static_cast<std::ptrdiff_t>(n_fft / 2) : 0;
}

SearchRange figure_range(const ExperimentConfig& config) {
    const auto n = static_cast<std::ptrdiff_t>(config.n_fft);
    const auto cp = static_cast<std::ptrdiff_t>(config.cp_len);
    const std::ptrdiff_t origin = n + 2 * cp;
    const std::size_t stream_len = 3 * (config.n_fft + config.cp_len);
    const SearchRange wanted{origin, -n - cp, n};
    return intersect(wanted, valid_range(config.metric, config.n_fft, stream_len, origin));
}

TrialReport run_metric_average(const ExperimentConfig& config) {
    return run_trials(config, TrialReport::Kind::MetricAverage);
}

TrialReport run_detection_sweep(const ExperimentConfig& config) {
    return run_trials(config, TrialReport::Kind::DetectionSweep);
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_snr(const SnrDb& snr) { return snr ? format_double(*snr) : "inf"; }

void write_csv(const TrialReport& report, std::ostream& out) {
    const ExperimentConfig& c = report.config;
    const bool average = report.kind == TrialReport::Kind::MetricAverage;
    out << "# owsync " << (average ? "metric-avg" : "detect-sweep") << '\n';
    out << "# scheme=" << to_string(c.scheme) << " metric=" << to_string(c.metric)
        << " nfft=" << c.n_fft << " cp=" << c.cp_len << " mod=" << c.constellation_order
        << " corr_len=" << c.correlation_len << " trials=" << c.trials << " seed=" << c.seed
        << '\n';
    out << "# snr_db=";
    for (std::size_t j = 0; j < c.snr_points.size(); ++j) {
        out << (j ? ";" : "") << format_snr(c.snr_points[j]);
    }
    out << " taps=";
    for (std::size_t k = 0; k < c.channel_taps.size(); ++k) {
        out << (k ? ";" : "") << format_double(c.channel_taps[k]);
    }
    out << '\n';
    out << "# snr reference: noise variance 10^(-snr_db/10) against unit unclipped signal power\n";
    out << "# offsets are relative to the training body start; exact-index detection targets d="
        << expected_offset(c.metric, c.n_fft) << '\n';
    if (average) {
        out << "offset_d,mean_metric,n_trials\n";
        const auto& m = report.averaged_metric;
        for (std::size_t i = 0; i < m.size(); ++i) {
            out << m.offset(i) << ',' << format_double(m.values[i]) << ',' << c.trials << '\n';
        }
    } else {
        out << "snr_db,detection_rate,ci_halfwidth,trials\n";
        for (const auto& d : report.detection) {
            out << format_snr(d.snr_db) << ',' << format_double(d.rate) << ','
                << format_double(d.ci_halfwidth) << ',' << d.trials << '\n';
        }
    }
}

void emit_csv(const TrialReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(report, out);
    if (!out.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

namespace {

struct Point {
    double x;
    double y;
};

std::string svg_polyline_plot(const std::vector<Point>& points, const std::string& title,
                              const std::string& x_label, const std::string& y_label) {
    constexpr double width = 640, height = 400, left = 64, right = 16, top = 36, bottom = 48;
    double x0 = points.front().x, x1 = x0, y0 = points.front().y, y1 = y0;
    for (const auto& p : points) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    if (x1 == x0) x0 -= 1, x1 += 1;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad, y1 += pad;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
    auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * (height - top - bottom); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title
        << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right
        << "\" height=\"" << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    if (y0 < 0 && y1 > 0) {
        svg << "<line x1=\"" << left << "\" x2=\"" << width - right << "\" y1=\"" << sy(0)
            << "\" y2=\"" << sy(0) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double xv = x0 + (x1 - x0) * t / 4.0;
        const double yv = y0 + (y1 - y0) * t / 4.0;
        svg << "<text x=\"" << sx(xv) << "\" y=\"" << height - bottom + 16
            << "\" text-anchor=\"middle\">" << format_double(std::round(xv * 100) / 100)
            << "</text>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
            << format_double(std::round(yv * 1000) / 1000) << "</text>\n";
    }
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 8 << "\" text-anchor=\"middle\">"
        << x_label << "</text>\n";
    svg << "<text transform=\"translate(16 " << height / 2 << ") rotate(-90)\" "
        << "text-anchor=\"middle\">" << y_label << "</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : points) svg << sx(p.x) << ',' << sy(p.y) << ' ';
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

}  // namespace

std::string render_svg(const TrialReport& report) {
    const ExperimentConfig& c = report.config;
    const std::string tag = to_string(c.metric) + " / " + to_string(c.scheme) +
                            ", N=" + std::to_string(c.n_fft) +
                            ", trials=" + std::to_string(c.trials);
    std::vector<Point> points;
    if (report.kind == TrialReport::Kind::MetricAverage) {
        const auto& m = report.averaged_metric;
        for (std::size_t i = 0; i < m.size(); ++i) {
            points.push_back({static_cast<double>(m.offset(i)), m.values[i]});
        }
        if (points.empty()) throw ConfigError("render_svg: empty metric series");
        return svg_polyline_plot(points, "Average timing metric (" + tag + ")", "offset d",
                                 "mean M(d)");
    }
    for (const auto& d : report.detection) {
        if (d.snr_db) points.push_back({*d.snr_db, d.rate});
    }
    if (points.empty()) {
        // Noise-free only: a single marker at x = 0.
        points.push_back({0.0, report.detection.front().rate});
    }
    std::sort(points.begin(), points.end(), [](Point a, Point b) { return a.x < b.x; });
    return svg_polyline_plot(points, "Detection rate (" + tag + ")", "SNR (dB)",
                             "P(correct)");
}

void emit_plot(const TrialReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << render_svg(report);
    if (!out.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace owsync
