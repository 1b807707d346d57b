// Monte-Carlo timing-synchronization benchmark for clipped optical OFDM.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

#include "owsync/bench.hpp"

namespace {

using namespace owsync;

struct Options {
    std::string scheme = "aco";
    std::string metric = "proposed";
    std::size_t nfft = 256;
    std::optional<std::size_t> cp;
    std::optional<unsigned> mod;
    std::optional<std::size_t> corr_len;
    std::vector<std::string> snr;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::vector<double> taps;
    unsigned workers = 0;
    std::string out;
    bool plot = false;
    bool quick = false;
};

SnrDb parse_snr(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return std::nullopt;
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw ConfigError("invalid --snr value '" + text + "' (number of dB or 'inf')");
    }
    return value;
}

ExperimentConfig to_config(const Options& o, bool sweep) {
    ExperimentConfig c;
    c.scheme = parse_scheme(o.scheme);
    c.metric = parse_metric(o.metric);
    c.n_fft = o.nfft;
    c.cp_len = o.cp.value_or(o.nfft / 8);
    c.constellation_order = o.mod.value_or(4u);
    c.correlation_len = o.corr_len.value_or(o.nfft / 2);
    c.snr_points.clear();
    for (const auto& s : o.snr) c.snr_points.push_back(parse_snr(s));
    if (c.snr_points.empty()) {
        if (sweep) {
            for (int i = 0; i <= 6; ++i) c.snr_points.push_back(2.5 * i);
        } else {
            c.snr_points.push_back(SnrDb{});
        }
    }
    c.trials = o.quick ? 1000 : o.trials;
    c.seed = o.seed;
    c.channel_taps = o.taps;
    c.workers = o.workers;
    c.validate();
    return c;
}

std::filesystem::path plot_path(const std::string& out) {
    std::filesystem::path p(out.empty() ? "owsync" : out);
    p.replace_extension(".svg");
    return p;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--scheme", o.scheme, "aco | pamdmt | dht")->capture_default_str();
    cmd->add_option("--metric", o.metric, "proposed | tian | schmidl | park")
        ->capture_default_str();
    cmd->add_option("--nfft", o.nfft, "symbol length N (power of two)")->capture_default_str();
    cmd->add_option("--cp", o.cp, "cyclic prefix length (default N/8)");
    cmd->add_option("--mod", o.mod, "constellation order (QAM for aco, PAM otherwise; default 4)");
    cmd->add_option("--corr-len", o.corr_len, "correlation length L (default N/2)");
    cmd->add_option("--snr", o.snr, "SNR point in dB or 'inf'; repeatable");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials")->capture_default_str();
    cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
    cmd->add_option("--taps", o.taps, "FIR channel taps (taps[0] != 0)");
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "CSV output path (stdout when omitted)");
    cmd->add_flag("--plot", o.plot, "also write an SVG plot next to the CSV");
    cmd->add_flag("--quick", o.quick, "run 1000 trials");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timing synchronization benchmark for ACO-OFDM, PAM-DMT and DHT-OFDM"};
    app.require_subcommand(1);
    Options opts;
    auto* avg = app.add_subcommand("metric-avg", "average a timing metric over random trials");
    auto* sweep = app.add_subcommand("detect-sweep", "detection rate versus SNR");
    add_common(avg, opts);
    add_common(sweep, opts);
    CLI11_PARSE(app, argc, argv);

    try {
        const bool is_sweep = sweep->parsed();
        const ExperimentConfig config = to_config(opts, is_sweep);
        const TrialReport report =
            is_sweep ? run_detection_sweep(config) : run_metric_average(config);
        if (opts.out.empty()) {
            write_csv(report, std::cout);
        } else {
            emit_csv(report, opts.out);
        }
        if (opts.plot) emit_plot(report, plot_path(opts.out));
        std::cerr << "done: " << config.trials << " trials in " << report.wall_time_s << " s\n";
        for (const auto& d : report.detection) {
            std::cerr << "  snr " << format_snr(d.snr_db) << " dB: detection " << d.rate
                      << " +- " << d.ci_halfwidth << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "owsync: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
