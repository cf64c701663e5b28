#include "phoenix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phoenix {

namespace {

double percentile(std::vector<double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    // Nearest-rank.
    const size_t rank = static_cast<size_t>(
        std::ceil(q * static_cast<double>(sorted.size())));
    return sorted[std::min(rank == 0 ? 0 : rank - 1, sorted.size() - 1)];
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double stddev_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (v.size() - 1));
}

}  // namespace

Summary summarize(std::span<const double> values) {
    Summary s;
    if (values.empty()) return s;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();
    s.median = n % 2 == 1 ? sorted[n / 2]
                          : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    s.p99 = percentile(sorted, 0.99);
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    return s;
}

double ppm_error(double assigned, double truth, double t_delta) {
    if (t_delta <= 0.0) throw MetricsError("zero elapsed time since segment start");
    return std::abs(assigned - truth) / t_delta * 1e6;
}

double data_loss(const DataLossReport& report) {
    if (report.total == 0) throw MetricsError("empty trace");
    return report.loss_pct();
}

double space_overhead(int64_t anchor_bytes, int64_t sample_bytes) {
    const int64_t total = anchor_bytes + sample_bytes;
    if (total == 0) return 0.0;
    return 100.0 * static_cast<double>(anchor_bytes) / total;
}

double duty_cycle(double radio_on_s, double elapsed_s) {
    if (elapsed_s <= 0.0) return 0.0;
    return 100.0 * radio_on_s / elapsed_s;
}

AlphaBetaErrors alpha_beta_errors(
    const std::map<SegmentId, GlobalFit>& estimated,
    std::span<const SimTrace::SegmentTruth> truth) {
    std::vector<double> alpha_errs, beta_errs;
    for (const auto& t : truth) {
        const auto it = estimated.find(t.seg);
        if (it == estimated.end() || it->second.is_sentinel()) continue;
        alpha_errs.push_back(std::abs(it->second.alpha - t.alpha) / t.alpha * 1e6);
        beta_errs.push_back(std::abs(it->second.beta - t.beta));
    }
    if (alpha_errs.empty())
        throw MetricsError("no segment has both an estimate and a truth entry");
    AlphaBetaErrors out;
    out.alpha_median_ppm = median_of(alpha_errs);
    out.alpha_std_ppm = stddev_of(alpha_errs);
    out.beta_median_s = median_of(beta_errs);
    out.beta_std_s = stddev_of(beta_errs);
    out.segments = static_cast<int>(alpha_errs.size());
    return out;
}

EvalReport evaluate(const AssignResult& assigned,
                    std::span<const double> truth_gts,
                    const std::map<SegmentId, GlobalFit>& fits,
                    std::span<const SimTrace::SegmentTruth> truth,
                    std::span<const SimTrace::MoteAccount> accounting,
                    double duration_s) {
    if (assigned.samples.size() != truth_gts.size())
        throw MetricsError("sample/truth length mismatch");

    EvalReport report;
    report.data_loss_pct = data_loss(assigned.loss);

    std::map<SegmentId, double> boot_time;
    for (const auto& t : truth) boot_time[t.seg] = t.beta;

    report.ppm_errors.reserve(assigned.samples.size());
    for (size_t i = 0; i < assigned.samples.size(); ++i) {
        const auto& s = assigned.samples[i];
        if (!s.gts) continue;  // counted in data loss, excluded from ppm
        const auto boot = boot_time.find(s.seg);
        if (boot == boot_time.end())
            throw MetricsError("sample references unknown segment");
        const double t_delta = truth_gts[i] - boot->second;
        if (t_delta <= 0.0) {
            report.zero_elapsed++;
            continue;
        }
        report.ppm_errors.push_back(ppm_error(*s.gts, truth_gts[i], t_delta));
    }
    report.ppm = summarize(report.ppm_errors);

    try {
        const AlphaBetaErrors ab = alpha_beta_errors(fits, truth);
        report.alpha_err_median_ppm = ab.alpha_median_ppm;
        report.alpha_err_std_ppm = ab.alpha_std_ppm;
        report.beta_err_median_s = ab.beta_median_s;
        report.beta_err_std_s = ab.beta_std_s;
        report.segments_compared = ab.segments;
    } catch (const MetricsError&) {
        report.segments_compared = 0;
    }

    int64_t anchor_bytes = 0, sample_bytes = 0;
    double radio_on = 0.0;
    for (const auto& a : accounting) {
        anchor_bytes += a.anchor_bytes;
        sample_bytes += a.sample_bytes;
        radio_on += a.beacon_on_s + a.listen_on_s;
    }
    report.space_overhead_pct = space_overhead(anchor_bytes, sample_bytes);
    report.duty_cycle_pct =
        duty_cycle(radio_on, duration_s * static_cast<double>(accounting.size()));
    return report;
}

}  // namespace phoenix
