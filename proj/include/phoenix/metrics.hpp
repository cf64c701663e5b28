#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "phoenix/clock_model.hpp"
#include "phoenix/reconstruct.hpp"
#include "phoenix/simulator.hpp"

namespace phoenix {

struct MetricsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Summary {
    double median = 0.0;
    double p99 = 0.0;
    double mean = 0.0;
};

struct EvalReport {
    double data_loss_pct = 0.0;
    std::vector<double> ppm_errors;
    Summary ppm;
    int64_t zero_elapsed = 0;  // samples at segment start, excluded from ppm
    double alpha_err_median_ppm = 0.0;
    double alpha_err_std_ppm = 0.0;
    double beta_err_median_s = 0.0;
    double beta_err_std_s = 0.0;
    int segments_compared = 0;
    double space_overhead_pct = 0.0;
    double duty_cycle_pct = 0.0;
};

Summary summarize(std::span<const double> values);

// |assigned - truth| / t_delta * 1e6; t_delta is elapsed real time since the
// segment started. Throws MetricsError for t_delta <= 0.
double ppm_error(double assigned, double truth, double t_delta);

double data_loss(const DataLossReport& report);         // percent
double space_overhead(int64_t anchor_bytes, int64_t sample_bytes);
double duty_cycle(double radio_on_s, double elapsed_s);

struct AlphaBetaErrors {
    double alpha_median_ppm = 0.0;
    double alpha_std_ppm = 0.0;
    double beta_median_s = 0.0;
    double beta_std_s = 0.0;
    int segments = 0;
};

// Per-segment |alpha_hat - alpha|/alpha * 1e6 and |beta_hat - beta|, reported
// as median and standard deviation of the absolute errors. Throws
// MetricsError when no segment has both an estimate and a truth entry.
AlphaBetaErrors alpha_beta_errors(
    const std::map<SegmentId, GlobalFit>& estimated,
    std::span<const SimTrace::SegmentTruth> truth);

// Full report from a reconstruction run against simulator ground truth.
// `truth_gts` maps each sample (in order) to its hidden true timestamp.
EvalReport evaluate(const AssignResult& assigned,
                    std::span<const double> truth_gts,
                    const std::map<SegmentId, GlobalFit>& fits,
                    std::span<const SimTrace::SegmentTruth> truth,
                    std::span<const SimTrace::MoteAccount> accounting,
                    double duration_s);

}  // namespace phoenix
