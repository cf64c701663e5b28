#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace phoenix {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EvictionPolicy { fcfs, rand, llc, none };

std::string to_string(EvictionPolicy p);
EvictionPolicy eviction_policy_from_string(const std::string& s);

struct PathLossParams {
    double pr_d0_dbm = -59.28;
    double eta = 2.04;
    double sigma_db = 6.28;
    double d0_m = 2.0;
};

// Segment-length model. The non-parametric distribution behind the defaults
// is unavailable, so the stand-in is a log-normal with a 4-day median; an
// empirical CDF file can replace it (docs/formats.md).
struct SegmentModel {
    enum class Kind { fixed, lognormal, cdf } kind = Kind::lognormal;
    double fixed_s = 0.0;
    double median_days = 4.0;
    double sigma = 0.75;
    std::vector<std::pair<double, double>> cdf;  // (length_s, cumulative prob)
    std::string raw;

    static SegmentModel parse(const std::string& spec);
    std::string spec() const;
    double draw(std::mt19937_64& rng) const;
};

struct SimConfig {
    double duration_s = 365.0 * 86400.0;
    double sample_interval_s = 600.0;
    int sample_bytes = 26;

    double t_beacon_s = 30.0;
    double t_wakeup_s = 21600.0;
    double t_listen_s = 30.0;
    double t_sync_s = 21600.0;

    double skew_ppm_min = 40.0;
    double skew_ppm_max = 70.0;

    double p_down = 0.2;
    double downtime_min_s = 0.0;
    double downtime_max_s = 4.0 * 3600.0;

    double comm_delay_min_s = 0.005;
    double comm_delay_max_s = 0.015;

    PathLossParams path_loss;
    double sensitivity_dbm = -94.0;
    double prr_cutoff = 0.01;  // links below this reception probability are not simulated

    int numseg = 4;
    EvictionPolicy eviction_policy = EvictionPolicy::fcfs;
    double eviction_timeout_factor = 3.0;
    bool listen_full_window = false;  // disable early radio shutdown

    bool gps_enabled = true;
    std::optional<std::pair<double, double>> gps_outage;  // (start_s, length_s)
    struct GpsFault {
        double start_s = 0.0;
        double length_s = 0.0;
        double mu_s = 3600.0;
        double sigma_s = 600.0;
    };
    std::optional<GpsFault> gps_fault;

    // When set, every mote records a clean global reference at this local
    // interval (basestation-download emulation); the outage window applies.
    std::optional<double> basestation_interval_s;

    double beacon_airtime_s = 0.0225;
    int anchor_record_bytes = 16;

    bool exact_timestamps = false;  // skip microsecond quantization (in-process analysis)

    uint64_t seed = 1;
    SegmentModel segment_model;

    void validate() const;
};

struct Topology {
    struct Mote {
        int32_t mote_id;
        double x;
        double y;
    };
    std::vector<Mote> motes;
    int32_t gps_mote = 0;
};

Topology generate_topology(const std::string& kind, int n, double extent,
                           uint64_t seed);

}  // namespace phoenix
