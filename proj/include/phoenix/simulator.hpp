#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "phoenix/clock_model.hpp"
#include "phoenix/sim_config.hpp"

namespace phoenix {

// Mean received power at distance d under log-distance path loss.
double received_power_dbm(double distance_m, const PathLossParams& p);

// Analytic reception probability: per-packet Gaussian shadowing against the
// sensitivity threshold.
double link_prr(double distance_m, const PathLossParams& p, double sensitivity_dbm);

// Bounded set of neighbor segments a mote keeps anchors for, with stale-entry
// eviction and the FCFS/RAND/LLC replacement policies.
class AnchorSlots {
public:
    AnchorSlots() = default;
    AnchorSlots(int numseg, double timeout_s, EvictionPolicy policy)
        : numseg_(numseg), timeout_(timeout_s), policy_(policy) {}

    void reset();
    void begin_window();

    // Registers a heard beacon; returns true when the segment is tracked
    // after this hearing (only tracked segments produce anchor records).
    bool on_heard(SegmentId seg, double sender_lc, double local_now,
                  std::mt19937_64& rng);

    // True once every tracked segment was heard this window and all numseg
    // slots are occupied; the listen window may then end early.
    bool window_complete() const;

    int tracked_count() const { return static_cast<int>(slots_.size()); }

private:
    struct Slot {
        SegmentId seg;
        double last_heard = 0.0;
        bool captured = false;
    };
    struct Candidate {
        double sender_lc = 0.0;
        double last_heard = 0.0;
    };

    void purge_stale(double local_now);

    int numseg_ = 4;
    double timeout_ = 64800.0;
    EvictionPolicy policy_ = EvictionPolicy::fcfs;
    std::vector<Slot> slots_;
    std::map<SegmentId, Candidate> pool_;
};

struct SimTrace {
    struct Sample {
        SegmentId seg;
        double lc = 0.0;
        double true_gts = 0.0;
    };
    struct SegmentTruth {
        SegmentId seg;
        double alpha = 0.0;  // global seconds per local second
        double beta = 0.0;   // global time at lc = 0
        double skew_ppm = 0.0;
    };
    struct MoteAccount {
        int32_t mote_id = 0;
        int64_t beacon_count = 0;
        double beacon_on_s = 0.0;
        double listen_on_s = 0.0;
        int64_t anchor_bytes = 0;
        int64_t sample_bytes = 0;
        double uptime_s = 0.0;
    };

    std::vector<AnchorRecord> anchors;
    std::vector<Sample> samples;
    std::vector<SegmentTruth> truth;
    std::vector<MoteAccount> accounting;
    double duration_s = 0.0;
    uint64_t seed = 0;
};

SimTrace run_simulation(const SimConfig& config, const Topology& topology);

}  // namespace phoenix
