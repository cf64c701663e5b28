#include "phoenix/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace phoenix {

double received_power_dbm(double distance_m, const PathLossParams& p) {
    return p.pr_d0_dbm - 10.0 * p.eta * std::log10(distance_m / p.d0_m);
}

double link_prr(double distance_m, const PathLossParams& p,
                double sensitivity_dbm) {
    const double margin = received_power_dbm(distance_m, p) - sensitivity_dbm;
    if (p.sigma_db <= 0.0) return margin > 0.0 ? 1.0 : 0.0;
    // P(margin + N(0, sigma) > 0)
    const double prr = 0.5 * std::erfc(-margin / (p.sigma_db * std::sqrt(2.0)));
    return std::clamp(prr, 0.0, 1.0);
}

void AnchorSlots::reset() {
    slots_.clear();
    pool_.clear();
}

void AnchorSlots::begin_window() {
    for (auto& s : slots_) s.captured = false;
}

void AnchorSlots::purge_stale(double local_now) {
    std::erase_if(slots_, [&](const Slot& s) {
        return local_now - s.last_heard > timeout_;
    });
    std::erase_if(pool_, [&](const auto& kv) {
        return local_now - kv.second.last_heard > timeout_;
    });
}

bool AnchorSlots::on_heard(SegmentId seg, double sender_lc, double local_now,
                           std::mt19937_64& rng) {
    purge_stale(local_now);
    for (auto& s : slots_) {
        if (s.seg == seg) {
            s.last_heard = local_now;
            s.captured = true;
            return true;
        }
    }
    if (policy_ == EvictionPolicy::none) {
        // Unbounded tracking (density experiments).
        slots_.push_back({seg, local_now, true});
        return true;
    }
    pool_[seg] = {sender_lc, local_now};
    if (static_cast<int>(slots_.size()) >= numseg_) return false;

    SegmentId pick = seg;
    switch (policy_) {
        case EvictionPolicy::fcfs:
            break;
        case EvictionPolicy::rand: {
            std::uniform_int_distribution<size_t> idx(0, pool_.size() - 1);
            pick = std::next(pool_.begin(), idx(rng))->first;
            break;
        }
        case EvictionPolicy::llc: {
            double best = -1.0;
            for (const auto& [s, cand] : pool_) {
                if (cand.sender_lc > best) {
                    best = cand.sender_lc;
                    pick = s;
                }
            }
            break;
        }
        case EvictionPolicy::none:
            break;
    }
    const Candidate cand = pool_.at(pick);
    pool_.erase(pick);
    const bool is_heard = pick == seg;
    slots_.push_back({pick, cand.last_heard, is_heard});
    return is_heard;
}

bool AnchorSlots::window_complete() const {
    if (policy_ == EvictionPolicy::none) return false;
    if (static_cast<int>(slots_.size()) < numseg_) return false;
    return std::all_of(slots_.begin(), slots_.end(),
                       [](const Slot& s) { return s.captured; });
}

namespace {

enum class EvKind : uint8_t {
    segment_end,
    reboot,
    beacon,
    listen_start,
    listen_end,
    sample,
    gps_sync,
    bs_sync,
    reception,
};

struct Event {
    double t = 0.0;
    uint64_t seq = 0;
    EvKind kind = EvKind::reboot;
    int mote = 0;
    uint32_t epoch = 0;
    uint32_t window = 0;     // listen_end
    SegmentId sender_seg;    // reception
    double lc_s = 0.0;       // reception

    Event() = default;
    Event(double t_, uint64_t seq_, EvKind kind_, int mote_, uint32_t epoch_,
          uint32_t window_ = 0)
        : t(t_), seq(seq_), kind(kind_), mote(mote_), epoch(epoch_),
          window(window_) {}
};

struct EventOrder {
    bool operator()(const Event& a, const Event& b) const {
        if (a.t != b.t) return a.t > b.t;
        return a.seq > b.seq;
    }
};

struct MoteState {
    int32_t id = 0;
    double x = 0.0, y = 0.0;

    bool up = false;
    uint32_t epoch = 0;
    int32_t reboot_count = -1;
    double t_boot = 0.0;
    double rate = 1.0;   // local seconds per real second
    double alpha = 1.0;  // 1/rate
    double beta = 0.0;   // quantized boot time
    double skew_ppm = 0.0;
    double beacon_phase = 0.0;

    int64_t beacon_k = 0;
    int64_t sample_k = 1;
    int64_t sync_k = 1;
    int64_t bs_k = 1;
    int64_t wakeup_k = 1;

    bool listening = false;
    uint32_t window_seq = 0;
    double listen_start_t = 0.0;

    AnchorSlots slots;
    SimTrace::MoteAccount account;

    SegmentId segment() const { return {id, reboot_count}; }
    double lc(double t) const { return (t - t_boot) * rate; }
};

class Engine {
public:
    Engine(const SimConfig& cfg, const Topology& topo)
        : cfg_(cfg), rng_(cfg.seed) {
        cfg_.validate();
        motes_.reserve(topo.motes.size());
        for (const auto& m : topo.motes) {
            MoteState ms;
            ms.id = m.mote_id;
            ms.x = m.x;
            ms.y = m.y;
            ms.slots = AnchorSlots(cfg_.numseg,
                                   cfg_.eviction_timeout_factor * cfg_.t_wakeup_s,
                                   cfg_.eviction_policy);
            ms.account.mote_id = m.mote_id;
            motes_.push_back(std::move(ms));
        }
        gps_index_ = -1;
        for (size_t i = 0; i < motes_.size(); ++i) {
            if (motes_[i].id == topo.gps_mote) gps_index_ = static_cast<int>(i);
        }
        if (gps_index_ < 0) throw ConfigError("gps mote not present in topology");
        build_links();
    }

    SimTrace run() {
        trace_.seed = cfg_.seed;
        trace_.duration_s = cfg_.duration_s;
        for (size_t i = 0; i < motes_.size(); ++i) {
            push({0.0, next_seq(), EvKind::reboot, static_cast<int>(i),
                  motes_[i].epoch});
        }
        while (!queue_.empty()) {
            const Event ev = queue_.top();
            queue_.pop();
            if (ev.t > cfg_.duration_s) break;
            dispatch(ev);
        }
        finalize();
        return std::move(trace_);
    }

private:
    void build_links() {
        const size_t n = motes_.size();
        link_ok_.assign(n * n, false);
        pr_mean_.assign(n * n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double dx = motes_[i].x - motes_[j].x;
                const double dy = motes_[i].y - motes_[j].y;
                const double d = std::max(std::hypot(dx, dy), 1e-3);
                const double prr =
                    link_prr(d, cfg_.path_loss, cfg_.sensitivity_dbm);
                if (prr >= cfg_.prr_cutoff) {
                    link_ok_[i * n + j] = true;
                    pr_mean_[i * n + j] =
                        received_power_dbm(d, cfg_.path_loss);
                }
            }
        }
    }

    uint64_t next_seq() { return seq_++; }

    void push(Event ev) { queue_.push(ev); }

    double quant(double s) const {
        return cfg_.exact_timestamps ? s : quantize_us(s);
    }

    void dispatch(const Event& ev) {
        MoteState& m = motes_[ev.mote];
        switch (ev.kind) {
            case EvKind::reboot:
                if (ev.epoch != m.epoch) return;
                start_segment(m, ev.t);
                return;
            default:
                break;
        }
        if (ev.epoch != m.epoch || !m.up) return;
        switch (ev.kind) {
            case EvKind::segment_end: end_segment(m, ev.t); break;
            case EvKind::beacon: on_beacon(m, ev.t); break;
            case EvKind::listen_start: on_listen_start(m, ev.t); break;
            case EvKind::listen_end: on_listen_end(m, ev); break;
            case EvKind::sample: on_sample(m, ev.t); break;
            case EvKind::gps_sync: on_gps_sync(m, ev.t); break;
            case EvKind::bs_sync: on_bs_sync(m, ev.t); break;
            case EvKind::reception: on_reception(m, ev); break;
            default: break;
        }
    }

    void start_segment(MoteState& m, double t) {
        m.up = true;
        m.t_boot = t;
        m.reboot_count++;
        std::uniform_real_distribution<double> skew(cfg_.skew_ppm_min,
                                                    cfg_.skew_ppm_max);
        m.skew_ppm = skew(rng_);
        m.rate = 1.0 + m.skew_ppm * 1e-6;
        m.alpha = 1.0 / m.rate;
        m.beta = quant(t);
        trace_.truth.push_back({m.segment(), m.alpha, m.beta, m.skew_ppm});

        const double seg_len = cfg_.segment_model.draw(rng_);
        push({t + seg_len, next_seq(), EvKind::segment_end,
              mote_index(m), m.epoch});

        std::uniform_real_distribution<double> phase(0.0, cfg_.t_beacon_s);
        m.beacon_phase = phase(rng_);
        m.beacon_k = 0;
        push({t + m.beacon_phase / m.rate, next_seq(), EvKind::beacon,
              mote_index(m), m.epoch});

        m.sample_k = 1;
        push({t + cfg_.sample_interval_s / m.rate, next_seq(), EvKind::sample,
              mote_index(m), m.epoch});

        if (cfg_.gps_enabled && mote_index(m) == gps_index_) {
            m.sync_k = 1;
            push({t + cfg_.t_sync_s / m.rate, next_seq(), EvKind::gps_sync,
                  mote_index(m), m.epoch});
        }
        if (cfg_.basestation_interval_s) {
            m.bs_k = 1;
            push({t + *cfg_.basestation_interval_s / m.rate, next_seq(),
                  EvKind::bs_sync, mote_index(m), m.epoch});
        }

        // Post-reboot listen window, then periodic wakeups.
        m.slots.reset();
        open_window(m, t);
        m.wakeup_k = 1;
        push({t + cfg_.t_wakeup_s / m.rate, next_seq(), EvKind::listen_start,
              mote_index(m), m.epoch});
    }

    void end_segment(MoteState& m, double t) {
        close_segment(m, t);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double t_reboot = t;
        if (uni(rng_) < cfg_.p_down) {
            std::uniform_real_distribution<double> down(cfg_.downtime_min_s,
                                                        cfg_.downtime_max_s);
            t_reboot = t + down(rng_);
        }
        if (t_reboot <= cfg_.duration_s) {
            push({t_reboot, next_seq(), EvKind::reboot, mote_index(m), m.epoch});
        }
    }

    void close_segment(MoteState& m, double t) {
        if (m.listening) stop_listening(m, t);
        m.account.uptime_s += t - m.t_boot;
        m.up = false;
        m.epoch++;
    }

    void open_window(MoteState& m, double t) {
        m.listening = true;
        m.listen_start_t = t;
        m.window_seq++;
        m.slots.begin_window();
        listeners_.insert(std::lower_bound(listeners_.begin(), listeners_.end(),
                                           mote_index(m)),
                          mote_index(m));
        push({t + cfg_.t_listen_s / m.rate, next_seq(), EvKind::listen_end,
              mote_index(m), m.epoch, m.window_seq});
    }

    void stop_listening(MoteState& m, double t) {
        m.account.listen_on_s += t - m.listen_start_t;
        m.listening = false;
        const auto it = std::lower_bound(listeners_.begin(), listeners_.end(),
                                         mote_index(m));
        if (it != listeners_.end() && *it == mote_index(m)) listeners_.erase(it);
    }

    void on_listen_start(MoteState& m, double t) {
        if (!m.listening) open_window(m, t);
        m.wakeup_k++;
        push({m.t_boot + (m.wakeup_k * cfg_.t_wakeup_s) / m.rate, next_seq(),
              EvKind::listen_start, mote_index(m), m.epoch});
    }

    void on_listen_end(MoteState& m, const Event& ev) {
        if (m.listening && ev.window == m.window_seq) stop_listening(m, ev.t);
    }

    void on_beacon(MoteState& m, double t) {
        m.account.beacon_count++;
        m.account.beacon_on_s += cfg_.beacon_airtime_s;
        if (!listeners_.empty()) {
            const double lc_s =
                quant(m.beacon_phase + double(m.beacon_k) * cfg_.t_beacon_s);
            const size_t n = motes_.size();
            const size_t si = mote_index(m);
            std::normal_distribution<double> shadow(0.0, cfg_.path_loss.sigma_db);
            std::uniform_real_distribution<double> delay(cfg_.comm_delay_min_s,
                                                         cfg_.comm_delay_max_s);
            for (const int li : listeners_) {
                if (li == static_cast<int>(si)) continue;
                if (!link_ok_[si * n + li]) continue;
                const double pr = pr_mean_[si * n + li] + shadow(rng_);
                if (pr <= cfg_.sensitivity_dbm) continue;
                Event rx{t + delay(rng_), next_seq(), EvKind::reception, li,
                         motes_[li].epoch};
                rx.sender_seg = m.segment();
                rx.lc_s = lc_s;
                push(rx);
            }
        }
        m.beacon_k++;
        push({m.t_boot + (m.beacon_phase + double(m.beacon_k) * cfg_.t_beacon_s) /
                             m.rate,
              next_seq(), EvKind::beacon, mote_index(m), m.epoch});
    }

    void on_reception(MoteState& m, const Event& ev) {
        if (!m.listening) return;
        const double local_now = m.lc(ev.t);
        const bool tracked =
            m.slots.on_heard(ev.sender_seg, ev.lc_s, local_now, rng_);
        if (tracked) {
            trace_.anchors.push_back(
                {m.segment(), quant(local_now), ev.sender_seg, ev.lc_s});
            m.account.anchor_bytes += cfg_.anchor_record_bytes;
        }
        if (!cfg_.listen_full_window && m.slots.window_complete()) {
            stop_listening(m, ev.t);
        }
    }

    void on_sample(MoteState& m, double t) {
        const double lc = quant(double(m.sample_k) * cfg_.sample_interval_s);
        const double gts = quant(m.alpha * lc + m.beta);
        trace_.samples.push_back({m.segment(), lc, gts});
        m.account.sample_bytes += cfg_.sample_bytes;
        m.sample_k++;
        push({m.t_boot + (double(m.sample_k) * cfg_.sample_interval_s) / m.rate,
              next_seq(), EvKind::sample, mote_index(m), m.epoch});
        (void)t;
    }

    bool in_outage(double t) const {
        return cfg_.gps_outage && t >= cfg_.gps_outage->first &&
               t < cfg_.gps_outage->first + cfg_.gps_outage->second;
    }

    void record_global_ref(MoteState& m, double lc_raw, double t, bool faultable) {
        if (in_outage(t)) return;
        const double lc = quant(lc_raw);
        double gts = m.alpha * lc + m.beta;
        if (faultable && cfg_.gps_fault && t >= cfg_.gps_fault->start_s &&
            t < cfg_.gps_fault->start_s + cfg_.gps_fault->length_s) {
            std::normal_distribution<double> noise(cfg_.gps_fault->mu_s,
                                                   cfg_.gps_fault->sigma_s);
            gts += noise(rng_);
        }
        trace_.anchors.push_back({m.segment(), lc, m.segment(), quant(gts)});
        m.account.anchor_bytes += cfg_.anchor_record_bytes;
    }

    void on_gps_sync(MoteState& m, double t) {
        record_global_ref(m, double(m.sync_k) * cfg_.t_sync_s, t, true);
        m.sync_k++;
        push({m.t_boot + (double(m.sync_k) * cfg_.t_sync_s) / m.rate, next_seq(),
              EvKind::gps_sync, mote_index(m), m.epoch});
    }

    void on_bs_sync(MoteState& m, double t) {
        record_global_ref(m, double(m.bs_k) * *cfg_.basestation_interval_s, t,
                          false);
        m.bs_k++;
        push({m.t_boot + (double(m.bs_k) * *cfg_.basestation_interval_s) / m.rate,
              next_seq(), EvKind::bs_sync, mote_index(m), m.epoch});
    }

    void finalize() {
        for (auto& m : motes_) {
            if (m.up) {
                if (m.listening) stop_listening(m, cfg_.duration_s);
                m.account.uptime_s += cfg_.duration_s - m.t_boot;
                m.up = false;
            }
            trace_.accounting.push_back(m.account);
        }
    }

    int mote_index(const MoteState& m) const {
        return static_cast<int>(&m - motes_.data());
    }

    SimConfig cfg_;
    std::mt19937_64 rng_;
    std::vector<MoteState> motes_;
    int gps_index_ = -1;
    std::vector<bool> link_ok_;
    std::vector<double> pr_mean_;
    std::vector<int> listeners_;  // indices of motes with radio on, sorted
    std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
    uint64_t seq_ = 0;
    SimTrace trace_;
};

}  // namespace

SimTrace run_simulation(const SimConfig& config, const Topology& topology) {
    Engine engine(config, topology);
    return engine.run();
}

}  // namespace phoenix
