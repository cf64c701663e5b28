#include "phoenix/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace phoenix {

uint64_t mix_seed(uint64_t base, uint64_t a, uint64_t b) {
    // splitmix64 over the combined counter.
    uint64_t z = base + 0x9e3779b97f4a7c15ULL * (a * 1000003ULL + b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

EvalReport evaluate_trace(const SimTrace& trace, const std::string& algo,
                          const TieredOptions& opts) {
    const AnchorStore store = build_anchor_store(trace.anchors);
    std::map<SegmentId, GlobalFit> fits;
    if (algo == "phoenix") {
        fits = run_phoenix_tiered(store, opts).fits;
    } else if (algo == "rgtr") {
        fits = rgtr_baseline(store);
    } else {
        throw std::invalid_argument("unknown algorithm: " + algo);
    }
    std::vector<std::pair<SegmentId, double>> samples;
    std::vector<double> truth_gts;
    samples.reserve(trace.samples.size());
    truth_gts.reserve(trace.samples.size());
    for (const auto& s : trace.samples) {
        samples.emplace_back(s.seg, s.lc);
        truth_gts.push_back(s.true_gts);
    }
    const AssignResult assigned = assign_timestamps(samples, fits);
    return evaluate(assigned, truth_gts, fits, trace.truth, trace.accounting,
                    trace.duration_s);
}

EvalReport run_pipeline(const SimConfig& config, const Topology& topology,
                        const std::string& algo) {
    const SimTrace trace = run_simulation(config, topology);
    return evaluate_trace(trace, algo);
}

SimConfig desk_config() {
    SimConfig c;
    c.duration_s = 60.0 * 86400.0;
    return c;
}

Topology desk_topology() { return generate_topology("grid", 20, 120.0, 1); }

SimConfig paper_config() { return SimConfig{}; }

Topology paper_topology() { return generate_topology("grid", 53, 250.0, 1); }

namespace {

struct Task {
    std::string param_name;
    double value = 0.0;
    int rep = 0;
    SimConfig config;
    std::string algo;
};

// Outage/fault windows get a randomized start so results are not tied to one
// spot in the simulated period.
double draw_window_start(uint64_t seed, double duration, double length) {
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    const double slack = std::max(duration - length, 0.0);
    std::uniform_real_distribution<double> uni(0.0, slack);
    return uni(rng);
}

std::vector<Task> make_tasks(const SweepSpec& spec) {
    std::vector<Task> tasks;
    auto add = [&](const std::string& name, double value, size_t param_idx,
                   auto&& tweak, const std::string& algo = "phoenix") {
        for (int rep = 0; rep < spec.reps; ++rep) {
            Task t;
            t.param_name = name;
            t.value = value;
            t.rep = rep;
            t.config = spec.base;
            t.config.seed = mix_seed(spec.seed_base, param_idx, rep);
            t.algo = algo;
            tweak(t.config, value, t.config.seed);
            tasks.push_back(std::move(t));
        }
    };

    const double duration = spec.base.duration_s;
    if (spec.scenario == "gps-absence") {
        size_t i = 0;
        for (double days : {0.0, 10.0, 20.0, 30.0, 40.0}) {
            add("outage_days", days, i++, [&](SimConfig& c, double v, uint64_t s) {
                const double len = v * 86400.0;
                if (len > 0.0)
                    c.gps_outage = {draw_window_start(s, duration, len), len};
            });
        }
    } else if (spec.scenario == "t-wakeup") {
        size_t i = 0;
        for (double hours : {1.0, 3.0, 6.0, 12.0, 24.0}) {
            add("t_wakeup_h", hours, i++, [](SimConfig& c, double v, uint64_t) {
                c.t_wakeup_s = v * 3600.0;
            });
        }
    } else if (spec.scenario == "numseg") {
        size_t i = 0;
        for (double n : {1.0, 2.0, 4.0, 8.0, 16.0}) {
            add("numseg", n, i++, [](SimConfig& c, double v, uint64_t) {
                c.numseg = static_cast<int>(v);
            });
        }
    } else if (spec.scenario == "density") {
        size_t i = 0;
        for (double cutoff : {0.01, 0.1, 0.3, 0.5, 0.7}) {
            add("prr_cutoff", cutoff, i++, [](SimConfig& c, double v, uint64_t) {
                c.prr_cutoff = v;
                c.listen_full_window = true;
                c.eviction_policy = EvictionPolicy::none;
            });
        }
    } else if (spec.scenario == "fault-injection") {
        size_t i = 0;
        for (double days : {0.0, 10.0, 20.0, 30.0}) {
            add("fault_days", days, i++, [&](SimConfig& c, double v, uint64_t s) {
                const double len = v * 86400.0;
                if (len > 0.0) {
                    SimConfig::GpsFault fault;
                    fault.start_s = draw_window_start(s, duration, len);
                    fault.length_s = len;
                    c.gps_fault = fault;
                }
            });
        }
    } else if (spec.scenario == "baseline") {
        // Basestation-download emulation: every mote records clean global
        // references; the references disappear for N days.
        size_t i = 0;
        for (double days : {2.0, 6.0, 10.0, 14.0, 18.0}) {
            for (const std::string algo : {"phoenix", "rgtr"}) {
                add("absence_days", days, i, [&](SimConfig& c, double v, uint64_t s) {
                    c.gps_enabled = false;
                    c.basestation_interval_s = 4.0 * 3600.0;
                    const double len = v * 86400.0;
                    if (len > 0.0)
                        c.gps_outage = {draw_window_start(s, duration, len), len};
                }, algo);
            }
            ++i;
        }
    } else {
        throw std::invalid_argument("unknown sweep scenario: " + spec.scenario);
    }
    return tasks;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const std::vector<Task> tasks = make_tasks(spec);
    std::vector<SweepRow> rows(tasks.size());

    const int jobs = std::max(1, spec.jobs);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            SweepRow& row = rows[i];
            row.scenario = spec.scenario;
            row.param_name = t.param_name;
            row.param_value = t.value;
            row.rep = t.rep;
            row.seed = t.config.seed;
            row.algo = t.algo;
            row.config = t.config;
            row.report = run_pipeline(t.config, spec.topology, t.algo);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Row order never depends on scheduling.
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) {
                         if (a.param_value != b.param_value)
                             return a.param_value < b.param_value;
                         if (a.rep != b.rep) return a.rep < b.rep;
                         return a.algo < b.algo;
                     });
    return rows;
}

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    auto fmt = [](double v) {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    out << "scenario,param,value,rep,seed,algo,numseg,eviction_policy,"
           "t_wakeup_s,prr_cutoff,outage_len_s,fault_len_s,"
           "data_loss_pct,ppm_mean,ppm_median,ppm_p99,"
           "alpha_err_median_ppm,alpha_err_std_ppm,beta_err_median_s,"
           "beta_err_std_s,space_overhead_pct,duty_cycle_pct\n";
    for (const auto& r : rows) {
        out << r.scenario << ',' << r.param_name << ',' << fmt(r.param_value)
            << ',' << r.rep << ',' << r.seed << ',' << r.algo << ','
            << r.config.numseg << ',' << to_string(r.config.eviction_policy)
            << ',' << fmt(r.config.t_wakeup_s) << ',' << fmt(r.config.prr_cutoff)
            << ',' << fmt(r.config.gps_outage ? r.config.gps_outage->second : 0.0)
            << ','
            << fmt(r.config.gps_fault ? r.config.gps_fault->length_s : 0.0) << ','
            << fmt(r.report.data_loss_pct) << ',' << fmt(r.report.ppm.mean) << ','
            << fmt(r.report.ppm.median) << ',' << fmt(r.report.ppm.p99) << ','
            << fmt(r.report.alpha_err_median_ppm) << ','
            << fmt(r.report.alpha_err_std_ppm) << ','
            << fmt(r.report.beta_err_median_s) << ','
            << fmt(r.report.beta_err_std_s) << ','
            << fmt(r.report.space_overhead_pct) << ','
            << fmt(r.report.duty_cycle_pct) << '\n';
    }
}

}  // namespace phoenix
