#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "phoenix/metrics.hpp"
#include "phoenix/reconstruct.hpp"
#include "phoenix/sim_config.hpp"
#include "phoenix/simulator.hpp"

namespace phoenix {

// Deterministic per-run seed derivation.
uint64_t mix_seed(uint64_t base, uint64_t a, uint64_t b);

// simulate -> reconstruct -> evaluate in one process. algo is "phoenix" or
// "rgtr".
EvalReport run_pipeline(const SimConfig& config, const Topology& topology,
                        const std::string& algo);

// Reconstruction + evaluation against an existing trace.
EvalReport evaluate_trace(const SimTrace& trace, const std::string& algo,
                          const TieredOptions& opts = {});

// Desk-scale defaults: 20 motes, 60 simulated days; minutes-not-hours runs.
SimConfig desk_config();
Topology desk_topology();

// Paper-scale defaults: 53 motes, one simulated year.
SimConfig paper_config();
Topology paper_topology();

struct SweepRow {
    std::string scenario;
    std::string param_name;
    double param_value = 0.0;
    int rep = 0;
    uint64_t seed = 0;
    std::string algo;
    SimConfig config;
    EvalReport report;
};

struct SweepSpec {
    std::string scenario;  // gps-absence|t-wakeup|numseg|density|fault-injection|baseline
    SimConfig base;
    Topology topology;
    int reps = 1;
    uint64_t seed_base = 1;
    int jobs = 1;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepRow>& rows);

}  // namespace phoenix
