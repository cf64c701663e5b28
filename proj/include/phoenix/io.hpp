#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "phoenix/clock_model.hpp"
#include "phoenix/metrics.hpp"
#include "phoenix/reconstruct.hpp"
#include "phoenix/sim_config.hpp"
#include "phoenix/simulator.hpp"

// Delimiter-separated UTF-8 files with a fixed header row; clock values are
// integer microseconds on disk. Schemas are documented in docs/formats.md.

namespace phoenix::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Path = std::filesystem::path;

// anchors.csv: moteid_r,rc_r,lc_r_us,moteid_s,rc_s,lc_s_us
void write_anchors(const Path& path, std::span<const AnchorRecord> anchors);
std::vector<AnchorRecord> read_anchors(const Path& path);

// samples.csv: moteid,rc,lc_us,payload_bytes[,true_gts_us]
// The truth column is only present in simulator output; reconstruction
// never reads it.
struct SampleRows {
    std::vector<std::pair<SegmentId, double>> samples;
    std::vector<int> payload_bytes;
    std::optional<std::vector<double>> truth_gts;
};
void write_samples(const Path& path, std::span<const SimTrace::Sample> samples,
                   int payload_bytes, bool include_truth);
SampleRows read_samples(const Path& path);

// truth.csv: moteid,rc,alpha,beta_us,skew_ppm
void write_truth(const Path& path,
                 std::span<const SimTrace::SegmentTruth> truth);
std::vector<SimTrace::SegmentTruth> read_truth(const Path& path);

// topology.csv: moteid,x_m,y_m,gps
void write_topology(const Path& path, const Topology& topo);
Topology read_topology(const Path& path);

// accounting.csv: moteid,beacon_count,beacon_on_us,listen_on_us,
//                 anchor_bytes,sample_bytes,uptime_us
void write_accounting(const Path& path,
                      std::span<const SimTrace::MoteAccount> accounts);
std::vector<SimTrace::MoteAccount> read_accounting(const Path& path);

// Flat key=value config mirroring SimConfig; unknown keys are errors.
void write_config(const Path& path, const SimConfig& config);
SimConfig read_config(const Path& path);

// fits.csv: moteid,rc,reachable,alpha,beta,chi,df,parent_moteid,parent_rc
void write_fits(const Path& path, const std::map<SegmentId, GlobalFit>& fits);
std::map<SegmentId, GlobalFit> read_fits(const Path& path);

// assigned.csv: moteid,rc,lc_us,gts_us (gts_us empty when lost)
void write_assigned(const Path& path,
                    std::span<const TimestampedSample> samples);
AssignResult read_assigned(const Path& path);

// results.json
void write_results(const Path& path, const EvalReport& report,
                   bool include_samples = false);
EvalReport read_results(const Path& path);
std::string results_to_json(const EvalReport& report, bool include_samples);
EvalReport results_from_json(const std::string& text);

// Whole-trace convenience: anchors.csv, samples.csv, truth.csv,
// accounting.csv and meta.json under a directory.
void write_trace(const Path& dir, const SimTrace& trace, const SimConfig& config);
SimTrace read_trace(const Path& dir);

}  // namespace phoenix::io
