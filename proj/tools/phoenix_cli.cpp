#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phoenix/io.hpp"
#include "phoenix/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "phoenix 1.0.0";

// Exit codes: 0 success, 1 invalid flags/config, 2 I/O failure.
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

fs::path output_root() {
    if (const char* root = std::getenv("PHOENIX_OUT_ROOT")) return root;
    return ".";
}

void write_manifest(const fs::path& dir, const std::vector<std::string>& argv,
                    uint64_t seed, const std::vector<std::string>& outputs) {
    json m;
    m["tool_version"] = kVersion;
    m["argv"] = argv;
    m["seed"] = seed;
    m["outputs"] = outputs;
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    out << m.dump(2) << "\n";
}

int dispatch(std::vector<std::string> args);

int cmd_gen_topology(const std::vector<std::string>& argv,
                     const std::string& kind, int n, double extent,
                     uint64_t seed, const std::string& in,
                     const std::string& out) {
    phoenix::Topology topo;
    if (kind == "file") {
        if (in.empty()) {
            std::cerr << "gen-topology: --in required for kind=file\n";
            return kExitUsage;
        }
        topo = phoenix::io::read_topology(in);
    } else {
        topo = phoenix::generate_topology(kind, n, extent, seed);
    }
    const fs::path out_path = out;
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    phoenix::io::write_topology(out_path, topo);
    if (out_path.has_parent_path())
        write_manifest(out_path.parent_path(), argv, seed, {out_path.filename()});
    return 0;
}

int cmd_simulate(const std::vector<std::string>& argv, const std::string& config,
                 const std::string& topology, int64_t seed_override,
                 const std::string& out) {
    phoenix::SimConfig cfg =
        config.empty() ? phoenix::SimConfig{} : phoenix::io::read_config(config);
    if (seed_override >= 0) cfg.seed = static_cast<uint64_t>(seed_override);
    const phoenix::Topology topo = phoenix::io::read_topology(topology);
    const phoenix::SimTrace trace = phoenix::run_simulation(cfg, topo);
    fs::create_directories(out);
    phoenix::io::write_trace(out, trace, cfg);
    phoenix::io::write_config(fs::path(out) / "config.txt", cfg);
    write_manifest(out, argv, cfg.seed,
                   {"anchors.csv", "samples.csv", "truth.csv", "accounting.csv",
                    "meta.json", "config.txt"});
    return 0;
}

int cmd_reconstruct(const std::vector<std::string>& argv,
                    const std::string& anchors, const std::string& samples,
                    const std::string& algo, const std::string& queue,
                    int min_fit_points, int transit_min_points,
                    int refine_passes, const std::string& out) {
    const auto records = phoenix::io::read_anchors(anchors);
    const auto rows = phoenix::io::read_samples(samples);
    const phoenix::AnchorStore store = phoenix::build_anchor_store(records);

    std::map<phoenix::SegmentId, phoenix::GlobalFit> fits;
    json diag;
    if (algo == "phoenix") {
        phoenix::TieredOptions opts;
        opts.min_fit_points = min_fit_points;
        opts.transit_min_points = transit_min_points;
        opts.refine_passes = refine_passes;
        opts.queue = queue == "priority" ? phoenix::QueueDiscipline::priority
                                         : phoenix::QueueDiscipline::fifo;
        phoenix::TieredResult result = phoenix::run_phoenix_tiered(store, opts);
        fits = std::move(result.fits);
        diag["dropped_edges"] = {
            {"pairs_insufficient", result.diagnostics.pairs_insufficient},
            {"pairs_degenerate", result.diagnostics.pairs_degenerate},
            {"globals_insufficient", result.diagnostics.globals_insufficient},
            {"globals_degenerate", result.diagnostics.globals_degenerate}};
        diag["vertices"] = result.vertices;
        diag["edges"] = result.edges;
        diag["transit_edges"] = result.transit_edges;
        diag["gts_nodes"] = result.gts_nodes;
        diag["acceptances"] = result.acceptance_log.size();
        diag["terminal_attached"] = result.terminal_attached;
        diag["unreachable"] = result.unreachable.size();
    } else if (algo == "rgtr") {
        fits = phoenix::rgtr_baseline(store);
        int reachable = 0;
        for (const auto& [seg, gf] : fits)
            if (!gf.is_sentinel()) reachable++;
        diag["reachable"] = reachable;
        diag["segments"] = fits.size();
    } else {
        std::cerr << "reconstruct: unknown --algo " << algo << "\n";
        return kExitUsage;
    }

    const phoenix::AssignResult assigned =
        phoenix::assign_timestamps(rows.samples, fits);
    diag["loss"] = {{"total", assigned.loss.total},
                    {"lost", assigned.loss.lost},
                    {"pct", assigned.loss.loss_pct()}};

    fs::create_directories(out);
    phoenix::io::write_fits(fs::path(out) / "fits.csv", fits);
    phoenix::io::write_assigned(fs::path(out) / "assigned.csv", assigned.samples);
    {
        std::ofstream dout(fs::path(out) / "diagnostics.json", std::ios::binary);
        dout << diag.dump(2) << "\n";
    }
    write_manifest(out, argv, 0,
                   {"fits.csv", "assigned.csv", "diagnostics.json"});
    return 0;
}

int cmd_evaluate(const std::vector<std::string>& argv,
                 const std::string& reconstruction, const std::string& truth_dir,
                 const std::string& out) {
    const phoenix::AssignResult assigned =
        phoenix::io::read_assigned(fs::path(reconstruction) / "assigned.csv");
    const auto fits =
        phoenix::io::read_fits(fs::path(reconstruction) / "fits.csv");
    const phoenix::SimTrace trace = phoenix::io::read_trace(truth_dir);
    std::vector<double> truth_gts;
    truth_gts.reserve(trace.samples.size());
    for (const auto& s : trace.samples) truth_gts.push_back(s.true_gts);

    const phoenix::EvalReport report =
        phoenix::evaluate(assigned, truth_gts, fits, trace.truth,
                          trace.accounting, trace.duration_s);

    fs::create_directories(out);
    phoenix::io::write_results(fs::path(out) / "results.json", report);
    write_manifest(out, argv, trace.seed, {"results.json"});
    return 0;
}

int cmd_sweep(const std::vector<std::string>& argv, const std::string& scenario,
              const std::string& config, int reps, uint64_t seed_base, int jobs,
              bool paper_scale, const std::string& topology,
              const std::string& out) {
    phoenix::SweepSpec spec;
    spec.scenario = scenario;
    spec.base = paper_scale ? phoenix::paper_config() : phoenix::desk_config();
    if (!config.empty()) spec.base = phoenix::io::read_config(config);
    spec.topology = topology.empty()
                        ? (paper_scale ? phoenix::paper_topology()
                                       : phoenix::desk_topology())
                        : phoenix::io::read_topology(topology);
    spec.reps = reps;
    spec.seed_base = seed_base;
    spec.jobs = jobs;

    const auto rows = phoenix::run_sweep(spec);
    fs::create_directories(out);
    phoenix::write_sweep_csv(fs::path(out) / "sweep.csv", rows);
    write_manifest(out, argv, seed_base, {"sweep.csv"});
    return 0;
}

int cmd_rerun(const std::string& manifest_path) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) {
        std::cerr << "rerun: cannot open " << manifest_path << "\n";
        return kExitIo;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const json m = json::parse(ss.str());
    return dispatch(m.at("argv").get<std::vector<std::string>>());
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"Postmortem timestamp reconstruction for reboot-prone motes: "
                 "epidemic anchor exchange, a direct-fit baseline, and a "
                 "deterministic network simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // gen-topology
    auto* gen = app.add_subcommand("gen-topology", "Generate a topology file");
    std::string gen_kind = "grid", gen_in, gen_out =
        (output_root() / "topology.csv").string();
    int gen_n = 20;
    double gen_extent = 120.0;
    uint64_t gen_seed = 1;
    gen->add_option("--kind", gen_kind, "grid|uniform-random|file")
        ->check(CLI::IsMember({"grid", "uniform-random", "file"}))
        ->capture_default_str();
    gen->add_option("--n", gen_n, "mote count")->capture_default_str();
    gen->add_option("--extent", gen_extent, "field extent in meters")
        ->capture_default_str();
    gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gen->add_option("--in", gen_in, "input topology (kind=file)");
    gen->add_option("--out", gen_out, "output topology file")
        ->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run the network simulator");
    std::string sim_config, sim_topo,
        sim_out = (output_root() / "trace").string();
    int64_t sim_seed = -1;
    sim->add_option("--config", sim_config, "config file (defaults used if omitted)");
    sim->add_option("--topology", sim_topo, "topology file")->required();
    sim->add_option("--seed", sim_seed, "seed override");
    sim->add_option("--out", sim_out, "output trace directory")
        ->capture_default_str();

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Assign global timestamps");
    std::string rec_anchors, rec_samples, rec_algo = "phoenix",
                rec_queue = "fifo",
                rec_out = (output_root() / "reconstruction").string();
    rec->add_option("--anchors", rec_anchors, "anchor file")->required();
    rec->add_option("--samples", rec_samples, "sample file")->required();
    rec->add_option("--algo", rec_algo, "phoenix|rgtr")
        ->check(CLI::IsMember({"phoenix", "rgtr"}))
        ->capture_default_str();
    rec->add_option("--queue", rec_queue, "fifo|priority relaxation order")
        ->check(CLI::IsMember({"fifo", "priority"}))
        ->capture_default_str();
    int rec_min_fit = phoenix::kDefaultMinFitPoints;
    int rec_transit_min = phoenix::kDefaultTransitMinPoints;
    rec->add_option("--min-fit-points", rec_min_fit,
                    "points required for any pair fit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    rec->add_option("--transit-min-points", rec_transit_min,
                    "points required before an edge may extend a path")
        ->capture_default_str();
    int rec_refine = phoenix::kDefaultRefinePasses;
    rec->add_option("--refine-passes", rec_refine,
                    "weighted re-fit sweeps after the relaxation")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    rec->add_option("--out", rec_out, "output directory")->capture_default_str();

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Score a reconstruction against truth");
    std::string ev_rec, ev_truth, ev_out = (output_root() / "eval").string();
    ev->add_option("--reconstruction", ev_rec, "reconstruction directory")
        ->required();
    ev->add_option("--truth", ev_truth, "trace directory with ground truth")
        ->required();
    ev->add_option("--out", ev_out, "output directory")->capture_default_str();

    // sweep
    auto* sw = app.add_subcommand("sweep", "Scripted experiment sweeps");
    std::string sw_scenario, sw_config, sw_topo,
        sw_out = (output_root() / "sweep").string();
    int sw_reps = 1, sw_jobs = 1;
    uint64_t sw_seed_base = 1;
    bool sw_paper = false;
    sw->add_option("--scenario", sw_scenario,
                   "gps-absence|t-wakeup|numseg|density|fault-injection|baseline")
        ->check(CLI::IsMember({"gps-absence", "t-wakeup", "numseg", "density",
                               "fault-injection", "baseline"}))
        ->required();
    sw->add_option("--config", sw_config, "base config override");
    sw->add_option("--topology", sw_topo, "topology override");
    sw->add_option("--reps", sw_reps, "repetitions per parameter value")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sw->add_option("--seed-base", sw_seed_base, "seed base")->capture_default_str();
    sw->add_option("--jobs", sw_jobs, "parallel repetitions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sw->add_flag("--paper-scale", sw_paper, "53 motes, one simulated year");
    sw->add_option("--out", sw_out, "output directory")->capture_default_str();

    // rerun
    auto* rr = app.add_subcommand("rerun", "Re-execute a recorded run manifest");
    std::string rr_manifest;
    rr->add_option("manifest", rr_manifest, "manifest.json path")->required();

    std::vector<std::string> raw_args = args;
    try {
        // CLI11 wants reversed argv without the program name.
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen_topology(raw_args, gen_kind, gen_n, gen_extent,
                                    gen_seed, gen_in, gen_out);
        if (sim->parsed())
            return cmd_simulate(raw_args, sim_config, sim_topo, sim_seed, sim_out);
        if (rec->parsed())
            return cmd_reconstruct(raw_args, rec_anchors, rec_samples, rec_algo,
                                   rec_queue, rec_min_fit, rec_transit_min,
                                   rec_refine, rec_out);
        if (ev->parsed()) return cmd_evaluate(raw_args, ev_rec, ev_truth, ev_out);
        if (sw->parsed())
            return cmd_sweep(raw_args, sw_scenario, sw_config, sw_reps,
                             sw_seed_base, sw_jobs, sw_paper, sw_topo, sw_out);
        if (rr->parsed()) return cmd_rerun(rr_manifest);
    } catch (const phoenix::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const phoenix::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const phoenix::io::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const phoenix::io::RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(std::move(args));
}
