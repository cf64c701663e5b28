#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "phoenix/io.hpp"

using namespace phoenix;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("phoenix_io_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("anchors csv") {
    TempDir tmp;
    const fs::path file = tmp.path / "anchors.csv";

    SUBCASE("header-only file reads as empty") {
        spit(file, "moteid_r,rc_r,lc_r_us,moteid_s,rc_s,lc_s_us\n");
        CHECK(io::read_anchors(file).empty());
    }

    SUBCASE("fixture rows parse to exact microseconds") {
        spit(file,
             "moteid_r,rc_r,lc_r_us,moteid_s,rc_s,lc_s_us\n"
             "3,0,1000000,5,2,2500000\n"
             "5,2,2600000,3,0,1100000\n"
             "7,1,86400000000,7,1,86400123456\n");
        auto anchors = io::read_anchors(file);
        REQUIRE(anchors.size() == 3);
        CHECK(anchors[0].receiver == SegmentId{3, 0});
        CHECK(anchors[0].sender == SegmentId{5, 2});
        CHECK(anchors[0].lc_r == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(anchors[0].lc_s == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(anchors[2].is_global());
        CHECK(seconds_to_us(anchors[2].lc_s) == 86400123456);
    }

    SUBCASE("write then read is lossless and rewrite is byte-identical") {
        std::vector<AnchorRecord> anchors{
            {{0, 0}, 1.25, {1, 3}, 2.5},
            {{1, 3}, 2.75, {1, 3}, 86400.000001},
        };
        io::write_anchors(file, anchors);
        auto back = io::read_anchors(file);
        REQUIRE(back.size() == 2);
        CHECK(back[0].lc_r == anchors[0].lc_r);
        CHECK(back[1].lc_s == anchors[1].lc_s);

        const fs::path file2 = tmp.path / "anchors2.csv";
        io::write_anchors(file2, back);
        CHECK(slurp(file) == slurp(file2));
    }

    SUBCASE("schema mismatch names the file") {
        spit(file, "a,b,c\n");
        CHECK_THROWS_AS(io::read_anchors(file), io::SchemaError);
    }

    SUBCASE("bad integer names the line") {
        spit(file,
             "moteid_r,rc_r,lc_r_us,moteid_s,rc_s,lc_s_us\n"
             "3,0,xyz,5,2,2500000\n");
        try {
            io::read_anchors(file);
            FAIL("expected ParseError");
        } catch (const io::ParseError& e) {
            CHECK(std::string(e.what()).find(":2:") != std::string::npos);
        }
    }

    SUBCASE("negative clock is a range error") {
        spit(file,
             "moteid_r,rc_r,lc_r_us,moteid_s,rc_s,lc_s_us\n"
             "3,0,-5,5,2,2500000\n");
        CHECK_THROWS_AS(io::read_anchors(file), io::RangeError);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(io::read_anchors(tmp.path / "nope.csv"), io::ParseError);
    }
}

TEST_CASE("samples csv with and without the truth column") {
    TempDir tmp;
    const fs::path file = tmp.path / "samples.csv";
    std::vector<SimTrace::Sample> samples{
        {{0, 0}, 600.0, 600.123456},
        {{2, 1}, 1200.0, 1812.5},
    };

    SUBCASE("truth column round-trips") {
        io::write_samples(file, samples, 26, true);
        auto rows = io::read_samples(file);
        REQUIRE(rows.samples.size() == 2);
        REQUIRE(rows.truth_gts.has_value());
        CHECK(rows.samples[0].first == SegmentId{0, 0});
        CHECK(rows.samples[1].second == doctest::Approx(1200.0));
        CHECK((*rows.truth_gts)[0] == doctest::Approx(600.123456).epsilon(1e-15));
        CHECK(rows.payload_bytes[0] == 26);
    }

    SUBCASE("truthless file reads without the column") {
        io::write_samples(file, samples, 26, false);
        auto rows = io::read_samples(file);
        REQUIRE(rows.samples.size() == 2);
        CHECK(!rows.truth_gts.has_value());
    }
}

TEST_CASE("truth csv round-trips doubles exactly") {
    TempDir tmp;
    const fs::path file = tmp.path / "truth.csv";
    std::vector<SimTrace::SegmentTruth> truth{
        {{0, 0}, 1.0 / (1.0 + 55.5e-6), 0.0, 55.5},
        {{4, 2}, 1.0 / (1.0 + 68.25e-6), 123456.789012, 68.25},
    };
    io::write_truth(file, truth);
    auto back = io::read_truth(file);
    REQUIRE(back.size() == 2);
    // Shortest round-trip formatting: alpha and skew must come back bit-exact.
    CHECK(back[0].alpha == truth[0].alpha);
    CHECK(back[1].alpha == truth[1].alpha);
    CHECK(back[1].skew_ppm == truth[1].skew_ppm);
    CHECK(seconds_to_us(back[1].beta) == seconds_to_us(truth[1].beta));
}

TEST_CASE("topology csv") {
    TempDir tmp;
    const fs::path file = tmp.path / "topology.csv";

    SUBCASE("round trip") {
        auto topo = generate_topology("uniform-random", 7, 100.0, 3);
        topo.gps_mote = 4;
        io::write_topology(file, topo);
        auto back = io::read_topology(file);
        REQUIRE(back.motes.size() == 7);
        CHECK(back.gps_mote == 4);
        for (size_t i = 0; i < 7; ++i) {
            CHECK(back.motes[i].x == topo.motes[i].x);
            CHECK(back.motes[i].y == topo.motes[i].y);
        }
    }

    SUBCASE("zero or two gps motes rejected") {
        spit(file, "moteid,x_m,y_m,gps\n0,0,0,1\n1,5,0,1\n");
        CHECK_THROWS_AS(io::read_topology(file), io::SchemaError);
        spit(file, "moteid,x_m,y_m,gps\n0,0,0,0\n1,5,0,0\n");
        CHECK_THROWS_AS(io::read_topology(file), io::SchemaError);
    }

    SUBCASE("duplicate ids rejected") {
        spit(file, "moteid,x_m,y_m,gps\n0,0,0,1\n0,5,0,0\n");
        CHECK_THROWS_AS(io::read_topology(file), io::SchemaError);
    }
}

TEST_CASE("accounting csv round trip") {
    TempDir tmp;
    const fs::path file = tmp.path / "accounting.csv";
    std::vector<SimTrace::MoteAccount> acc{
        {0, 2880, 64.8, 120.5, 320, 3744, 86400.0},
        {1, 2879, 64.7775, 119.25, 256, 3744, 86399.5},
    };
    io::write_accounting(file, acc);
    auto back = io::read_accounting(file);
    REQUIRE(back.size() == 2);
    CHECK(back[0].beacon_count == 2880);
    CHECK(back[1].anchor_bytes == 256);
    CHECK(seconds_to_us(back[1].beacon_on_s) == seconds_to_us(acc[1].beacon_on_s));
    CHECK(seconds_to_us(back[1].uptime_s) == seconds_to_us(acc[1].uptime_s));
}

TEST_CASE("config files") {
    TempDir tmp;
    const fs::path file = tmp.path / "config.txt";

    SUBCASE("defaults round trip") {
        SimConfig cfg;
        io::write_config(file, cfg);
        auto back = io::read_config(file);
        CHECK(back.duration_s == cfg.duration_s);
        CHECK(back.t_wakeup_s == cfg.t_wakeup_s);
        CHECK(back.numseg == cfg.numseg);
        CHECK(back.eviction_policy == cfg.eviction_policy);
        CHECK(back.seed == cfg.seed);
        CHECK(back.segment_model.kind == SegmentModel::Kind::lognormal);
        CHECK(back.segment_model.median_days == cfg.segment_model.median_days);
        CHECK(!back.gps_outage);
        CHECK(!back.gps_fault);
        CHECK(!back.basestation_interval_s);
    }

    SUBCASE("optional windows round trip") {
        SimConfig cfg;
        cfg.gps_outage = {{86400.0, 43200.0}};
        cfg.gps_fault = SimConfig::GpsFault{10.0, 20.0, 3000.0, 500.0};
        cfg.basestation_interval_s = 14400.0;
        cfg.segment_model = SegmentModel::parse("fixed:172800");
        io::write_config(file, cfg);
        auto back = io::read_config(file);
        REQUIRE(back.gps_outage.has_value());
        CHECK(back.gps_outage->first == 86400.0);
        REQUIRE(back.gps_fault.has_value());
        CHECK(back.gps_fault->mu_s == 3000.0);
        CHECK(back.basestation_interval_s == 14400.0);
        CHECK(back.segment_model.kind == SegmentModel::Kind::fixed);
        CHECK(back.segment_model.fixed_s == 172800.0);
    }

    SUBCASE("unknown key rejected") {
        spit(file, "durationn_s=100\n");
        CHECK_THROWS_AS(io::read_config(file), io::ParseError);
    }

    SUBCASE("half an outage window rejected") {
        spit(file, "gps_outage_start_s=100\n");
        CHECK_THROWS_AS(io::read_config(file), io::SchemaError);
    }

    SUBCASE("comments and blank lines are ignored") {
        spit(file, "# comment\n\nnumseg=8\n");
        CHECK(io::read_config(file).numseg == 8);
    }

    SUBCASE("invalid values fail validation") {
        spit(file, "p_down=1.5\n");
        CHECK_THROWS_AS(io::read_config(file), ConfigError);
    }
}

TEST_CASE("fits csv round trip including sentinels and roots") {
    TempDir tmp;
    const fs::path file = tmp.path / "fits.csv";

    std::map<SegmentId, GlobalFit> fits;
    GlobalFit root;
    root.alpha = 1.0000551;
    root.beta = 12.345678;
    root.chi = 1.5e-7;
    root.df = 4;
    fits[{0, 0}] = root;
    GlobalFit child = root;
    child.parent = SegmentId{0, 0};
    child.ancestors = {{0, 0}};
    child.beta = -3.5;
    fits[{1, 0}] = child;
    fits[{2, 1}] = GlobalFit::sentinel({2, 1});

    io::write_fits(file, fits);
    auto back = io::read_fits(file);
    REQUIRE(back.size() == 3);
    CHECK(back.at({0, 0}).alpha == root.alpha);
    CHECK(!back.at({0, 0}).parent.has_value());
    CHECK(back.at({1, 0}).parent == SegmentId{0, 0});
    CHECK(back.at({1, 0}).beta == -3.5);
    CHECK(back.at({2, 1}).is_sentinel());
}

TEST_CASE("assigned csv keeps lost samples as empty cells") {
    TempDir tmp;
    const fs::path file = tmp.path / "assigned.csv";
    std::vector<TimestampedSample> samples{
        {{0, 0}, 600.0, 600.05},
        {{1, 0}, 1200.0, std::nullopt},
    };
    io::write_assigned(file, samples);
    auto back = io::read_assigned(file);
    REQUIRE(back.samples.size() == 2);
    CHECK(back.samples[0].gts.has_value());
    CHECK(!back.samples[1].gts.has_value());
    CHECK(back.loss.total == 2);
    CHECK(back.loss.lost == 1);
}

TEST_CASE("results json round trip") {
    EvalReport r;
    r.data_loss_pct = 1.25;
    r.ppm.median = 0.4;
    r.ppm.p99 = 6.5;
    r.ppm.mean = 1.1;
    r.ppm_errors = {0.1, 0.4, 6.5};
    r.zero_elapsed = 3;
    r.alpha_err_median_ppm = 0.02;
    r.alpha_err_std_ppm = 0.5;
    r.beta_err_median_s = 0.001;
    r.beta_err_std_s = 0.01;
    r.segments_compared = 42;
    r.space_overhead_pct = 1.6;
    r.duty_cycle_pct = 0.12;

    auto text = io::results_to_json(r, true);
    auto back = io::results_from_json(text);
    CHECK(back.data_loss_pct == r.data_loss_pct);
    CHECK(back.ppm.p99 == r.ppm.p99);
    CHECK(back.zero_elapsed == r.zero_elapsed);
    CHECK(back.alpha_err_std_ppm == r.alpha_err_std_ppm);
    CHECK(back.segments_compared == r.segments_compared);
    CHECK(back.duty_cycle_pct == r.duty_cycle_pct);
    REQUIRE(back.ppm_errors.size() == 3);
    CHECK(back.ppm_errors[2] == 6.5);

    auto without = io::results_from_json(io::results_to_json(r, false));
    CHECK(without.ppm_errors.empty());
}

TEST_CASE("whole trace directory round trip") {
    TempDir tmp;
    SimConfig cfg;
    cfg.duration_s = 86400.0;
    cfg.segment_model = SegmentModel::parse("fixed:172800");
    cfg.p_down = 0.0;
    cfg.seed = 3;
    Topology topo;
    topo.motes = {{0, 0.0, 0.0}, {1, 10.0, 0.0}};
    topo.gps_mote = 0;

    auto trace = run_simulation(cfg, topo);
    io::write_trace(tmp.path / "trace", trace, cfg);
    auto back = io::read_trace(tmp.path / "trace");
    CHECK(back.duration_s == trace.duration_s);
    CHECK(back.seed == trace.seed);
    REQUIRE(back.anchors.size() == trace.anchors.size());
    REQUIRE(back.samples.size() == trace.samples.size());
    REQUIRE(back.truth.size() == trace.truth.size());
    // Values were quantized before storage, so the round trip is exact.
    for (size_t i = 0; i < trace.anchors.size(); ++i) {
        CHECK(back.anchors[i].lc_r == trace.anchors[i].lc_r);
        CHECK(back.anchors[i].lc_s == trace.anchors[i].lc_s);
    }
    for (size_t i = 0; i < trace.samples.size(); ++i) {
        CHECK(back.samples[i].lc == trace.samples[i].lc);
        CHECK(back.samples[i].true_gts == trace.samples[i].true_gts);
    }
}
