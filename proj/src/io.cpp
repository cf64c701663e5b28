#include "phoenix/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace phoenix::io {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::ofstream open_out(const Path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const Path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path.string());
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

[[noreturn]] void fail_line(const Path& path, int line, const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

int64_t parse_i64(const std::string& s, const Path& path, int line) {
    int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        fail_line(path, line, "not an integer: '" + s + "'");
    return v;
}

double parse_f64(const std::string& s, const Path& path, int line) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        fail_line(path, line, "not a number: '" + s + "'");
    return v;
}

int64_t parse_clock_us(const std::string& s, const Path& path, int line) {
    const int64_t v = parse_i64(s, path, line);
    if (v < 0) throw RangeError(path.string() + ":" + std::to_string(line) +
                                ": negative clock value " + s);
    return v;
}

// Reads the header, enforces the schema, then hands each data row (already
// split) to `row_fn`.
template <typename RowFn>
void read_rows(const Path& path, const std::vector<std::string>& columns,
               RowFn&& row_fn) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line))
        throw SchemaError(path.string() + ": missing header row");
    const auto header = split_csv(line);
    if (header != columns) {
        std::ostringstream msg;
        msg << path.string() << ": header mismatch; expected ";
        for (const auto& c : columns) msg << c << ",";
        msg << " got " << line;
        throw SchemaError(msg.str());
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != columns.size())
            fail_line(path, lineno, "expected " + std::to_string(columns.size()) +
                                        " fields, got " +
                                        std::to_string(fields.size()));
        row_fn(fields, lineno);
    }
}

void write_header(std::ofstream& out, const std::vector<std::string>& columns) {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out << ',';
        out << columns[i];
    }
    out << '\n';
}

const std::vector<std::string> kAnchorCols = {"moteid_r", "rc_r", "lc_r_us",
                                              "moteid_s", "rc_s", "lc_s_us"};
const std::vector<std::string> kSampleCols = {"moteid", "rc", "lc_us",
                                              "payload_bytes"};
const std::vector<std::string> kSampleTruthCols = {
    "moteid", "rc", "lc_us", "payload_bytes", "true_gts_us"};
const std::vector<std::string> kTruthCols = {"moteid", "rc", "alpha", "beta_us",
                                             "skew_ppm"};
const std::vector<std::string> kTopoCols = {"moteid", "x_m", "y_m", "gps"};
const std::vector<std::string> kAccountCols = {
    "moteid",       "beacon_count", "beacon_on_us", "listen_on_us",
    "anchor_bytes", "sample_bytes", "uptime_us"};
const std::vector<std::string> kFitCols = {
    "moteid", "rc", "reachable", "alpha", "beta", "chi", "df",
    "parent_moteid", "parent_rc"};
const std::vector<std::string> kAssignedCols = {"moteid", "rc", "lc_us",
                                                "gts_us"};

}  // namespace

void write_anchors(const Path& path, std::span<const AnchorRecord> anchors) {
    auto out = open_out(path);
    write_header(out, kAnchorCols);
    for (const auto& a : anchors) {
        out << a.receiver.mote_id << ',' << a.receiver.reboot_count << ','
            << seconds_to_us(a.lc_r) << ',' << a.sender.mote_id << ','
            << a.sender.reboot_count << ',' << seconds_to_us(a.lc_s) << '\n';
    }
}

std::vector<AnchorRecord> read_anchors(const Path& path) {
    std::vector<AnchorRecord> anchors;
    read_rows(path, kAnchorCols, [&](const auto& f, int line) {
        AnchorRecord rec;
        rec.receiver = {static_cast<int32_t>(parse_i64(f[0], path, line)),
                        static_cast<int32_t>(parse_i64(f[1], path, line))};
        rec.lc_r = us_to_seconds(parse_clock_us(f[2], path, line));
        rec.sender = {static_cast<int32_t>(parse_i64(f[3], path, line)),
                      static_cast<int32_t>(parse_i64(f[4], path, line))};
        rec.lc_s = us_to_seconds(parse_clock_us(f[5], path, line));
        anchors.push_back(rec);
    });
    return anchors;
}

void write_samples(const Path& path, std::span<const SimTrace::Sample> samples,
                   int payload_bytes, bool include_truth) {
    auto out = open_out(path);
    write_header(out, include_truth ? kSampleTruthCols : kSampleCols);
    for (const auto& s : samples) {
        out << s.seg.mote_id << ',' << s.seg.reboot_count << ','
            << seconds_to_us(s.lc) << ',' << payload_bytes;
        if (include_truth) out << ',' << seconds_to_us(s.true_gts);
        out << '\n';
    }
}

SampleRows read_samples(const Path& path) {
    // Peek the header to decide whether the truth column is present.
    bool with_truth = false;
    {
        auto in = open_in(path);
        std::string line;
        if (!std::getline(in, line))
            throw SchemaError(path.string() + ": missing header row");
        const auto header = split_csv(line);
        if (header == kSampleTruthCols) with_truth = true;
    }
    SampleRows rows;
    if (with_truth) rows.truth_gts.emplace();
    read_rows(path, with_truth ? kSampleTruthCols : kSampleCols,
              [&](const auto& f, int line) {
                  const SegmentId seg = {
                      static_cast<int32_t>(parse_i64(f[0], path, line)),
                      static_cast<int32_t>(parse_i64(f[1], path, line))};
                  rows.samples.emplace_back(
                      seg, us_to_seconds(parse_clock_us(f[2], path, line)));
                  rows.payload_bytes.push_back(
                      static_cast<int>(parse_i64(f[3], path, line)));
                  if (with_truth)
                      rows.truth_gts->push_back(
                          us_to_seconds(parse_i64(f[4], path, line)));
              });
    return rows;
}

void write_truth(const Path& path,
                 std::span<const SimTrace::SegmentTruth> truth) {
    auto out = open_out(path);
    write_header(out, kTruthCols);
    for (const auto& t : truth) {
        out << t.seg.mote_id << ',' << t.seg.reboot_count << ','
            << fmt_double(t.alpha) << ',' << seconds_to_us(t.beta) << ','
            << fmt_double(t.skew_ppm) << '\n';
    }
}

std::vector<SimTrace::SegmentTruth> read_truth(const Path& path) {
    std::vector<SimTrace::SegmentTruth> truth;
    read_rows(path, kTruthCols, [&](const auto& f, int line) {
        SimTrace::SegmentTruth t;
        t.seg = {static_cast<int32_t>(parse_i64(f[0], path, line)),
                 static_cast<int32_t>(parse_i64(f[1], path, line))};
        t.alpha = parse_f64(f[2], path, line);
        t.beta = us_to_seconds(parse_i64(f[3], path, line));
        t.skew_ppm = parse_f64(f[4], path, line);
        truth.push_back(t);
    });
    return truth;
}

void write_topology(const Path& path, const Topology& topo) {
    auto out = open_out(path);
    write_header(out, kTopoCols);
    for (const auto& m : topo.motes) {
        out << m.mote_id << ',' << fmt_double(m.x) << ',' << fmt_double(m.y)
            << ',' << (m.mote_id == topo.gps_mote ? 1 : 0) << '\n';
    }
}

Topology read_topology(const Path& path) {
    Topology topo;
    int gps_count = 0;
    read_rows(path, kTopoCols, [&](const auto& f, int line) {
        Topology::Mote m;
        m.mote_id = static_cast<int32_t>(parse_i64(f[0], path, line));
        m.x = parse_f64(f[1], path, line);
        m.y = parse_f64(f[2], path, line);
        topo.motes.push_back(m);
        if (parse_i64(f[3], path, line) != 0) {
            topo.gps_mote = m.mote_id;
            gps_count++;
        }
    });
    if (gps_count != 1)
        throw SchemaError(path.string() + ": exactly one gps mote required, got " +
                          std::to_string(gps_count));
    for (size_t i = 0; i < topo.motes.size(); ++i) {
        for (size_t j = i + 1; j < topo.motes.size(); ++j) {
            if (topo.motes[i].mote_id == topo.motes[j].mote_id)
                throw SchemaError(path.string() + ": duplicate mote id " +
                                  std::to_string(topo.motes[i].mote_id));
        }
    }
    return topo;
}

void write_accounting(const Path& path,
                      std::span<const SimTrace::MoteAccount> accounts) {
    auto out = open_out(path);
    write_header(out, kAccountCols);
    for (const auto& a : accounts) {
        out << a.mote_id << ',' << a.beacon_count << ','
            << seconds_to_us(a.beacon_on_s) << ',' << seconds_to_us(a.listen_on_s)
            << ',' << a.anchor_bytes << ',' << a.sample_bytes << ','
            << seconds_to_us(a.uptime_s) << '\n';
    }
}

std::vector<SimTrace::MoteAccount> read_accounting(const Path& path) {
    std::vector<SimTrace::MoteAccount> accounts;
    read_rows(path, kAccountCols, [&](const auto& f, int line) {
        SimTrace::MoteAccount a;
        a.mote_id = static_cast<int32_t>(parse_i64(f[0], path, line));
        a.beacon_count = parse_i64(f[1], path, line);
        a.beacon_on_s = us_to_seconds(parse_i64(f[2], path, line));
        a.listen_on_s = us_to_seconds(parse_i64(f[3], path, line));
        a.anchor_bytes = parse_i64(f[4], path, line);
        a.sample_bytes = parse_i64(f[5], path, line);
        a.uptime_s = us_to_seconds(parse_i64(f[6], path, line));
        accounts.push_back(a);
    });
    return accounts;
}

void write_config(const Path& path, const SimConfig& c) {
    auto out = open_out(path);
    auto kv = [&](const char* key, const std::string& value) {
        out << key << '=' << value << '\n';
    };
    kv("duration_s", fmt_double(c.duration_s));
    kv("sample_interval_s", fmt_double(c.sample_interval_s));
    kv("sample_bytes", std::to_string(c.sample_bytes));
    kv("t_beacon_s", fmt_double(c.t_beacon_s));
    kv("t_wakeup_s", fmt_double(c.t_wakeup_s));
    kv("t_listen_s", fmt_double(c.t_listen_s));
    kv("t_sync_s", fmt_double(c.t_sync_s));
    kv("skew_ppm_min", fmt_double(c.skew_ppm_min));
    kv("skew_ppm_max", fmt_double(c.skew_ppm_max));
    kv("p_down", fmt_double(c.p_down));
    kv("downtime_min_s", fmt_double(c.downtime_min_s));
    kv("downtime_max_s", fmt_double(c.downtime_max_s));
    kv("comm_delay_min_s", fmt_double(c.comm_delay_min_s));
    kv("comm_delay_max_s", fmt_double(c.comm_delay_max_s));
    kv("pr_d0_dbm", fmt_double(c.path_loss.pr_d0_dbm));
    kv("path_loss_eta", fmt_double(c.path_loss.eta));
    kv("shadowing_sigma_db", fmt_double(c.path_loss.sigma_db));
    kv("d0_m", fmt_double(c.path_loss.d0_m));
    kv("sensitivity_dbm", fmt_double(c.sensitivity_dbm));
    kv("prr_cutoff", fmt_double(c.prr_cutoff));
    kv("numseg", std::to_string(c.numseg));
    kv("eviction_policy", to_string(c.eviction_policy));
    kv("eviction_timeout_factor", fmt_double(c.eviction_timeout_factor));
    kv("listen_full_window", c.listen_full_window ? "1" : "0");
    kv("gps_enabled", c.gps_enabled ? "1" : "0");
    if (c.gps_outage) {
        kv("gps_outage_start_s", fmt_double(c.gps_outage->first));
        kv("gps_outage_len_s", fmt_double(c.gps_outage->second));
    }
    if (c.gps_fault) {
        kv("gps_fault_start_s", fmt_double(c.gps_fault->start_s));
        kv("gps_fault_len_s", fmt_double(c.gps_fault->length_s));
        kv("gps_fault_mu_s", fmt_double(c.gps_fault->mu_s));
        kv("gps_fault_sigma_s", fmt_double(c.gps_fault->sigma_s));
    }
    if (c.basestation_interval_s)
        kv("basestation_interval_s", fmt_double(*c.basestation_interval_s));
    kv("beacon_airtime_s", fmt_double(c.beacon_airtime_s));
    kv("anchor_record_bytes", std::to_string(c.anchor_record_bytes));
    kv("exact_timestamps", c.exact_timestamps ? "1" : "0");
    kv("seed", std::to_string(c.seed));
    kv("segment_model", c.segment_model.spec());
}

SimConfig read_config(const Path& path) {
    auto in = open_in(path);
    SimConfig c;
    std::optional<double> outage_start, outage_len;
    std::optional<double> fault_start, fault_len, fault_mu, fault_sigma;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail_line(path, lineno, "expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        auto f64 = [&] { return parse_f64(val, path, lineno); };
        auto i64 = [&] { return parse_i64(val, path, lineno); };
        auto boolean = [&] {
            if (val == "0") return false;
            if (val == "1") return true;
            fail_line(path, lineno, "expected 0 or 1");
        };
        if (key == "duration_s") c.duration_s = f64();
        else if (key == "sample_interval_s") c.sample_interval_s = f64();
        else if (key == "sample_bytes") c.sample_bytes = static_cast<int>(i64());
        else if (key == "t_beacon_s") c.t_beacon_s = f64();
        else if (key == "t_wakeup_s") c.t_wakeup_s = f64();
        else if (key == "t_listen_s") c.t_listen_s = f64();
        else if (key == "t_sync_s") c.t_sync_s = f64();
        else if (key == "skew_ppm_min") c.skew_ppm_min = f64();
        else if (key == "skew_ppm_max") c.skew_ppm_max = f64();
        else if (key == "p_down") c.p_down = f64();
        else if (key == "downtime_min_s") c.downtime_min_s = f64();
        else if (key == "downtime_max_s") c.downtime_max_s = f64();
        else if (key == "comm_delay_min_s") c.comm_delay_min_s = f64();
        else if (key == "comm_delay_max_s") c.comm_delay_max_s = f64();
        else if (key == "pr_d0_dbm") c.path_loss.pr_d0_dbm = f64();
        else if (key == "path_loss_eta") c.path_loss.eta = f64();
        else if (key == "shadowing_sigma_db") c.path_loss.sigma_db = f64();
        else if (key == "d0_m") c.path_loss.d0_m = f64();
        else if (key == "sensitivity_dbm") c.sensitivity_dbm = f64();
        else if (key == "prr_cutoff") c.prr_cutoff = f64();
        else if (key == "numseg") c.numseg = static_cast<int>(i64());
        else if (key == "eviction_policy")
            c.eviction_policy = eviction_policy_from_string(val);
        else if (key == "eviction_timeout_factor") c.eviction_timeout_factor = f64();
        else if (key == "listen_full_window") c.listen_full_window = boolean();
        else if (key == "gps_enabled") c.gps_enabled = boolean();
        else if (key == "gps_outage_start_s") outage_start = f64();
        else if (key == "gps_outage_len_s") outage_len = f64();
        else if (key == "gps_fault_start_s") fault_start = f64();
        else if (key == "gps_fault_len_s") fault_len = f64();
        else if (key == "gps_fault_mu_s") fault_mu = f64();
        else if (key == "gps_fault_sigma_s") fault_sigma = f64();
        else if (key == "basestation_interval_s") c.basestation_interval_s = f64();
        else if (key == "beacon_airtime_s") c.beacon_airtime_s = f64();
        else if (key == "anchor_record_bytes")
            c.anchor_record_bytes = static_cast<int>(i64());
        else if (key == "exact_timestamps") c.exact_timestamps = boolean();
        else if (key == "seed") c.seed = static_cast<uint64_t>(i64());
        else if (key == "segment_model") c.segment_model = SegmentModel::parse(val);
        else fail_line(path, lineno, "unknown key '" + key + "'");
    }
    if (outage_start.has_value() != outage_len.has_value())
        throw SchemaError(path.string() + ": gps_outage needs both start and len");
    if (outage_start) c.gps_outage = {*outage_start, *outage_len};
    if (fault_start.has_value() != fault_len.has_value())
        throw SchemaError(path.string() + ": gps_fault needs both start and len");
    if (fault_start) {
        SimConfig::GpsFault fault;
        fault.start_s = *fault_start;
        fault.length_s = *fault_len;
        if (fault_mu) fault.mu_s = *fault_mu;
        if (fault_sigma) fault.sigma_s = *fault_sigma;
        c.gps_fault = fault;
    }
    c.validate();
    return c;
}

void write_fits(const Path& path, const std::map<SegmentId, GlobalFit>& fits) {
    auto out = open_out(path);
    write_header(out, kFitCols);
    for (const auto& [seg, gf] : fits) {
        out << seg.mote_id << ',' << seg.reboot_count << ',';
        if (gf.is_sentinel()) {
            out << "0,0,0,0,0,,\n";
            continue;
        }
        out << "1," << fmt_double(gf.alpha) << ',' << fmt_double(gf.beta) << ','
            << fmt_double(gf.chi) << ',' << gf.df << ',';
        if (gf.parent)
            out << gf.parent->mote_id << ',' << gf.parent->reboot_count;
        else
            out << ',';
        out << '\n';
    }
}

std::map<SegmentId, GlobalFit> read_fits(const Path& path) {
    std::map<SegmentId, GlobalFit> fits;
    read_rows(path, kFitCols, [&](const auto& f, int line) {
        const SegmentId seg = {static_cast<int32_t>(parse_i64(f[0], path, line)),
                               static_cast<int32_t>(parse_i64(f[1], path, line))};
        if (parse_i64(f[2], path, line) == 0) {
            fits.emplace(seg, GlobalFit::sentinel(seg));
            return;
        }
        GlobalFit gf;
        gf.alpha = parse_f64(f[3], path, line);
        gf.beta = parse_f64(f[4], path, line);
        gf.chi = parse_f64(f[5], path, line);
        gf.df = static_cast<int>(parse_i64(f[6], path, line));
        if (!f[7].empty() || !f[8].empty()) {
            gf.parent = SegmentId{static_cast<int32_t>(parse_i64(f[7], path, line)),
                                  static_cast<int32_t>(parse_i64(f[8], path, line))};
        }
        fits.emplace(seg, gf);
    });
    return fits;
}

void write_assigned(const Path& path,
                    std::span<const TimestampedSample> samples) {
    auto out = open_out(path);
    write_header(out, kAssignedCols);
    for (const auto& s : samples) {
        out << s.seg.mote_id << ',' << s.seg.reboot_count << ','
            << seconds_to_us(s.lc) << ',';
        if (s.gts) out << seconds_to_us(*s.gts);
        out << '\n';
    }
}

AssignResult read_assigned(const Path& path) {
    AssignResult result;
    read_rows(path, kAssignedCols, [&](const auto& f, int line) {
        TimestampedSample s;
        s.seg = {static_cast<int32_t>(parse_i64(f[0], path, line)),
                 static_cast<int32_t>(parse_i64(f[1], path, line))};
        s.lc = us_to_seconds(parse_clock_us(f[2], path, line));
        if (!f[3].empty()) s.gts = us_to_seconds(parse_i64(f[3], path, line));
        result.loss.total++;
        if (!s.gts) result.loss.lost++;
        result.samples.push_back(s);
    });
    return result;
}

std::string results_to_json(const EvalReport& r, bool include_samples) {
    json j;
    j["data_loss_pct"] = r.data_loss_pct;
    j["ppm"] = {{"median", r.ppm.median}, {"p99", r.ppm.p99}, {"mean", r.ppm.mean},
                {"count", r.ppm_errors.size()}};
    j["zero_elapsed"] = r.zero_elapsed;
    j["alpha_err"] = {{"median_ppm", r.alpha_err_median_ppm},
                      {"std_ppm", r.alpha_err_std_ppm}};
    j["beta_err"] = {{"median_s", r.beta_err_median_s},
                     {"std_s", r.beta_err_std_s}};
    j["segments_compared"] = r.segments_compared;
    j["space_overhead_pct"] = r.space_overhead_pct;
    j["duty_cycle_pct"] = r.duty_cycle_pct;
    if (include_samples) j["ppm_errors"] = r.ppm_errors;
    return j.dump(2) + "\n";
}

EvalReport results_from_json(const std::string& text) {
    const json j = json::parse(text);
    EvalReport r;
    r.data_loss_pct = j.at("data_loss_pct");
    r.ppm.median = j.at("ppm").at("median");
    r.ppm.p99 = j.at("ppm").at("p99");
    r.ppm.mean = j.at("ppm").at("mean");
    r.zero_elapsed = j.at("zero_elapsed");
    r.alpha_err_median_ppm = j.at("alpha_err").at("median_ppm");
    r.alpha_err_std_ppm = j.at("alpha_err").at("std_ppm");
    r.beta_err_median_s = j.at("beta_err").at("median_s");
    r.beta_err_std_s = j.at("beta_err").at("std_s");
    r.segments_compared = j.at("segments_compared");
    r.space_overhead_pct = j.at("space_overhead_pct");
    r.duty_cycle_pct = j.at("duty_cycle_pct");
    if (j.contains("ppm_errors"))
        r.ppm_errors = j.at("ppm_errors").get<std::vector<double>>();
    return r;
}

void write_results(const Path& path, const EvalReport& report,
                   bool include_samples) {
    auto out = open_out(path);
    out << results_to_json(report, include_samples);
}

EvalReport read_results(const Path& path) {
    auto in = open_in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return results_from_json(ss.str());
}

void write_trace(const Path& dir, const SimTrace& trace, const SimConfig& config) {
    std::filesystem::create_directories(dir);
    write_anchors(dir / "anchors.csv", trace.anchors);
    write_samples(dir / "samples.csv", trace.samples, config.sample_bytes, true);
    write_truth(dir / "truth.csv", trace.truth);
    write_accounting(dir / "accounting.csv", trace.accounting);
    json meta;
    meta["duration_s"] = trace.duration_s;
    meta["seed"] = trace.seed;
    auto out = open_out(dir / "meta.json");
    out << meta.dump(2) << "\n";
}

SimTrace read_trace(const Path& dir) {
    SimTrace trace;
    trace.anchors = read_anchors(dir / "anchors.csv");
    const SampleRows rows = read_samples(dir / "samples.csv");
    if (!rows.truth_gts)
        throw SchemaError((dir / "samples.csv").string() +
                          ": truth column required to load a full trace");
    trace.samples.reserve(rows.samples.size());
    for (size_t i = 0; i < rows.samples.size(); ++i) {
        trace.samples.push_back({rows.samples[i].first, rows.samples[i].second,
                                 (*rows.truth_gts)[i]});
    }
    trace.truth = read_truth(dir / "truth.csv");
    trace.accounting = read_accounting(dir / "accounting.csv");
    auto in = open_in(dir / "meta.json");
    std::stringstream ss;
    ss << in.rdbuf();
    const json meta = json::parse(ss.str());
    trace.duration_s = meta.at("duration_s");
    trace.seed = meta.at("seed");
    return trace;
}

}  // namespace phoenix::io
