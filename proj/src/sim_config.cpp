#include "phoenix/sim_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace phoenix {

std::string to_string(EvictionPolicy p) {
    switch (p) {
        case EvictionPolicy::fcfs: return "fcfs";
        case EvictionPolicy::rand: return "rand";
        case EvictionPolicy::llc: return "llc";
        case EvictionPolicy::none: return "none";
    }
    return "fcfs";
}

EvictionPolicy eviction_policy_from_string(const std::string& s) {
    if (s == "fcfs") return EvictionPolicy::fcfs;
    if (s == "rand") return EvictionPolicy::rand;
    if (s == "llc") return EvictionPolicy::llc;
    if (s == "none") return EvictionPolicy::none;
    throw ConfigError("unknown eviction policy: " + s);
}

SegmentModel SegmentModel::parse(const std::string& spec) {
    SegmentModel m;
    m.raw = spec;
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "fixed") {
        m.kind = Kind::fixed;
        m.fixed_s = std::stod(args);
        if (m.fixed_s <= 0) throw ConfigError("fixed segment length must be positive");
    } else if (kind == "lognormal") {
        m.kind = Kind::lognormal;
        std::istringstream ss(args);
        char comma;
        if (!(ss >> m.median_days >> comma >> m.sigma) || comma != ',')
            throw ConfigError("lognormal model wants median_days,sigma: " + spec);
        if (m.median_days <= 0 || m.sigma <= 0)
            throw ConfigError("lognormal parameters must be positive");
    } else if (kind == "cdf") {
        m.kind = Kind::cdf;
        std::ifstream in(args);
        if (!in) throw ConfigError("cannot open segment CDF file: " + args);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            double len, p;
            char comma;
            if (!(ls >> len >> comma >> p) || comma != ',')
                throw ConfigError("bad CDF line: " + line);
            m.cdf.emplace_back(len, p);
        }
        if (m.cdf.size() < 2) throw ConfigError("segment CDF needs >= 2 points");
        if (!std::is_sorted(m.cdf.begin(), m.cdf.end()))
            throw ConfigError("segment CDF must be sorted");
    } else {
        throw ConfigError("unknown segment model: " + spec);
    }
    return m;
}

std::string SegmentModel::spec() const {
    if (!raw.empty()) return raw;
    std::ostringstream ss;
    switch (kind) {
        case Kind::fixed: ss << "fixed:" << fixed_s; break;
        case Kind::lognormal:
            ss << "lognormal:" << median_days << "," << sigma;
            break;
        case Kind::cdf: ss << "cdf:<inline>"; break;
    }
    return ss.str();
}

double SegmentModel::draw(std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::fixed:
            return fixed_s;
        case Kind::lognormal: {
            const double mu = std::log(median_days * 86400.0);
            std::normal_distribution<double> normal(mu, sigma);
            return std::exp(normal(rng));
        }
        case Kind::cdf: {
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            const double u = uni(rng);
            // Inverse CDF by linear interpolation.
            for (size_t i = 1; i < cdf.size(); ++i) {
                if (u <= cdf[i].second) {
                    const auto& [l0, p0] = cdf[i - 1];
                    const auto& [l1, p1] = cdf[i];
                    if (p1 == p0) return l1;
                    return l0 + (l1 - l0) * (u - p0) / (p1 - p0);
                }
            }
            return cdf.back().first;
        }
    }
    return 0.0;
}

void SimConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0)) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(duration_s, "duration_s");
    positive(sample_interval_s, "sample_interval_s");
    positive(t_beacon_s, "t_beacon_s");
    positive(t_wakeup_s, "t_wakeup_s");
    positive(t_listen_s, "t_listen_s");
    positive(t_sync_s, "t_sync_s");
    positive(beacon_airtime_s, "beacon_airtime_s");
    if (sample_bytes <= 0 || anchor_record_bytes <= 0)
        throw ConfigError("byte sizes must be positive");
    if (numseg < 1) throw ConfigError("numseg must be >= 1");
    if (skew_ppm_min > skew_ppm_max)
        throw ConfigError("skew_ppm range is inverted");
    if (downtime_min_s > downtime_max_s)
        throw ConfigError("downtime range is inverted");
    if (comm_delay_min_s > comm_delay_max_s)
        throw ConfigError("comm delay range is inverted");
    if (p_down < 0 || p_down > 1) throw ConfigError("p_down must be in [0,1]");
    if (prr_cutoff < 0 || prr_cutoff >= 1)
        throw ConfigError("prr_cutoff must be in [0,1)");
    if (eviction_timeout_factor <= 0)
        throw ConfigError("eviction_timeout_factor must be positive");
    if (basestation_interval_s && *basestation_interval_s <= 0)
        throw ConfigError("basestation_interval_s must be positive");
    if (gps_outage && (gps_outage->first < 0 || gps_outage->second < 0))
        throw ConfigError("gps_outage window must be non-negative");
    if (gps_fault && (gps_fault->length_s < 0 || gps_fault->sigma_s < 0))
        throw ConfigError("gps_fault window must be non-negative");
}

Topology generate_topology(const std::string& kind, int n, double extent,
                           uint64_t seed) {
    if (n < 1) throw ConfigError("topology needs at least one mote");
    Topology topo;
    topo.motes.reserve(n);
    if (kind == "grid") {
        const int cols = static_cast<int>(std::ceil(std::sqrt(double(n))));
        const int rows = (n + cols - 1) / cols;
        const double sx = cols > 1 ? extent / (cols - 1) : 0.0;
        const double sy = rows > 1 ? extent / (rows - 1) : 0.0;
        for (int i = 0; i < n; ++i) {
            topo.motes.push_back({i, (i % cols) * sx, (i / cols) * sy});
        }
    } else if (kind == "uniform-random") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, extent);
        for (int i = 0; i < n; ++i) {
            const double x = uni(rng);
            const double y = uni(rng);
            topo.motes.push_back({i, x, y});
        }
    } else {
        throw ConfigError("unknown topology kind: " + kind);
    }
    topo.gps_mote = 0;
    return topo;
}

}  // namespace phoenix
