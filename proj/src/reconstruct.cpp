#include "phoenix/reconstruct.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace phoenix {

AnchorStore build_anchor_store(std::span<const AnchorRecord> records) {
    AnchorStore store;
    for (const auto& rec : records) {
        if (rec.is_global()) {
            store.global_refs[rec.receiver].push_back({rec.lc_r, rec.lc_s});
        } else {
            const PairKey key = PairKey::of(rec.receiver, rec.sender);
            const bool receiver_is_lo = rec.receiver == key.lo;
            const double x = receiver_is_lo ? rec.lc_r : rec.lc_s;
            const double y = receiver_is_lo ? rec.lc_s : rec.lc_r;
            store.pairs[key].push_back({x, y});
        }
    }
    return store;
}

FitGraph build_fit_graph(const AnchorStore& store, int min_fit_points) {
    FitGraph graph;
    for (const auto& [key, points] : store.pairs) {
        graph.vertices.insert(key.lo);
        graph.vertices.insert(key.hi);
        LocalFit fit;
        switch (fit_llse(points, fit, min_fit_points)) {
            case FitError::none:
                graph.edges.emplace(key, fit);
                graph.adjacency[key.lo].push_back(key.hi);
                graph.adjacency[key.hi].push_back(key.lo);
                break;
            case FitError::insufficient_points:
                graph.diagnostics.pairs_insufficient++;
                break;
            default:
                graph.diagnostics.pairs_degenerate++;
                break;
        }
    }
    for (const auto& [seg, refs] : store.global_refs) {
        graph.vertices.insert(seg);
        LocalFit fit;
        switch (fit_llse(refs, fit, min_fit_points)) {
            case FitError::none:
                graph.gts_fits.emplace(seg, fit);
                break;
            case FitError::insufficient_points:
                graph.diagnostics.globals_insufficient++;
                break;
            default:
                graph.diagnostics.globals_degenerate++;
                break;
        }
    }
    return graph;
}

namespace {

const LocalFit& edge_fit(const FitGraph& graph, SegmentId a, SegmentId b) {
    return graph.edges.at(PairKey::of(a, b));
}

}  // namespace

PhoenixResult run_phoenix(const FitGraph& graph, const PhoenixOptions& opts) {
    PhoenixResult result;
    for (const SegmentId& s : graph.vertices) {
        result.fits.emplace(s, GlobalFit::sentinel(s));
    }

    std::deque<SegmentId> fifo;
    using ChiEntry = std::pair<double, SegmentId>;
    std::priority_queue<ChiEntry, std::vector<ChiEntry>, std::greater<>> pq;
    auto enqueue = [&](SegmentId s, double chi) {
        if (opts.queue == QueueDiscipline::fifo) {
            fifo.push_back(s);
        } else {
            pq.emplace(chi, s);
        }
    };

    for (const auto& [seg, lf] : graph.gts_fits) {
        GlobalFit gf;
        gf.alpha = lf.a;
        gf.beta = lf.b;
        gf.chi = lf.chi;
        gf.df = lf.df;
        result.fits[seg] = gf;
        enqueue(seg, gf.chi);
    }

    while (!fifo.empty() || !pq.empty()) {
        SegmentId q;
        if (opts.queue == QueueDiscipline::fifo) {
            q = fifo.front();
            fifo.pop_front();
        } else {
            q = pq.top().second;
            pq.pop();
        }
        const GlobalFit gf_q = result.fits.at(q);  // copy: may be replaced below
        if (gf_q.is_sentinel()) continue;

        const auto adj = graph.adjacency.find(q);
        if (adj == graph.adjacency.end()) continue;
        for (const SegmentId& c : adj->second) {
            // Cycle check: never route through a path that already uses c.
            if (gf_q.ancestors.contains(c)) continue;
            GlobalFit candidate;
            if (compose_fit(gf_q, edge_fit(graph, q, c), q, c, candidate) !=
                FitError::none) {
                continue;
            }
            GlobalFit& current = result.fits.at(c);
            if (candidate.chi < current.chi) {
                result.acceptance_log.push_back({c, current.chi, candidate.chi});
                current = std::move(candidate);
                enqueue(c, current.chi);
            }
        }
    }

    for (const auto& [seg, gf] : result.fits) {
        if (gf.is_sentinel()) result.unreachable.push_back(seg);
    }
    return result;
}

TieredResult run_phoenix_tiered(const AnchorStore& store,
                                const TieredOptions& opts) {
    const FitGraph full = build_fit_graph(store, opts.min_fit_points);

    FitGraph transit;
    transit.vertices = full.vertices;
    transit.gts_fits = full.gts_fits;
    for (const auto& [key, fit] : full.edges) {
        if (fit.n < opts.transit_min_points) continue;
        transit.edges.emplace(key, fit);
        transit.adjacency[key.lo].push_back(key.hi);
        transit.adjacency[key.hi].push_back(key.lo);
    }

    PhoenixOptions popts;
    popts.queue = opts.queue;
    PhoenixResult phase1 = run_phoenix(transit, popts);

    TieredResult result;
    result.fits = phase1.fits;
    result.acceptance_log = std::move(phase1.acceptance_log);
    result.diagnostics = full.diagnostics;
    result.vertices = full.vertices.size();
    result.edges = full.edges.size();
    result.transit_edges = transit.edges.size();
    result.gts_nodes = full.gts_fits.size();

    // Final hops compose only against phase-one fits, never against each
    // other; two thin hops would reintroduce the thin-chain problem. The
    // sweep covers every vertex, so a segment whose transit path went
    // through noisy references can still switch to one clean hop.
    for (const SegmentId& v : full.vertices) {
        GlobalFit& current = result.fits.at(v);
        GlobalFit best = current;
        const auto adj = full.adjacency.find(v);
        if (adj != full.adjacency.end()) {
            for (const SegmentId& nb : adj->second) {
                const GlobalFit& parent = phase1.fits.at(nb);
                if (parent.is_sentinel()) continue;
                if (parent.ancestors.contains(v)) continue;
                GlobalFit candidate;
                if (compose_fit(parent, full.edges.at(PairKey::of(v, nb)), nb,
                                v, candidate) != FitError::none) {
                    continue;
                }
                if (candidate.chi < best.chi) best = candidate;
            }
        }
        if (best.chi < current.chi) {
            current = std::move(best);
            result.terminal_attached++;
        }
    }

    for (int pass = 0; pass < opts.refine_passes; ++pass) {
        result.fits = refine_fits(store, full, result.fits);
    }

    for (const auto& [seg, gf] : result.fits) {
        if (gf.is_sentinel()) result.unreachable.push_back(seg);
    }
    return result;
}

std::map<SegmentId, GlobalFit> refine_fits(
    const AnchorStore& store, const FitGraph& graph,
    const std::map<SegmentId, GlobalFit>& fits) {
    // Floor on the chi in the weights; exact sources would otherwise get
    // infinite weight and quantization-level chi values already sit near it.
    constexpr double kEps = 1e-9;

    std::map<SegmentId, GlobalFit> out = fits;
    for (auto& [v, gf] : out) {
        if (gf.is_sentinel()) continue;

        struct WPoint {
            double x, y, w;
        };
        std::vector<WPoint> pts;

        const auto gts_fit = graph.gts_fits.find(v);
        if (gts_fit != graph.gts_fits.end()) {
            const double w = 1.0 / (gts_fit->second.chi + kEps);
            for (const auto& p : store.global_refs.at(v)) {
                pts.push_back({p.x, p.y, w});
            }
        }

        const auto adj = graph.adjacency.find(v);
        if (adj != graph.adjacency.end()) {
            for (const SegmentId& nb : adj->second) {
                const auto fit_nb = fits.find(nb);
                if (fit_nb == fits.end() || fit_nb->second.is_sentinel())
                    continue;
                const PairKey key = PairKey::of(v, nb);
                const double w =
                    1.0 /
                    (fit_nb->second.chi + graph.edges.at(key).chi + kEps);
                const bool v_is_lo = v == key.lo;
                for (const auto& p : store.pairs.at(key)) {
                    const double lc_v = v_is_lo ? p.x : p.y;
                    const double lc_nb = v_is_lo ? p.y : p.x;
                    pts.push_back(
                        {lc_v, *estimate_gts(fit_nb->second, lc_nb), w});
                }
            }
        }
        if (pts.size() < 2) continue;

        long double sw = 0.0L, swx = 0.0L, swy = 0.0L;
        for (const auto& p : pts) {
            sw += p.w;
            swx += static_cast<long double>(p.w) * p.x;
            swy += static_cast<long double>(p.w) * p.y;
        }
        const long double mx = swx / sw;
        const long double my = swy / sw;
        long double sxx = 0.0L, sxy = 0.0L;
        for (const auto& p : pts) {
            const long double dx = p.x - mx;
            sxx += p.w * dx * dx;
            sxy += p.w * dx * (p.y - my);
        }
        if (sxx <= 0.0L) continue;
        const long double a = sxy / sxx;
        gf.alpha = static_cast<double>(a);
        gf.beta = static_cast<double>(my - a * mx);
    }
    return out;
}

AssignResult assign_timestamps(std::span<const std::pair<SegmentId, double>> samples,
                               const std::map<SegmentId, GlobalFit>& fits) {
    AssignResult result;
    result.samples.reserve(samples.size());
    for (const auto& [seg, lc] : samples) {
        std::optional<double> gts;
        const auto it = fits.find(seg);
        if (it != fits.end()) gts = estimate_gts(it->second, lc);
        if (!gts) result.loss.lost++;
        result.loss.total++;
        result.samples.push_back({seg, lc, gts});
    }
    return result;
}

std::map<SegmentId, GlobalFit> rgtr_baseline(const AnchorStore& store) {
    std::map<SegmentId, GlobalFit> fits;

    // Direct fits for segments with at least two references.
    std::map<int32_t, std::pair<double, int>> alpha_acc;  // mote -> (sum, count)
    for (const auto& [seg, refs] : store.global_refs) {
        LocalFit lf;
        if (refs.size() >= 2 && fit_llse(refs, lf, 2) == FitError::none) {
            GlobalFit gf;
            gf.alpha = lf.a;
            gf.beta = lf.b;
            gf.chi = lf.chi;
            gf.df = lf.df;
            fits[seg] = gf;
            auto& [sum, count] = alpha_acc[seg.mote_id];
            sum += lf.a;
            count++;
        }
    }

    // Single-reference segments reuse the mote's mean slope when one exists.
    for (const auto& [seg, refs] : store.global_refs) {
        if (fits.contains(seg)) continue;
        if (refs.size() == 1) {
            const auto hint = alpha_acc.find(seg.mote_id);
            if (hint != alpha_acc.end() && hint->second.second > 0) {
                GlobalFit gf;
                gf.alpha = hint->second.first / hint->second.second;
                gf.beta = refs[0].y - gf.alpha * refs[0].x;
                gf.chi = 0.0;
                gf.df = 0;
                fits[seg] = gf;
                continue;
            }
        }
        fits[seg] = GlobalFit::sentinel(seg);
    }

    // Segments seen only in pairwise anchors stay sentinel.
    for (const auto& [key, points] : store.pairs) {
        for (const SegmentId s : {key.lo, key.hi}) {
            if (!fits.contains(s)) fits[s] = GlobalFit::sentinel(s);
        }
    }
    return fits;
}

}  // namespace phoenix
