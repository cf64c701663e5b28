#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phoenix/clock_model.hpp"

namespace phoenix {

// Canonically ordered segment pair; the key under which pairwise clock
// points and fits are stored. lo is the independent variable.
struct PairKey {
    SegmentId lo;
    SegmentId hi;

    auto operator<=>(const PairKey&) const = default;

    static PairKey of(SegmentId a, SegmentId b) {
        return a < b ? PairKey{a, b} : PairKey{b, a};
    }
};

// All collected anchor points, partitioned into pairwise clock points
// (x = smaller segment's clock) and per-segment global references.
struct AnchorStore {
    std::map<PairKey, std::vector<Point>> pairs;
    std::map<SegmentId, std::vector<Point>> global_refs;  // (lc, gts)
};

AnchorStore build_anchor_store(std::span<const AnchorRecord> records);

struct GraphDiagnostics {
    int pairs_insufficient = 0;
    int pairs_degenerate = 0;
    int globals_insufficient = 0;
    int globals_degenerate = 0;

    int dropped_total() const {
        return pairs_insufficient + pairs_degenerate + globals_insufficient +
               globals_degenerate;
    }
};

// Segments as vertices, successful pairwise fits as edges, plus the direct
// local->global fits for GTS-anchored segments.
struct FitGraph {
    std::set<SegmentId> vertices;
    std::map<PairKey, LocalFit> edges;
    std::map<SegmentId, LocalFit> gts_fits;
    std::map<SegmentId, std::vector<SegmentId>> adjacency;
    GraphDiagnostics diagnostics;
};

FitGraph build_fit_graph(const AnchorStore& store,
                         int min_fit_points = kDefaultMinFitPoints);

enum class QueueDiscipline { fifo, priority };

struct PhoenixOptions {
    QueueDiscipline queue = QueueDiscipline::fifo;
};

struct AcceptanceEvent {
    SegmentId segment;
    double old_chi = 0.0;
    double new_chi = 0.0;
};

struct PhoenixResult {
    std::map<SegmentId, GlobalFit> fits;
    std::vector<AcceptanceEvent> acceptance_log;
    std::vector<SegmentId> unreachable;
};

// Label-correcting relaxation over the fit graph: seeds GTS-anchored
// segments with their direct fits, then repeatedly extends fits to
// neighbors, keeping the lowest-chi acyclic path per segment.
PhoenixResult run_phoenix(const FitGraph& graph, const PhoenixOptions& opts = {});

// Edges below this point count may not carry a fit onward to further
// segments. Their chi estimate rests on very few degrees of freedom, and the
// df-weighted path mean gives them almost no weight, so the relaxation would
// otherwise prefer long chains of such edges over one well-supported hop.
inline constexpr int kDefaultTransitMinPoints = 6;

// Each refinement pass re-fits every segment against all of its incident
// anchor points at once, mapped to global time through the neighbors'
// current fits. The relaxation tree estimates a segment from a single edge,
// so a long segment's slope rests on one small patch of its life and the
// extrapolated intercept drifts; pooling all patches repairs that. Fits are
// weighted by the inverse of the source chi, which also keeps corrupted
// references from leaking back in.
inline constexpr int kDefaultRefinePasses = 2;

struct TieredOptions {
    int min_fit_points = kDefaultMinFitPoints;
    int transit_min_points = kDefaultTransitMinPoints;
    int refine_passes = kDefaultRefinePasses;
    QueueDiscipline queue = QueueDiscipline::fifo;
};

struct TieredResult {
    std::map<SegmentId, GlobalFit> fits;
    std::vector<AcceptanceEvent> acceptance_log;
    std::vector<SegmentId> unreachable;
    GraphDiagnostics diagnostics;  // from the permissive graph
    size_t vertices = 0;
    size_t edges = 0;          // all admitted edges
    size_t transit_edges = 0;  // edges eligible to extend paths
    size_t gts_nodes = 0;
    int terminal_attached = 0;  // segments fitted through a final thin hop
};

// Two-phase reconstruction: run_phoenix over the edges with at least
// transit_min_points, then sweep every admitted edge once more as a possible
// final hop, composing only against phase-one fits and accepting on the same
// strictly-lower-chi rule. Thin edges are sound for the samples of the
// segments they touch but extrapolate poorly beyond them, so they never
// appear mid-path. transit_min_points <= min_fit_points disables the second
// phase.
TieredResult run_phoenix_tiered(const AnchorStore& store,
                                const TieredOptions& opts = {});

// One weighted re-fit sweep as described at kDefaultRefinePasses. Only alpha
// and beta change; chi, df, parent, and ancestors keep describing the tree
// path that seeded the fit. Sentinel fits stay sentinel.
std::map<SegmentId, GlobalFit> refine_fits(
    const AnchorStore& store, const FitGraph& graph,
    const std::map<SegmentId, GlobalFit>& fits);

struct DataLossReport {
    int64_t total = 0;
    int64_t lost = 0;

    double loss_pct() const {
        return total > 0 ? 100.0 * static_cast<double>(lost) / total : 0.0;
    }
};

struct TimestampedSample {
    SegmentId seg;
    double lc = 0.0;
    std::optional<double> gts;
};

struct AssignResult {
    std::vector<TimestampedSample> samples;
    DataLossReport loss;
};

AssignResult assign_timestamps(std::span<const std::pair<SegmentId, double>> samples,
                               const std::map<SegmentId, GlobalFit>& fits);

// Direct-fit baseline: each segment is fitted from its own global references
// only. Segments with a single reference fall back to the per-mote mean of
// the directly fitted slopes, when available.
std::map<SegmentId, GlobalFit> rgtr_baseline(const AnchorStore& store);

}  // namespace phoenix
