#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace phoenix {

// One monotonic run of a mote's local clock. Ordered lexicographically by
// (mote_id, reboot_count); the ordering decides which side of a pairwise fit
// is the independent variable.
struct SegmentId {
    int32_t mote_id = 0;
    int32_t reboot_count = 0;

    auto operator<=>(const SegmentId&) const = default;
};

// One observed clock pair. A record with receiver == sender is a global
// anchor: lc_r is local time and lc_s carries global time.
struct AnchorRecord {
    SegmentId receiver;
    double lc_r = 0.0;  // seconds on receiver's local clock
    SegmentId sender;
    double lc_s = 0.0;  // seconds on sender's clock (global time for self-pairs)

    bool is_global() const { return receiver == sender; }
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Files carry integer microseconds; memory carries floating seconds.
// Conversion rounds half to even (the default FP rounding mode).
inline int64_t seconds_to_us(double s) { return std::llrint(s * 1e6); }
inline double us_to_seconds(int64_t us) { return static_cast<double>(us) / 1e6; }
inline double quantize_us(double s) { return us_to_seconds(seconds_to_us(s)); }

// Least-squares line y = a*x + b between two clocks, with the unbiased
// residual variance chi = RSS/(n-2) used as the edge weight.
struct LocalFit {
    double a = 0.0;
    double b = 0.0;
    double chi = 0.0;  // seconds^2
    int df = 0;        // n - 2
    int n = 0;
};

inline constexpr double kChiMax = std::numeric_limits<double>::max();

// A segment's mapping to global time: GTS = alpha*lc + beta. `ancestors`
// holds the segments strictly above this one on the path to a GTS-anchored
// segment, so a segment never appears in its own ancestor set.
struct GlobalFit {
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<SegmentId> parent;
    std::set<SegmentId> ancestors;
    double chi = kChiMax;
    int df = 0;

    bool is_sentinel() const { return chi == kChiMax; }

    static GlobalFit sentinel(SegmentId self) {
        GlobalFit gf;
        gf.ancestors = {self};
        return gf;
    }
};

enum class FitError {
    none,
    insufficient_points,
    degenerate_x,  // zero variance in x
    zero_slope,
    sentinel_fit,
};

inline constexpr int kDefaultMinFitPoints = 3;

// Plain least-squares regression of y on x. Requires n >= min_points and
// non-degenerate x. df = n - 2 (clamped to 0 for the two-point case, where
// chi is reported as 0).
FitError fit_llse(std::span<const Point> points, LocalFit& out,
                  int min_points = kDefaultMinFitPoints);

// Extends q's global fit across the stored fit for the ordered pair
// (min(q,c), max(q,c)), producing a candidate global fit for c. The smaller
// segment is the independent variable of `lf`.
FitError compose_fit(const GlobalFit& gf_q, const LocalFit& lf, SegmentId q,
                     SegmentId c, GlobalFit& out);

// GTS estimate for a local timestamp; empty for sentinel fits.
std::optional<double> estimate_gts(const GlobalFit& fit, double lc);

}  // namespace phoenix
