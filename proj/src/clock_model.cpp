#include "phoenix/clock_model.hpp"

namespace phoenix {

FitError fit_llse(std::span<const Point> points, LocalFit& out, int min_points) {
    const int n = static_cast<int>(points.size());
    if (n < min_points || n < 2) return FitError::insufficient_points;

    // Center both coordinates before forming the sums; local clocks carry
    // large offsets that would otherwise cancel catastrophically. Sums are
    // accumulated in extended precision: chi sits many orders of magnitude
    // below the clock values and loses digits in plain double.
    long double mx = 0.0L, my = 0.0L;
    for (const auto& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;

    long double sxx = 0.0L, sxy = 0.0L;
    for (const auto& p : points) {
        const long double dx = p.x - mx;
        sxx += dx * dx;
        sxy += dx * (p.y - my);
    }
    if (sxx == 0.0L) return FitError::degenerate_x;

    const long double a = sxy / sxx;
    const long double b = my - a * mx;

    long double rss = 0.0L;
    for (const auto& p : points) {
        const long double r = (p.y - my) - a * (p.x - mx);
        rss += r * r;
    }

    out.a = static_cast<double>(a);
    out.b = static_cast<double>(b);
    out.n = n;
    out.df = n > 2 ? n - 2 : 0;
    out.chi = out.df > 0 ? static_cast<double>(rss / out.df) : 0.0;
    if (out.chi < 0.0) out.chi = 0.0;
    return FitError::none;
}

FitError compose_fit(const GlobalFit& gf_q, const LocalFit& lf, SegmentId q,
                     SegmentId c, GlobalFit& out) {
    if (gf_q.is_sentinel()) return FitError::sentinel_fit;

    // Extended precision: intercepts are epoch-scale seconds, and chains of
    // composes would otherwise random-walk at the double ulp of ~1e6 s.
    if (q > c) {
        // lf maps c -> q: q = a*c + b.
        out.alpha = static_cast<double>(
            static_cast<long double>(gf_q.alpha) * lf.a);
        out.beta = static_cast<double>(
            static_cast<long double>(gf_q.alpha) * lf.b + gf_q.beta);
    } else {
        // lf maps q -> c: c = a*q + b, so q = (c - b)/a.
        if (lf.a == 0.0) return FitError::zero_slope;
        const long double alpha = static_cast<long double>(gf_q.alpha) / lf.a;
        out.alpha = static_cast<double>(alpha);
        out.beta = static_cast<double>(gf_q.beta - alpha * lf.b);
    }

    const int dfsum = gf_q.df + lf.df;
    out.chi = dfsum > 0
                  ? (gf_q.df * gf_q.chi + lf.df * lf.chi) / dfsum
                  : 0.0;
    out.df = dfsum;
    out.parent = q;
    out.ancestors = gf_q.ancestors;
    out.ancestors.insert(q);
    return FitError::none;
}

std::optional<double> estimate_gts(const GlobalFit& fit, double lc) {
    if (fit.is_sentinel()) return std::nullopt;
    return fit.alpha * lc + fit.beta;
}

}  // namespace phoenix
