#include "stackcast/curve.hpp"

#include <algorithm>
#include <cmath>

#include "stackcast/errors.hpp"

namespace stackcast {

std::optional<double> stack_eval(const PlantStack& s, double q) {
    if (q < 0.0) throw NegativeQuantity("stack_eval: q < 0");
    if (q > s.cap) return std::nullopt;
    if (s.cap == 0.0) return s.bounds.c_low;  // only q == 0 reaches here
    return s.bounds.c_low + (q / s.cap) * (s.bounds.c_high - s.bounds.c_low);
}

double stack_invert(const PlantStack& s, double p) {
    const double lo = s.bounds.c_low, hi = s.bounds.c_high;
    if (hi == lo) return p < lo ? 0.0 : s.cap;
    return s.cap * (std::max(std::min(p, hi), lo) - lo) / (hi - lo);
}

PiecewiseCurve PiecewiseCurve::aggregate(std::span<const PlantStack> stacks) {
    if (stacks.empty()) throw EmptyFleet("aggregate: no stacks");
    for (const auto& s : stacks) {
        if (s.cap < 0.0) throw NegativeQuantity("aggregate: stack '" + s.plant + "' has cap < 0");
        if (s.bounds.c_low > s.bounds.c_high)
            throw Error("aggregate: stack '" + s.plant + "' has unsorted bounds");
    }

    // Ordered set of all lower and upper costs, exact ties merged.
    std::vector<double> grid;
    grid.reserve(stacks.size() * 2);
    for (const auto& s : stacks) {
        grid.push_back(s.bounds.c_low);
        grid.push_back(s.bounds.c_high);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    PiecewiseCurve curve;
    auto& pts = curve.points_;
    pts.reserve(grid.size() + 1);
    pts.push_back({0.0, grid.front()});
    for (double p : grid) {
        double q = 0.0;
        for (const auto& s : stacks) q += stack_invert(s, p);
        if (q == pts.back().q && p == pts.back().p) continue;  // exact duplicate
        pts.push_back({q, p});
    }
    return curve;
}

double PiecewiseCurve::eval(double q) const {
    if (q < 0.0) throw NegativeQuantity("curve_eval: q < 0");
    if (q > total_capacity()) return kPriceCap;
    auto it = std::upper_bound(points_.begin(), points_.end(), q,
                               [](double v, const CurvePoint& cp) { return v < cp.q; });
    // q <= back().q and front().q == 0 <= q, so a predecessor always exists.
    auto prev = it - 1;
    if (prev->q == q) return prev->p;  // exact hit; last point wins at vertical steps
    return prev->p + (q - prev->q) * (it->p - prev->p) / (it->q - prev->q);
}

double PiecewiseCurve::invert(double p) const {
    if (p < points_.front().p) return 0.0;
    if (p >= points_.back().p) return points_.back().q;
    auto it = std::upper_bound(points_.begin(), points_.end(), p,
                               [](double v, const CurvePoint& cp) { return v < cp.p; });
    auto prev = it - 1;
    if (prev->p == p) return prev->q;  // right-continuous: full flat segment dispatches
    return prev->q + (p - prev->p) * (it->q - prev->q) / (it->p - prev->p);
}

bool PiecewiseCurve::valid(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (points_.empty()) return fail("no points");
    if (points_.front().q != 0.0) return fail("first q != 0");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const auto& a = points_[i - 1];
        const auto& b = points_[i];
        if (b.q < a.q) return fail("q decreases at index " + std::to_string(i));
        if (b.p < a.p) return fail("p decreases at index " + std::to_string(i));
        if (b.q == a.q && b.p == a.p) return fail("duplicate point at index " + std::to_string(i));
    }
    return true;
}

Decomposition components_at(std::span<const PlantStack> stacks, const PiecewiseCurve& curve,
                            double q) {
    if (q < 0.0) throw NegativeQuantity("components_at: q < 0");
    if (q > curve.total_capacity()) throw RangeError("components_at: q above total capacity");

    std::vector<double> grid;
    grid.reserve(stacks.size() * 2);
    for (const auto& s : stacks) {
        grid.push_back(s.bounds.c_low);
        grid.push_back(s.bounds.c_high);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // Inverse sums and per-plant inverses on the grid.
    const std::size_t m = grid.size();
    std::vector<double> qsum(m, 0.0);
    std::vector<std::vector<double>> qpl(stacks.size(), std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < stacks.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) {
            qpl[j][i] = stack_invert(stacks[j], grid[i]);
            qsum[i] += qpl[j][i];
        }

    Decomposition dec;
    dec.segments.reserve(m);
    std::map<std::string, double> carried;
    bool have_carried = false;
    std::vector<std::size_t> pending;  // leading zero-width segments, back-filled

    // Quantities dispatched at the very first grid price (degenerate stacks at
    // the minimum cost) form a leading flat segment of their own.
    if (qsum[0] > 0.0) {
        ComponentShare seg;
        seg.p_lo = seg.p_hi = grid[0];
        seg.q_lo = 0.0;
        seg.q_hi = qsum[0];
        for (std::size_t j = 0; j < stacks.size(); ++j)
            seg.fraction[stacks[j].plant] = qpl[j][0] / qsum[0];
        carried = seg.fraction;
        have_carried = true;
        dec.segments.push_back(std::move(seg));
    }

    for (std::size_t i = 1; i < m; ++i) {
        ComponentShare seg;
        seg.p_lo = grid[i - 1];
        seg.p_hi = grid[i];
        seg.q_lo = qsum[i - 1];
        seg.q_hi = qsum[i];
        double width = qsum[i] - qsum[i - 1];
        if (width > 0.0) {
            for (std::size_t j = 0; j < stacks.size(); ++j)
                seg.fraction[stacks[j].plant] = (qpl[j][i] - qpl[j][i - 1]) / width;
            carried = seg.fraction;
            have_carried = true;
            dec.segments.push_back(std::move(seg));
            for (std::size_t k : pending) dec.segments[k].fraction = carried;
            pending.clear();
        } else {
            // Zero-width segment: no plant adds capacity here; carry fractions.
            seg.carried = true;
            if (have_carried) seg.fraction = carried;
            else pending.push_back(dec.segments.size());
            dec.segments.push_back(std::move(seg));
        }
    }
    if (!have_carried)
        throw DegenerateSegment("components_at: every segment has zero width");

    // Boundary values: MOComp at each distinct boundary quantity, using the
    // fraction of the segment ending there.
    struct Boundary {
        double q;
        std::map<std::string, double> value;  // fraction * price
        const std::map<std::string, double>* frac;
    };
    std::vector<Boundary> bounds;
    auto push_boundary = [&](double bq, const std::map<std::string, double>& frac) {
        double price = curve.eval(bq);
        Boundary b;
        b.q = bq;
        b.frac = &frac;
        for (const auto& [pl, f] : frac) b.value[pl] = f * price;
        if (!bounds.empty() && bounds.back().q == bq)
            bounds.back() = std::move(b);  // dedupe: the last segment ending here wins
        else
            bounds.push_back(std::move(b));
    };
    push_boundary(dec.segments.front().q_lo, dec.segments.front().fraction);
    for (const auto& seg : dec.segments) push_boundary(seg.q_hi, seg.fraction);

    // Interpolate the component values at q.
    auto it = std::upper_bound(bounds.begin(), bounds.end(), q,
                               [](double v, const Boundary& b) { return v < b.q; });
    if (it == bounds.begin()) it = bounds.begin() + 1;
    auto prev = it - 1;
    if (prev->q == q || it == bounds.end()) {
        dec.mocomp_at_q = prev->value;
        dec.fraction_at_q = *prev->frac;
    } else {
        double w = (q - prev->q) / (it->q - prev->q);
        for (const auto& [pl, v0] : prev->value)
            dec.mocomp_at_q[pl] = v0 + w * (it->value.at(pl) - v0);
        dec.fraction_at_q = *it->frac;  // mix of the segment containing q
    }
    for (const auto& [pl, f] : dec.fraction_at_q)
        if (f > 1e-12) dec.atm_plants.push_back(pl);
    return dec;
}

}  // namespace stackcast
