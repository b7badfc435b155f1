// Supply-stack algebra: trapezoid plant stacks, their inverses, price-axis
// aggregation into a monotone piecewise-linear merit order, evaluation,
// inversion and the marginal-component decomposition.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stackcast/costs.hpp"

namespace stackcast {

struct PlantStack {
    std::string plant;
    double cap = 0.0;  // MW, >= 0
    CostBounds bounds;
};

// Linear interpolation from c_low at q=0 to c_high at q=cap; nullopt marks the
// beyond-capacity branch. Zero-cap stacks are feasible only at q=0.
std::optional<double> stack_eval(const PlantStack& s, double q);

// Total in p: clamps outside [c_low, c_high]. Degenerate stacks (c_low ==
// c_high) are right-continuous steps: full capacity at p >= cost.
double stack_invert(const PlantStack& s, double p);

struct CurvePoint {
    double q;
    double p;
};

class PiecewiseCurve {
public:
    // Exact construction: the inverse sum evaluated at the ordered set of all
    // plants' cost bounds, connected with linear segments. Ties merge; gaps
    // become vertical steps (two points with equal q).
    static PiecewiseCurve aggregate(std::span<const PlantStack> stacks);

    // Price at cumulative quantity q. Above total capacity returns the price
    // cap; at a vertical step returns the step's upper price.
    double eval(double q) const;

    // Dispatched quantity at price p; right-continuous, clamped to [0, cap].
    double invert(double p) const;

    double total_capacity() const { return points_.back().q; }
    const std::vector<CurvePoint>& points() const { return points_; }

    bool valid(std::string* why = nullptr) const;

private:
    std::vector<CurvePoint> points_;
};

struct ComponentShare {
    double p_lo = 0.0, p_hi = 0.0;  // segment price bounds
    double q_lo = 0.0, q_hi = 0.0;  // segment quantity bounds
    std::map<std::string, double> fraction;  // per plant, sums to 1
    bool carried = false;  // fractions carried over a zero-width segment
};

struct Decomposition {
    std::vector<ComponentShare> segments;
    std::map<std::string, double> fraction_at_q;  // marginal mix at the query point
    std::map<std::string, double> mocomp_at_q;    // fraction * price, interpolated
    std::vector<std::string> atm_plants;          // plants marginal at the query point
};

// Per-segment marginal generation fractions over the ordered cost grid, plus
// the per-plant component values at q (linear interpolation between segment
// boundaries). q must lie within [0, total capacity].
Decomposition components_at(std::span<const PlantStack> stacks, const PiecewiseCurve& curve,
                            double q);

}  // namespace stackcast
