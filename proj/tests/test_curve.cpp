#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stackcast/curve.hpp"
#include "stackcast/errors.hpp"
#include "support/fixtures.hpp"

using namespace stackcast;
using namespace testsup;

namespace {

PlantStack stack(const std::string& id, double cap, double lo, double hi) {
    return {id, cap, {lo, hi}};
}

// The two-plant overlap fixture used throughout: A 100 MW at 10-20,
// B 100 MW at 15-25.
std::vector<PlantStack> overlap_fleet() {
    return {stack("A", 100.0, 10.0, 20.0), stack("B", 100.0, 15.0, 25.0)};
}

}  // namespace

TEST_CASE("stack_eval interpolates the trapezoid") {
    PlantStack s = stack("A", 100.0, 10.0, 20.0);
    CHECK(*stack_eval(s, 50.0) == 15.0);
    CHECK(*stack_eval(s, 0.0) == 10.0);
    CHECK(*stack_eval(s, 100.0) == 20.0);
    CHECK(!stack_eval(s, 101.0).has_value());
    CHECK_THROWS_AS((void)stack_eval(s, -1.0), NegativeQuantity);

    PlantStack zero = stack("Z", 0.0, 5.0, 7.0);
    CHECK(*stack_eval(zero, 0.0) == 5.0);
    CHECK(!stack_eval(zero, 1.0).has_value());
}

TEST_CASE("stack_invert clamps and steps") {
    PlantStack s = stack("A", 100.0, 10.0, 20.0);
    CHECK(stack_invert(s, 15.0) == 50.0);
    CHECK(stack_invert(s, 5.0) == 0.0);
    CHECK(stack_invert(s, 25.0) == 100.0);

    PlantStack step = stack("S", 100.0, 12.0, 12.0);
    CHECK(stack_invert(step, 12.0) == 100.0);  // right-continuous
    CHECK(stack_invert(step, 11.999) == 0.0);
    CHECK(stack_invert(step, 13.0) == 100.0);
}

TEST_CASE("aggregate: singleton equals the stack's breakpoints") {
    std::vector<PlantStack> fleet = {stack("A", 100.0, 10.0, 20.0)};
    PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
    REQUIRE(c.points().size() == 2);
    CHECK(c.points()[0].q == 0.0);
    CHECK(c.points()[0].p == 10.0);
    CHECK(c.points()[1].q == 100.0);
    CHECK(c.points()[1].p == 20.0);
}

TEST_CASE("aggregate: two-plant overlap passes through the hand-summed points") {
    auto fleet = overlap_fleet();
    PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
    CHECK(c.eval(0.0) == 10.0);
    CHECK(c.invert(15.0) == 50.0);
    CHECK(c.invert(20.0) == 150.0);
    CHECK(c.invert(25.0) == 200.0);
    CHECK(c.eval(150.0) == 20.0);
    CHECK(c.total_capacity() == 200.0);
}

TEST_CASE("aggregate rejects an empty fleet") {
    std::vector<PlantStack> none;
    CHECK_THROWS_AS(PiecewiseCurve::aggregate(none), EmptyFleet);
}

TEST_CASE("curve_eval: endpoints, cap and steps") {
    auto fleet = overlap_fleet();
    PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
    CHECK(c.eval(0.0) == 10.0);
    CHECK(c.eval(201.0) == kPriceCap);
    CHECK_THROWS_AS((void)c.eval(-0.5), NegativeQuantity);

    // Vertical step: gap between 20 and 30 at q = 100.
    std::vector<PlantStack> gap = {stack("A", 100.0, 10.0, 20.0), stack("B", 50.0, 30.0, 40.0)};
    PiecewiseCurve g = PiecewiseCurve::aggregate(gap);
    CHECK(g.eval(100.0) == 30.0);  // upper price of the step
    CHECK(g.invert(25.0) == 100.0);
}

TEST_CASE("curve_invert clamps to the quantity range") {
    auto fleet = overlap_fleet();
    PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
    CHECK(c.invert(5.0) == 0.0);
    CHECK(c.invert(2999.0) == 200.0);
}

TEST_CASE("components_at: overlap segment splits 50/50") {
    auto fleet = overlap_fleet();
    PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
    Decomposition dec = components_at(fleet, c, 150.0);
    // Segment (15, 20): A contributes 50 of 100, B contributes 50 of 100.
    bool found = false;
    for (const auto& seg : dec.segments) {
        if (seg.p_lo == 15.0 && seg.p_hi == 20.0) {
            found = true;
            CHECK(seg.fraction.at("A") == doctest::Approx(0.5));
            CHECK(seg.fraction.at("B") == doctest::Approx(0.5));
        }
    }
    CHECK(found);
    CHECK(dec.mocomp_at_q.at("A") == doctest::Approx(10.0));
    CHECK(dec.mocomp_at_q.at("B") == doctest::Approx(10.0));
    CHECK(dec.atm_plants.size() == 2);
}

TEST_CASE("components_at: sole supplier holds fraction one everywhere") {
    std::vector<PlantStack> fleet = {stack("A", 100.0, 10.0, 20.0)};
    PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
    Decomposition dec = components_at(fleet, c, 40.0);
    for (const auto& seg : dec.segments) CHECK(seg.fraction.at("A") == 1.0);
    CHECK(dec.fraction_at_q.at("A") == 1.0);
}

TEST_CASE("components_at: degenerate gap segments carry fractions") {
    std::vector<PlantStack> gap = {stack("A", 100.0, 10.0, 20.0), stack("B", 50.0, 30.0, 40.0)};
    PiecewiseCurve c = PiecewiseCurve::aggregate(gap);
    Decomposition dec = components_at(gap, c, 100.0);
    for (const auto& seg : dec.segments) {
        double sum = 0.0;
        for (const auto& [pl, f] : seg.fraction) sum += f;
        CHECK(std::abs(sum - 1.0) <= 1e-9);
        if (seg.p_lo == 20.0 && seg.p_hi == 30.0) {
            CHECK(seg.carried);
            CHECK(seg.fraction.at("A") == doctest::Approx(1.0));  // carried from (10,20)
        }
    }
}

TEST_CASE("components_at: floor step plant is marginal below its capacity") {
    std::vector<PlantStack> fleet = {stack("mr", 300.0, -500.0, -500.0),
                                     stack("A", 100.0, 10.0, 20.0)};
    PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
    Decomposition dec = components_at(fleet, c, 150.0);
    CHECK(dec.fraction_at_q.at("mr") == doctest::Approx(1.0));
    CHECK(c.eval(150.0) == -500.0);
}

TEST_CASE("property: aggregation oracle over random fleets") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        auto fleet = random_fleet(rng);
        PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
        std::string why;
        REQUIRE_MESSAGE(c.valid(&why), why);
        for (int k = 0; k < 50; ++k) {
            double p = uniform(rng, -600.0, 3100.0);
            double direct = 0.0;
            for (const auto& s : fleet) direct += stack_invert(s, p);
            CHECK(std::abs(c.invert(p) - direct) <= 1e-9);
        }
    }
}

TEST_CASE("property: monotonicity and round trip") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        auto fleet = random_fleet(rng);
        PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
        double cap = c.total_capacity();

        double q1 = uniform(rng, 0.0, cap);
        double q2 = uniform(rng, 0.0, cap);
        if (q1 > q2) std::swap(q1, q2);
        CHECK(c.eval(q1) <= c.eval(q2));

        double p1 = uniform(rng, -600.0, 3100.0);
        double p2 = uniform(rng, -600.0, 3100.0);
        if (p1 > p2) std::swap(p1, p2);
        CHECK(c.invert(p1) <= c.invert(p2));

        // Round trip strictly inside strictly-increasing segments.
        const auto& pts = c.points();
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i].q > pts[i - 1].q && pts[i].p > pts[i - 1].p) {
                double q = pts[i - 1].q + 0.37 * (pts[i].q - pts[i - 1].q);
                CHECK(std::abs(c.invert(c.eval(q)) - q) <= 1e-9);
            }
        }

        // Capacity conservation at the cap price, exactly.
        double total = 0.0;
        for (const auto& s : fleet) total += s.cap;
        CHECK(c.invert(kPriceCap) == total);
    }
}

TEST_CASE("property: component closure") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        auto fleet = random_fleet(rng);
        double total = 0.0;
        for (const auto& s : fleet) total += s.cap;
        if (total <= 0.0) continue;
        PiecewiseCurve c = PiecewiseCurve::aggregate(fleet);
        Decomposition dec = components_at(fleet, c, uniform(rng, 0.0, total));
        for (const auto& seg : dec.segments) {
            double sum = 0.0;
            for (const auto& [pl, f] : seg.fraction) sum += f;
            CHECK(std::abs(sum - 1.0) <= 1e-9);
            // Reconstruction at the segment's upper boundary.
            double price = c.eval(seg.q_hi);
            double recon = 0.0;
            for (const auto& [pl, f] : seg.fraction) recon += f * price;
            CHECK(std::abs(recon - price) <= 1e-9 * (1.0 + std::abs(price)));
        }
    }
}
