#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stackcast/costs.hpp"
#include "stackcast/errors.hpp"
#include "support/fixtures.hpp"

using namespace stackcast;
using namespace testsup;

TEST_CASE("conventional bounds: lignite hand arithmetic") {
    // fuel 10, eua 50, intensity 0.40, efficiencies (0.30, 0.43)
    CostBounds cb = conventional_cost_bounds(10.0, 50.0, 0.40, {0.30, 0.43}, 0.0);
    CHECK(cb.c_high == (10.0 + 0.40 * 50.0) / 0.30);  // 100.0
    CHECK(cb.c_low == (10.0 + 0.40 * 50.0) / 0.43);   // ~69.77
    CHECK(cb.c_low <= cb.c_high);
}

TEST_CASE("conventional bounds: zero fuel and carbon leaves other costs") {
    CostBounds cb = conventional_cost_bounds(0.0, 0.0, 0.5, {0.2, 0.9}, 7.0);
    CHECK(cb.c_low == 7.0);
    CHECK(cb.c_high == 7.0);
}

TEST_CASE("conventional bounds: degenerate equal efficiencies") {
    CostBounds cb = conventional_cost_bounds(30.0, 10.0, 0.2, {0.5, 0.5}, 0.0);
    CHECK(cb.c_low == 64.0);
    CHECK(cb.c_high == 64.0);
}

TEST_CASE("conventional bounds: clamped into the price space") {
    CostBounds cb = conventional_cost_bounds(400.0, 0.0, 0.0, {0.10, 0.40}, 0.0);
    CHECK(cb.c_high == kPriceCap);  // 4000 clamped
    CHECK(cb.c_low == 1000.0);
}

TEST_CASE("conventional bounds: raw candidates stay unsorted for diagnostics") {
    auto [lo_eta, hi_eta] = conventional_cost_candidates(10.0, 50.0, 0.40, {0.30, 0.43}, 0.0);
    CHECK(lo_eta > hi_eta);  // the L-superscript efficiency yields the higher cost
}

TEST_CASE("conventional bounds: nonpositive efficiency rejected") {
    CHECK_THROWS_AS(conventional_cost_bounds(1.0, 1.0, 0.1, {0.0, 0.4}, 0.0),
                    NonPositiveEfficiency);
}

TEST_CASE("res bounds mirror the bid pair") {
    CostBounds a = res_cost_bounds({-70.0, 20.0});
    CHECK(a.c_low == -70.0);
    CHECK(a.c_high == 20.0);
    CostBounds b = res_cost_bounds({0.0, 0.0});
    CHECK(b.c_low == 0.0);
    CHECK(b.c_high == 0.0);
    CostBounds c = res_cost_bounds({-500.0, 20.0});
    CHECK(c.c_low == -500.0);
    CHECK(c.c_high == 20.0);
}

TEST_CASE("cost_bounds_for_hour composes the per-plant calls") {
    PlantCatalog cat = small_catalog();
    HourlyPanel panel = flat_panel(cat, 4);
    ParameterSet params = ParameterSet::classical(cat);
    auto map = cost_bounds_for_hour(cat, panel, params, 0, Mode::Train);
    REQUIRE(map.size() == 3);
    CostBounds gas = conventional_cost_bounds(20.0, 50.0, 0.20, params.efficiency("gas"), 0.0);
    CHECK(map.at("gas").c_low == gas.c_low);
    CHECK(map.at("gas").c_high == gas.c_high);
    CostBounds wind = res_cost_bounds(params.bids("wind_onshore"));
    CHECK(map.at("wind_onshore").c_low == wind.c_low);
    CHECK(map.at("wind_onshore").c_high == wind.c_high);
}

TEST_CASE("cost_bounds_for_hour picks lagged fuels in test mode") {
    PlantCatalog cat = small_catalog();
    // Fuel price steps from 20 to 60 at hour 48.
    HourlyPanel panel = [&] {
        auto base = flat_panel(cat, 96);
        auto series = base.all_series();
        for (std::size_t i = 48; i < 96; ++i) {
            series["fuel.gas"][i] = 60.0;
            series["fuel.coal"][i] = 60.0;
        }
        return HourlyPanel(base.hours(), std::move(series));
    }();
    ParameterSet params = ParameterSet::classical(cat);
    auto train = cost_bounds_for_hour(cat, panel, params, 60, Mode::Train);
    auto test = cost_bounds_for_hour(cat, panel, params, 60, Mode::Test);
    CostBounds with20 = conventional_cost_bounds(20.0, 50.0, 0.20, params.efficiency("gas"), 0.0);
    CostBounds with60 = conventional_cost_bounds(60.0, 50.0, 0.20, params.efficiency("gas"), 0.0);
    CHECK(train.at("gas").c_high == with60.c_high);
    CHECK(test.at("gas").c_high == with20.c_high);  // row 60 - 48h lag = row 12
}

TEST_CASE("virtual plants price at the floor") {
    PlantType virt;
    virt.id = "must_run";
    virt.kind = PlantKind::Virtual;
    PlantCatalog cat({conv("gas", "gas", 0.20), virt});
    HourlyPanel panel = flat_panel(small_catalog(), 4);
    ParameterSet params = ParameterSet::classical(cat);
    auto map = cost_bounds_for_hour(cat, panel, params, 0, Mode::Train);
    CHECK(map.at("must_run").c_low == -500.0);
    CHECK(map.at("must_run").c_high == -500.0);
}

TEST_CASE("missing fuel series raises") {
    PlantCatalog cat({conv("gas", "gas", 0.2), conv("steamer", "oil", 0.3)});
    HourlyPanel panel = flat_panel(small_catalog(), 4);  // carries gas and coal prices only
    CHECK_THROWS_AS(cost_bounds_for_hour(cat, panel, ParameterSet::classical(cat), 0, Mode::Train),
                    MissingFuelSeries);
}

TEST_CASE("property: monotone in fuel and carbon prices, homogeneous of degree one") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        double fuel = uniform(rng, 0.0, 200.0);
        double eua = uniform(rng, 0.0, 150.0);
        double co2 = uniform(rng, 0.0, 1.0);
        EfficiencyPair eff{uniform(rng, 0.10, 0.50), uniform(rng, 0.10, 1.00)};
        CostBounds base = conventional_cost_bounds(fuel, eua, co2, eff, 0.0);

        CostBounds more_fuel = conventional_cost_bounds(fuel + 10.0, eua, co2, eff, 0.0);
        CHECK(more_fuel.c_low >= base.c_low);
        CHECK(more_fuel.c_high >= base.c_high);
        CostBounds more_eua = conventional_cost_bounds(fuel, eua + 10.0, co2, eff, 0.0);
        CHECK(more_eua.c_low >= base.c_low);
        CHECK(more_eua.c_high >= base.c_high);

        double k = uniform(rng, 0.1, 2.0);
        CostBounds scaled = conventional_cost_bounds(k * fuel, k * eua, co2, eff, 0.0);
        if (base.c_high < kPriceCap && scaled.c_high < kPriceCap) {
            CHECK(scaled.c_low == doctest::Approx(k * base.c_low).epsilon(1e-12));
            CHECK(scaled.c_high == doctest::Approx(k * base.c_high).epsilon(1e-12));
        }
    }
}

TEST_CASE("res bounds ignore fuel and carbon prices") {
    PlantCatalog cat = small_catalog();
    ParameterSet params = ParameterSet::classical(cat);
    HourlyPanel cheap = flat_panel(cat, 4, {{"fuel.gas", 1.0}, {"eua", 0.0}});
    HourlyPanel dear = flat_panel(cat, 4, {{"fuel.gas", 180.0}, {"eua", 140.0}});
    auto a = cost_bounds_for_hour(cat, cheap, params, 0, Mode::Train);
    auto b = cost_bounds_for_hour(cat, dear, params, 0, Mode::Train);
    CHECK(a.at("wind_onshore").c_low == b.at("wind_onshore").c_low);
    CHECK(a.at("wind_onshore").c_high == b.at("wind_onshore").c_high);
}
