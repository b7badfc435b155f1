// Train/test input selection. In test mode, series that are not known at the
// day-ahead auction (fuel prices, available capacities, realized hydro and net
// imports) are replaced with lagged values; load and RES switch to their
// day-ahead forecasts.
#pragma once

namespace stackcast {

enum class Mode { Train, Test };

struct ModeConfig {
    int capacity_lag_hours = 48;  // persistence lag for conventional capacities
    int fuel_lag_hours = 48;      // front-month closes enter at d-2
};

}  // namespace stackcast
