// Error types shared across the library. Everything derives from Error so the
// CLI can distinguish input/data problems (exit 2) from internal faults (exit 1).
#pragma once

#include <stdexcept>
#include <string>

namespace stackcast {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// market data
struct SchemaMismatch : Error { using Error::Error; };
struct GapError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct CutOutOfRange : Error { using Error::Error; };
struct InfeasibleSpec : Error { using Error::Error; };
struct MissingSeries : Error { using Error::Error; };

// costs and catalog
struct UnknownFuel : Error { using Error::Error; };
struct MissingFuelSeries : Error { using Error::Error; };
struct NonPositiveEfficiency : Error { using Error::Error; };
struct CatalogError : Error { using Error::Error; };

// curve algebra
struct NegativeQuantity : Error { using Error::Error; };
struct EmptyFleet : Error { using Error::Error; };
struct DegenerateSegment : Error { using Error::Error; };

// estimation
struct BudgetTooSmall : Error { using Error::Error; };
struct InvalidTheta : Error { using Error::Error; };

// forecasters
struct InsufficientHistory : Error { using Error::Error; };
struct DegenerateDesign : Error { using Error::Error; };

// evaluation
struct LengthMismatch : Error { using Error::Error; };
struct MissingNaiveRun : Error { using Error::Error; };

}  // namespace stackcast
