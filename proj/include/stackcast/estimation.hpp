// Bound-constrained derivative-free MAE minimization over the active parameter
// groups, plus greedy forward selection over the six groups.
#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stackcast/assembly.hpp"
#include "stackcast/parameters.hpp"

namespace stackcast {

class Objective {
public:
    Objective(const PlantCatalog& catalog, const HourlyPanel& panel, std::vector<std::size_t> rows,
              ParameterSet base, Mode mode = Mode::Train, ModeConfig cfg = {});

    // Mean absolute error of the modelled price over the training rows.
    double operator()(const ParameterSet& theta) const;
    double eval_vector(std::span<const double> x) const;
    ParameterSet materialize(std::span<const double> x) const;

    const std::vector<ParamEntry>& dims() const { return dims_; }
    const ParameterSet& base() const { return base_; }
    long eval_count() const { return count_.load(); }

private:
    const PlantCatalog* catalog_;
    const HourlyPanel* panel_;
    std::vector<std::size_t> rows_;
    ParameterSet base_;
    Mode mode_;
    ModeConfig cfg_;
    std::vector<ParamEntry> dims_;
    mutable std::atomic<long> count_{0};
};

struct FitOptions {
    long max_evals = 3600;
    double max_seconds = 0.0;  // 0 = no wall-clock cap
    int threads = 1;
    int population = 0;  // 0 = auto from dimension
    double de_weight = 0.7;
    double de_crossover = 0.9;
    std::uint64_t seed = 0;
};

struct FitResult {
    ParameterSet theta_hat;
    double train_mae = 0.0;
    long eval_count = 0;
    std::uint64_t seed = 0;
    std::vector<double> trace;  // best-so-far objective after each evaluation

    nlohmann::json to_json() const;
};

// Differential evolution (best/1/bin) within the box; the initial point is
// always population member zero, so the result never falls behind it.
// Candidate draws advance on a single seeded stream; member evaluations may
// run on several threads without changing any result.
FitResult fit(const Objective& objective, const ParameterSet& init, const FitOptions& options);

struct SelectionNode {
    int id = 0;
    int parent = -1;
    int level = 0;  // 0 = unoptimized root
    std::vector<ParamGroup> groups;
    std::optional<ParamGroup> added;
    double train_mae = 0.0;
    std::optional<double> test_mae;
    std::optional<FitResult> fit;
    bool greedy = false;
};

struct SelectionTree {
    std::vector<SelectionNode> nodes;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

struct SelectOptions {
    std::vector<ParamGroup> groups;  // defaults to all six
    FitOptions fit;
    bool warm_start = true;  // child searches start from the parent's optimum
};

// Greedy forward selection: level 1 fits each group alone; each later level
// extends the best node by each remaining group, re-fitting all active groups
// jointly. Test MAE per node when test rows are supplied.
SelectionTree forward_select(const PlantCatalog& catalog, const HourlyPanel& panel,
                             std::vector<std::size_t> train_rows,
                             std::vector<std::size_t> test_rows, const SelectOptions& options,
                             ModeConfig cfg = {});

}  // namespace stackcast
