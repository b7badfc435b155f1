#include "stackcast/estimation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stackcast/errors.hpp"
#include "stackcast/rng.hpp"
#include "stackcast/threading.hpp"

namespace stackcast {

Objective::Objective(const PlantCatalog& catalog, const HourlyPanel& panel,
                     std::vector<std::size_t> rows, ParameterSet base, Mode mode, ModeConfig cfg)
    : catalog_(&catalog),
      panel_(&panel),
      rows_(std::move(rows)),
      base_(std::move(base)),
      mode_(mode),
      cfg_(cfg),
      dims_(base_.optimizable()) {
    if (rows_.empty()) throw Error("objective needs at least one hour");
    for (std::size_t r : rows_)
        if (r >= panel_->size()) throw RangeError("objective row out of panel range");
}

double Objective::operator()(const ParameterSet& theta) const {
    count_.fetch_add(1, std::memory_order_relaxed);
    std::span<const double> actual = panel_->series("price");
    double acc = 0.0;
    for (std::size_t r : rows_) {
        HourPrice hp = price_hour(*catalog_, *panel_, theta, r, mode_, cfg_);
        acc += std::abs(hp.price - actual[r]);
    }
    return acc / static_cast<double>(rows_.size());
}

ParameterSet Objective::materialize(std::span<const double> x) const {
    ParameterSet theta = base_;
    theta.apply(dims_, x);
    return theta;
}

double Objective::eval_vector(std::span<const double> x) const {
    return (*this)(materialize(x));
}

FitResult fit(const Objective& objective, const ParameterSet& init, const FitOptions& options) {
    if (options.max_evals < 1) throw BudgetTooSmall("fit budget must be at least 1 evaluation");
    std::string why;
    if (!init.in_box(&why)) throw InvalidTheta("fit init out of box: " + why);

    const auto& dims = objective.dims();
    const std::size_t d = dims.size();
    const auto t0 = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        if (options.max_seconds <= 0.0) return false;
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        return dt.count() >= options.max_seconds;
    };

    FitResult result;
    result.seed = options.seed;

    std::vector<double> x0 = init.values_of(dims);
    if (d == 0) {
        // Nothing to vary: the objective is a constant of the active mask.
        result.theta_hat = init;
        result.train_mae = objective(init);
        result.eval_count = 1;
        result.trace = {result.train_mae};
        return result;
    }

    std::mt19937_64 rng(mix_seed(options.seed, 0xDE));
    long budget = options.max_evals;
    std::size_t np_default = std::clamp<std::size_t>(4 * d, 16, 64);
    std::size_t np = options.population > 0 ? static_cast<std::size_t>(options.population)
                                            : np_default;
    np = std::min<std::size_t>(np, static_cast<std::size_t>(budget));
    np = std::max<std::size_t>(np, 1);

    std::vector<std::vector<double>> pop(np, std::vector<double>(d));
    std::vector<double> fpop(np);
    pop[0] = x0;
    for (std::size_t i = 1; i < np; ++i)
        for (std::size_t j = 0; j < d; ++j)
            pop[i][j] = uniform(rng, dims[j].lower, dims[j].upper);

    long used = 0;
    std::size_t best = 0;
    auto record = [&](double f) {
        double so_far = result.trace.empty() ? f : std::min(result.trace.back(), f);
        result.trace.push_back(so_far);
    };

    // Initial population (member 0 is the supplied init).
    {
        std::size_t n_eval = std::min<std::size_t>(np, static_cast<std::size_t>(budget));
        parallel_for(n_eval, options.threads,
                     [&](std::size_t i) { fpop[i] = objective.eval_vector(pop[i]); });
        for (std::size_t i = 0; i < n_eval; ++i) {
            record(fpop[i]);
            if (fpop[i] < fpop[best]) best = i;
        }
        used += static_cast<long>(n_eval);
        if (n_eval < np) {  // budget exhausted during seeding; unscored members drop out
            pop.resize(n_eval);
            fpop.resize(n_eval);
            np = n_eval;
        }
    }

    std::vector<std::vector<double>> trial(np, std::vector<double>(d));
    while (used < budget && np >= 4 && !out_of_time()) {
        // Draw all stochastic choices on the single master stream first.
        for (std::size_t i = 0; i < np; ++i) {
            std::size_t r1 = uniform_index(rng, np);
            while (r1 == i) r1 = uniform_index(rng, np);
            std::size_t r2 = uniform_index(rng, np);
            while (r2 == i || r2 == r1) r2 = uniform_index(rng, np);
            double f_jitter = options.de_weight + 0.3 * (uniform01(rng) - 0.5);
            std::size_t j_forced = uniform_index(rng, d);
            for (std::size_t j = 0; j < d; ++j) {
                bool cross = uniform01(rng) < options.de_crossover || j == j_forced;
                double v = cross ? pop[best][j] + f_jitter * (pop[r1][j] - pop[r2][j])
                                 : pop[i][j];
                trial[i][j] = std::clamp(v, dims[j].lower, dims[j].upper);
            }
        }
        std::size_t n_eval = std::min<std::size_t>(np, static_cast<std::size_t>(budget - used));
        std::vector<double> ftrial(n_eval);
        parallel_for(n_eval, options.threads,
                     [&](std::size_t i) { ftrial[i] = objective.eval_vector(trial[i]); });
        for (std::size_t i = 0; i < n_eval; ++i) {
            record(ftrial[i]);
            if (ftrial[i] <= fpop[i]) {
                pop[i] = trial[i];
                fpop[i] = ftrial[i];
            }
            if (fpop[i] < fpop[best]) best = i;
        }
        used += static_cast<long>(n_eval);
    }

    result.theta_hat = objective.materialize(pop[best]);
    result.train_mae = fpop[best];
    result.eval_count = used;
    return result;
}

nlohmann::json FitResult::to_json() const {
    nlohmann::json j;
    j["theta"] = theta_hat.to_json();
    j["train_mae"] = train_mae;
    j["eval_count"] = eval_count;
    j["seed"] = seed;
    j["trace"] = trace;
    return j;
}

namespace {

double evaluate_root(const PlantCatalog& catalog, const HourlyPanel& panel,
                     const std::vector<std::size_t>& rows, const ParameterSet& theta, Mode mode,
                     const ModeConfig& cfg, int threads) {
    Objective obj(catalog, panel, rows, theta, mode, cfg);
    (void)threads;
    return obj(theta);
}

}  // namespace

SelectionTree forward_select(const PlantCatalog& catalog, const HourlyPanel& panel,
                             std::vector<std::size_t> train_rows,
                             std::vector<std::size_t> test_rows, const SelectOptions& options,
                             ModeConfig cfg) {
    std::vector<ParamGroup> pool = options.groups;
    if (pool.empty()) pool.assign(kAllGroups.begin(), kAllGroups.end());
    if (pool.empty()) throw Error("forward selection needs at least one group");

    SelectionTree tree;
    ParameterSet classic = ParameterSet::classical(catalog);

    auto test_mae_of = [&](const ParameterSet& theta) -> std::optional<double> {
        if (test_rows.empty()) return std::nullopt;
        Objective test_obj(catalog, panel, test_rows, theta, Mode::Test, cfg);
        return test_obj(theta);
    };

    SelectionNode root;
    root.id = 0;
    root.level = 0;
    root.train_mae = evaluate_root(catalog, panel, train_rows, classic, Mode::Train, cfg,
                                   options.fit.threads);
    root.test_mae = test_mae_of(classic);
    root.greedy = true;
    tree.nodes.push_back(std::move(root));

    int parent = 0;
    std::vector<ParamGroup> remaining = pool;
    for (int level = 1; !remaining.empty(); ++level) {
        int best_child = -1;
        for (ParamGroup g : remaining) {
            SelectionNode node;
            node.id = static_cast<int>(tree.nodes.size());
            node.parent = parent;
            node.level = level;
            node.groups = tree.nodes[parent].groups;
            node.groups.push_back(g);
            node.added = g;

            ParameterSet start = classic;
            if (options.warm_start && tree.nodes[parent].fit)
                start = tree.nodes[parent].fit->theta_hat;
            std::set<ParamGroup> mask(node.groups.begin(), node.groups.end());
            start.set_active_groups(mask);
            if (options.warm_start) {
                // The new group enters at its model-neutral value so the
                // parent's objective stays attainable.
                start.set_group_neutral(g);
            } else {
                start.reset_group(g);
            }

            FitOptions fo = options.fit;
            fo.seed = mix_seed(options.fit.seed,
                               static_cast<std::uint64_t>(level) * 131 +
                                   static_cast<std::uint64_t>(g));
            Objective obj(catalog, panel, train_rows, start, Mode::Train, cfg);
            FitResult fr = fit(obj, start, fo);
            node.train_mae = fr.train_mae;
            node.test_mae = test_mae_of(fr.theta_hat);
            node.fit = std::move(fr);

            if (best_child < 0 || node.train_mae < tree.nodes[best_child].train_mae)
                best_child = node.id;
            tree.nodes.push_back(std::move(node));
        }
        tree.nodes[best_child].greedy = true;
        parent = best_child;
        ParamGroup chosen = *tree.nodes[best_child].added;
        remaining.erase(std::find(remaining.begin(), remaining.end(), chosen));
    }
    return tree;
}

nlohmann::json SelectionTree::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : nodes) {
        nlohmann::json e;
        e["id"] = n.id;
        e["parent"] = n.parent;
        e["level"] = n.level;
        nlohmann::json groups = nlohmann::json::array();
        for (ParamGroup g : n.groups) groups.push_back(to_string(g));
        e["groups"] = std::move(groups);
        if (n.added) e["added"] = to_string(*n.added);
        e["train_mae"] = n.train_mae;
        if (n.test_mae) e["test_mae"] = *n.test_mae;
        e["greedy"] = n.greedy;
        if (n.fit) {
            e["theta"] = n.fit->theta_hat.to_json();
            e["eval_count"] = n.fit->eval_count;
            e["seed"] = n.fit->seed;
        }
        arr.push_back(std::move(e));
    }
    return nlohmann::json{{"nodes", std::move(arr)}};
}

std::string SelectionTree::to_text() const {
    std::ostringstream out;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    for (const auto& n : nodes) {
        for (int i = 0; i < n.level; ++i) out << "  ";
        if (n.level == 0)
            out << "classic";
        else
            out << "+ " << to_string(*n.added);
        out << "  train: " << num(n.train_mae);
        if (n.test_mae) out << "  test: " << num(*n.test_mae);
        if (n.greedy) out << "  *";
        out << "\n";
    }
    return out.str();
}

}  // namespace stackcast
