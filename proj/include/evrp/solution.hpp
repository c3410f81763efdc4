#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "evrp/instance.hpp"

namespace evrp {

// Battery levels within this margin of zero still count as non-negative.
inline constexpr double kBatteryEps = 1e-9;

// A full solution: one node sequence per vehicle, each beginning and ending
// at the depot, with charging-station visits interleaved. Customers appear
// exactly once across all routes; stations and the depot may repeat.
struct RouteSolution {
    std::vector<std::vector<int>> routes;

    // Cached objective; valid only while objective_valid is set. Mutating
    // routes must clear the flag.
    double objective = 0.0;
    bool objective_valid = false;

    // Per-route caches maintained by rebuild_caches().
    std::vector<double> route_load;
    // Remaining battery on departure from each node of the route (full at
    // the depot and after every station visit).
    std::vector<std::vector<double>> battery_trace;
};

struct BudgetExhausted : std::runtime_error {
    BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

// Hard cap on objective evaluations for one solver run.
class EvaluationBudget {
public:
    explicit EvaluationBudget(long long max_evals) : max_evals_(max_evals) {}

    static EvaluationBudget for_instance(const Instance& instance);

    long long max_evals() const { return max_evals_; }
    long long used() const { return used_; }
    bool exhausted() const { return used_ >= max_evals_; }

    // Bills one evaluation; throws BudgetExhausted on the (max+1)-th attempt.
    void consume_one() {
        if (used_ >= max_evals_) throw BudgetExhausted();
        ++used_;
    }

private:
    long long max_evals_;
    long long used_ = 0;
};

// MaxEvals = 25,000 x pz. Requires pz >= 3.
long long max_evals(ProblemSize size);

// Sums arc distances over all routes, bills exactly one budget unit and
// caches the objective on the solution.
double evaluate(RouteSolution& solution, const Instance& instance, EvaluationBudget& budget);

// Objective recomputed from scratch without touching any budget or cache.
double recompute_objective(const RouteSolution& solution, const Instance& instance);

// Refreshes route_load and battery_trace from scratch.
void rebuild_caches(RouteSolution& solution, const Instance& instance);

struct FeasibilityReport {
    struct RouteCheck {
        double load = 0;
        double load_violation = 0;           // max(0, load - capacity)
        int first_negative_arc = -1;         // arc index within route, -1 if none
        int arc_from = -1, arc_to = -1;      // endpoints of that arc
        double battery_deficit = 0;          // magnitude below zero at that arc
        bool malformed = false;              // does not begin/end at the depot
    };

    std::vector<RouteCheck> routes;
    std::vector<int> missing_customers;
    std::vector<int> duplicated_customers;
    int extra_routes = 0;  // routes beyond the fleet size
    bool feasible = false;
};

// Independent feasibility check: recomputes loads, battery traces and
// customer coverage from the instance data alone. Infeasibility is reported
// as data, not as an error.
FeasibilityReport check_feasibility(const RouteSolution& solution, const Instance& instance);

// Plain-text solution format: one route per line as space-separated node
// file ids, then a line "OBJECTIVE <value>".
std::string write_solution(const RouteSolution& solution, const Instance& instance);
RouteSolution parse_solution(const std::string& text, const Instance& instance);

}  // namespace evrp
