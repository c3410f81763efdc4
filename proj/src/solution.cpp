#include "evrp/solution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace evrp {

EvaluationBudget EvaluationBudget::for_instance(const Instance& instance) {
    return EvaluationBudget(max_evals(problem_size(instance)));
}

long long max_evals(ProblemSize size) {
    if (size.pz < 3) throw std::invalid_argument("problem size must be >= 3");
    return 25000LL * size.pz;
}

double recompute_objective(const RouteSolution& solution, const Instance& instance) {
    long double total = 0.0L;
    for (const auto& route : solution.routes)
        for (std::size_t a = 0; a + 1 < route.size(); ++a)
            total += instance.dist(route[a], route[a + 1]);
    return static_cast<double>(total);
}

double evaluate(RouteSolution& solution, const Instance& instance, EvaluationBudget& budget) {
    budget.consume_one();
    solution.objective = recompute_objective(solution, instance);
    solution.objective_valid = true;
    return solution.objective;
}

void rebuild_caches(RouteSolution& solution, const Instance& instance) {
    const double capacity = instance.battery_capacity();
    const double rate = instance.energy_consumption();
    solution.route_load.assign(solution.routes.size(), 0.0);
    solution.battery_trace.assign(solution.routes.size(), {});
    for (std::size_t r = 0; r < solution.routes.size(); ++r) {
        const auto& route = solution.routes[r];
        double load = 0;
        std::vector<double> trace;
        trace.reserve(route.size());
        double battery = capacity;
        for (std::size_t i = 0; i < route.size(); ++i) {
            const int node = route[i];
            load += instance.demand(node);
            if (i > 0) battery -= rate * instance.dist(route[i - 1], node);
            if (node == instance.depot() || instance.is_station(node)) battery = capacity;
            trace.push_back(battery);
        }
        solution.route_load[r] = load;
        solution.battery_trace[r] = std::move(trace);
    }
}

FeasibilityReport check_feasibility(const RouteSolution& solution, const Instance& instance) {
    FeasibilityReport report;
    const double capacity = instance.battery_capacity();
    const double rate = instance.energy_consumption();

    bool any_violation = false;
    for (const auto& route : solution.routes) {
        FeasibilityReport::RouteCheck check;
        if (route.size() < 2 || route.front() != instance.depot() ||
            route.back() != instance.depot()) {
            check.malformed = true;
            any_violation = true;
        }
        double load = 0;
        for (int node : route) load += instance.demand(node);
        check.load = load;
        check.load_violation = std::max(0.0, load - instance.vehicle_capacity());
        if (check.load_violation > 0) any_violation = true;

        double battery = capacity;
        for (std::size_t a = 0; a + 1 < route.size(); ++a) {
            battery -= rate * instance.dist(route[a], route[a + 1]);
            if (battery < -kBatteryEps && check.first_negative_arc < 0) {
                check.first_negative_arc = static_cast<int>(a);
                check.arc_from = route[a];
                check.arc_to = route[a + 1];
                check.battery_deficit = -battery;
                any_violation = true;
            }
            const int node = route[a + 1];
            if (node == instance.depot() || instance.is_station(node)) battery = capacity;
        }
        report.routes.push_back(check);
    }

    std::vector<int> count(static_cast<std::size_t>(instance.num_nodes()), 0);
    for (const auto& route : solution.routes)
        for (int node : route)
            if (instance.is_customer(node)) ++count[static_cast<std::size_t>(node)];
    for (int c = 1; c <= instance.num_customers(); ++c) {
        if (count[static_cast<std::size_t>(c)] == 0) report.missing_customers.push_back(c);
        if (count[static_cast<std::size_t>(c)] > 1) report.duplicated_customers.push_back(c);
    }
    if (!report.missing_customers.empty() || !report.duplicated_customers.empty())
        any_violation = true;

    report.extra_routes = std::max(
        0, static_cast<int>(solution.routes.size()) - instance.num_vehicles());
    if (report.extra_routes > 0) any_violation = true;

    report.feasible = !any_violation;
    return report;
}

std::string write_solution(const RouteSolution& solution, const Instance& instance) {
    std::ostringstream out;
    for (const auto& route : solution.routes) {
        for (std::size_t i = 0; i < route.size(); ++i) {
            if (i) out << ' ';
            out << instance.file_id(route[i]);
        }
        out << '\n';
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", solution.objective);
    out << "OBJECTIVE " << buf << '\n';
    return out.str();
}

RouteSolution parse_solution(const std::string& text, const Instance& instance) {
    RouteSolution solution;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "OBJECTIVE") {
            ls >> solution.objective;
            solution.objective_valid = true;
            continue;
        }
        std::vector<int> route;
        route.push_back(instance.index_of_file_id(std::stoi(first)));
        int id;
        while (ls >> id) route.push_back(instance.index_of_file_id(id));
        solution.routes.push_back(std::move(route));
    }
    rebuild_caches(solution, instance);
    return solution;
}

}  // namespace evrp
