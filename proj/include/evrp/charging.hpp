#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "evrp/instance.hpp"

namespace evrp {

// Stations considered per arc endpoint when repairing a route.
inline constexpr int kStationShortlist = 5;

// Upper-level route: customer visiting order only, depot implicit at both
// ends, no stations.
struct CustomerRoute {
    std::vector<int> customers;
    double total_demand = 0;
};

CustomerRoute make_customer_route(const std::vector<int>& customers, const Instance& instance);

// Lower-level result: full node sequence from depot to depot including any
// inserted stations. Removing the stations recovers the customer order.
struct ChargedRoute {
    std::vector<int> nodes;
    double length = 0;
    double added_distance = 0;  // relative to the station-free sequence
};

struct EnergyInfeasible : std::runtime_error {
    explicit EnergyInfeasible(const std::string& message) : std::runtime_error(message) {}
};

// Total length of a depot-to-depot node sequence.
double sequence_length(const std::vector<int>& nodes, const Instance& instance);

// Battery sweep over a depot-to-depot sequence with full recharge at the
// depot and at every station.
bool sequence_energy_feasible(const std::vector<int>& nodes, const Instance& instance);

// Inserts charging stations into the route by a forward sweep: at the first
// arc where the battery would go negative, the cheapest feasible insertion of
// one station or a chain of two (candidates drawn from the kStationShortlist
// nearest stations to the arc endpoints, at that arc or the previous one) is
// applied, and the sweep repeats. Returns nullopt if no insertion helps.
std::optional<ChargedRoute> try_repair_energy(const CustomerRoute& route,
                                              const Instance& instance);

// As try_repair_energy, but throws EnergyInfeasible instead of returning
// nullopt.
ChargedRoute repair_energy(const CustomerRoute& route, const Instance& instance);

// Greedily removes stations whose removal keeps the route energy-feasible,
// scanning left to right until a fixpoint. Never increases the length.
ChargedRoute remove_redundant_stations(const ChargedRoute& route, const Instance& instance);

// Recovers the customer-only route, dropping stations and depot visits.
CustomerRoute strip_stations(const ChargedRoute& route, const Instance& instance);

}  // namespace evrp
