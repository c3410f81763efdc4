#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace evrp {

enum class ParseErrorKind {
    MissingHeader,
    MissingSection,
    HeaderMismatch,
    NonPositiveCapacity,
    DuplicateNodeId,
    InvalidDemand,
    UnsupportedFormat,
    Malformed,
};

// Raised for any defect in a benchmark file; carries the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          kind_(kind),
          line_(line) {}

    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }

private:
    ParseErrorKind kind_;
    int line_;
};

struct UnknownNode : std::out_of_range {
    explicit UnknownNode(const std::string& message) : std::out_of_range(message) {}
};

// Raw fields of an instance before validation; used by the parser and the
// synthetic generator.
struct InstanceData {
    struct Node {
        int id = 0;
        double x = 0, y = 0;
    };
    struct Customer {
        int id = 0;
        double x = 0, y = 0;
        double demand = 0;
    };

    std::string name = "unnamed";
    Node depot;
    std::vector<Customer> customers;
    std::vector<Node> stations;
    int num_vehicles = 1;
    double vehicle_capacity = 0;
    double battery_capacity = 0;
    double energy_consumption = 0;
};

// Immutable E-CVRP problem instance. Nodes use dense indices: depot is 0,
// customers are 1..num_customers(), stations follow. Original file ids are
// retained for serialization and solution files. Instances are safe to share
// across concurrent solver runs.
class Instance {
public:
    // Validates invariants (positive capacities, unique ids, demands in
    // (0, capacity]) and precomputes the distance matrix and per-node
    // station orderings. Throws std::invalid_argument on violation.
    static Instance make(InstanceData data);

    const std::string& name() const { return name_; }
    int num_nodes() const { return static_cast<int>(xs_.size()); }
    int num_customers() const { return num_customers_; }
    int num_stations() const { return num_stations_; }
    int num_depots() const { return 1; }
    int num_vehicles() const { return num_vehicles_; }
    double vehicle_capacity() const { return vehicle_capacity_; }
    double battery_capacity() const { return battery_capacity_; }
    double energy_consumption() const { return energy_consumption_; }

    int depot() const { return 0; }
    bool is_customer(int i) const { return i >= 1 && i <= num_customers_; }
    bool is_station(int i) const { return i > num_customers_ && i < num_nodes(); }

    double x(int i) const { return xs_[static_cast<std::size_t>(i)]; }
    double y(int i) const { return ys_[static_cast<std::size_t>(i)]; }

    // Demand of a node; 0 for the depot and stations.
    double demand(int i) const { return demand_[static_cast<std::size_t>(i)]; }

    // Euclidean distance with bounds checking; throws UnknownNode.
    double distance(int i, int j) const;

    // Unchecked distance lookup for hot paths.
    double dist(int i, int j) const {
        assert(i >= 0 && i < num_nodes() && j >= 0 && j < num_nodes());
        return dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(num_nodes()) +
                     static_cast<std::size_t>(j)];
    }

    // Station indices sorted by (distance to node i, index).
    const std::vector<int>& stations_by_distance(int i) const {
        return stations_by_distance_[static_cast<std::size_t>(i)];
    }

    int file_id(int i) const { return file_ids_[static_cast<std::size_t>(i)]; }
    int index_of_file_id(int id) const;

private:
    Instance() = default;

    std::string name_;
    int num_customers_ = 0;
    int num_stations_ = 0;
    int num_vehicles_ = 0;
    double vehicle_capacity_ = 0;
    double battery_capacity_ = 0;
    double energy_consumption_ = 0;
    std::vector<double> xs_, ys_, demand_;
    std::vector<int> file_ids_;
    std::unordered_map<int, int> index_by_file_id_;
    std::vector<double> dist_;
    std::vector<std::vector<int>> stations_by_distance_;
};

// Field-by-field equality over the logical instance contents.
bool operator==(const Instance& a, const Instance& b);

struct ProblemSize {
    int pz = 0;
};

// pz = depots + customers + stations.
ProblemSize problem_size(const Instance& instance);

// Parses the benchmark text format: a key/value header (VEHICLES, DIMENSION,
// STATIONS, CAPACITY, ENERGY_CAPACITY, ENERGY_CONSUMPTION,
// EDGE_WEIGHT_FORMAT) followed by NODE_COORD_SECTION, DEMAND_SECTION,
// STATIONS_COORD_SECTION, DEPOT_SECTION and EOF.
Instance parse_instance(const std::string& text);
Instance parse_instance_file(const std::string& path);

// Serializes an instance back to the benchmark format; re-parsing the output
// reproduces the instance field by field.
std::string write_instance(const Instance& instance);

}  // namespace evrp
