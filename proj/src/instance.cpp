#include "evrp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace evrp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

bool is_section_keyword(const std::string& word) {
    return word == "NODE_COORD_SECTION" || word == "DEMAND_SECTION" ||
           word == "STATIONS_COORD_SECTION" || word == "DEPOT_SECTION" || word == "EOF";
}

double parse_number(const std::string& token, int line, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError(ParseErrorKind::Malformed, line,
                         std::string("expected a number for ") + what + ", got '" + token + "'");
    }
}

long long parse_int(const std::string& token, int line, const char* what) {
    const double v = parse_number(token, line, what);
    if (v != std::floor(v))
        throw ParseError(ParseErrorKind::Malformed, line,
                         std::string("expected an integer for ") + what + ", got '" + token + "'");
    return static_cast<long long>(v);
}

// Shortest decimal form that parses back to the same double; integers are
// printed without a fractional part.
std::string format_value(double v) {
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::stod(buf) == v) return buf;
    }
    return buf;
}

struct Line {
    std::string text;
    int number;
};

}  // namespace

Instance Instance::make(InstanceData data) {
    if (data.vehicle_capacity <= 0) throw std::invalid_argument("vehicle capacity must be > 0");
    if (data.battery_capacity <= 0) throw std::invalid_argument("battery capacity must be > 0");
    if (data.energy_consumption <= 0)
        throw std::invalid_argument("energy consumption must be > 0");
    if (data.num_vehicles < 1) throw std::invalid_argument("vehicle count must be >= 1");

    Instance inst;
    inst.name_ = data.name;
    inst.num_customers_ = static_cast<int>(data.customers.size());
    inst.num_stations_ = static_cast<int>(data.stations.size());
    inst.num_vehicles_ = data.num_vehicles;
    inst.vehicle_capacity_ = data.vehicle_capacity;
    inst.battery_capacity_ = data.battery_capacity;
    inst.energy_consumption_ = data.energy_consumption;

    const int n = 1 + inst.num_customers_ + inst.num_stations_;
    inst.xs_.reserve(n);
    inst.ys_.reserve(n);
    inst.demand_.reserve(n);
    inst.file_ids_.reserve(n);

    auto add_node = [&](int id, double x, double y, double demand) {
        const int index = static_cast<int>(inst.xs_.size());
        if (!inst.index_by_file_id_.emplace(id, index).second)
            throw std::invalid_argument("duplicate node id " + std::to_string(id));
        inst.xs_.push_back(x);
        inst.ys_.push_back(y);
        inst.demand_.push_back(demand);
        inst.file_ids_.push_back(id);
    };

    add_node(data.depot.id, data.depot.x, data.depot.y, 0.0);
    for (const auto& c : data.customers) {
        if (c.demand <= 0 || c.demand > data.vehicle_capacity)
            throw std::invalid_argument("customer " + std::to_string(c.id) +
                                        " demand outside (0, capacity]");
        add_node(c.id, c.x, c.y, c.demand);
    }
    for (const auto& s : data.stations) add_node(s.id, s.x, s.y, 0.0);

    inst.dist_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = inst.xs_[i] - inst.xs_[j];
            const double dy = inst.ys_[i] - inst.ys_[j];
            const double d = std::sqrt(dx * dx + dy * dy);
            inst.dist_[static_cast<std::size_t>(i) * n + j] = d;
            inst.dist_[static_cast<std::size_t>(j) * n + i] = d;
        }
    }

    inst.stations_by_distance_.resize(n);
    std::vector<int> station_indices;
    for (int i = 1 + inst.num_customers_; i < n; ++i) station_indices.push_back(i);
    for (int i = 0; i < n; ++i) {
        auto order = station_indices;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double da = inst.dist(i, a), db = inst.dist(i, b);
            if (da != db) return da < db;
            return a < b;
        });
        inst.stations_by_distance_[i] = std::move(order);
    }
    return inst;
}

double Instance::distance(int i, int j) const {
    if (i < 0 || i >= num_nodes())
        throw UnknownNode("unknown node index " + std::to_string(i));
    if (j < 0 || j >= num_nodes())
        throw UnknownNode("unknown node index " + std::to_string(j));
    return dist(i, j);
}

int Instance::index_of_file_id(int id) const {
    auto it = index_by_file_id_.find(id);
    if (it == index_by_file_id_.end())
        throw UnknownNode("unknown node id " + std::to_string(id));
    return it->second;
}

bool operator==(const Instance& a, const Instance& b) {
    if (a.name() != b.name() || a.num_nodes() != b.num_nodes() ||
        a.num_customers() != b.num_customers() || a.num_stations() != b.num_stations() ||
        a.num_vehicles() != b.num_vehicles() ||
        a.vehicle_capacity() != b.vehicle_capacity() ||
        a.battery_capacity() != b.battery_capacity() ||
        a.energy_consumption() != b.energy_consumption())
        return false;
    for (int i = 0; i < a.num_nodes(); ++i) {
        if (a.file_id(i) != b.file_id(i) || a.x(i) != b.x(i) || a.y(i) != b.y(i) ||
            a.demand(i) != b.demand(i))
            return false;
    }
    return true;
}

ProblemSize problem_size(const Instance& instance) {
    return ProblemSize{instance.num_depots() + instance.num_customers() +
                       instance.num_stations()};
}

Instance parse_instance(const std::string& text) {
    std::vector<Line> lines;
    {
        std::istringstream ss(text);
        std::string raw;
        int number = 0;
        while (std::getline(ss, raw)) {
            ++number;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            const std::string t = trim(raw);
            if (!t.empty()) lines.push_back({t, number});
        }
    }

    std::size_t pos = 0;
    std::map<std::string, std::pair<std::string, int>> header;
    while (pos < lines.size()) {
        const std::string& line = lines[pos].text;
        const auto first = tokens(line).front();
        if (is_section_keyword(upper(first))) break;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(ParseErrorKind::Malformed, lines[pos].number,
                             "expected 'KEY: value' in header, got '" + line + "'");
        const std::string key = upper(trim(line.substr(0, colon)));
        header[key] = {trim(line.substr(colon + 1)), lines[pos].number};
        ++pos;
    }

    auto require_header = [&](const char* key) -> std::pair<std::string, int> {
        auto it = header.find(key);
        if (it == header.end())
            throw ParseError(ParseErrorKind::MissingHeader, 1,
                             std::string("missing header key ") + key);
        return it->second;
    };

    if (auto it = header.find("EDGE_WEIGHT_FORMAT"); it != header.end()) {
        if (upper(it->second.first) != "EUC_2D")
            throw ParseError(ParseErrorKind::UnsupportedFormat, it->second.second,
                             "unsupported edge weight format '" + it->second.first + "'");
    }
    if (auto it = header.find("EDGE_WEIGHT_TYPE"); it != header.end()) {
        if (upper(it->second.first) != "EUC_2D")
            throw ParseError(ParseErrorKind::UnsupportedFormat, it->second.second,
                             "unsupported edge weight type '" + it->second.first + "'");
    }

    const auto [dim_text, dim_line] = require_header("DIMENSION");
    const auto [sta_text, sta_line] = require_header("STATIONS");
    const auto [cap_text, cap_line] = require_header("CAPACITY");
    const auto [bat_text, bat_line] = require_header("ENERGY_CAPACITY");
    const auto [con_text, con_line] = require_header("ENERGY_CONSUMPTION");
    const auto [veh_text, veh_line] = require_header("VEHICLES");

    const long long dimension = parse_int(dim_text, dim_line, "DIMENSION");
    const long long stations_declared = parse_int(sta_text, sta_line, "STATIONS");
    const double capacity = parse_number(cap_text, cap_line, "CAPACITY");
    const double battery = parse_number(bat_text, bat_line, "ENERGY_CAPACITY");
    const double consumption = parse_number(con_text, con_line, "ENERGY_CONSUMPTION");
    const long long vehicles = parse_int(veh_text, veh_line, "VEHICLES");

    if (dimension < 2)
        throw ParseError(ParseErrorKind::Malformed, dim_line, "DIMENSION must be >= 2");
    if (stations_declared < 0)
        throw ParseError(ParseErrorKind::Malformed, sta_line, "STATIONS must be >= 0");
    if (capacity <= 0)
        throw ParseError(ParseErrorKind::NonPositiveCapacity, cap_line, "CAPACITY must be > 0");
    if (battery <= 0)
        throw ParseError(ParseErrorKind::NonPositiveCapacity, bat_line,
                         "ENERGY_CAPACITY must be > 0");
    if (consumption <= 0)
        throw ParseError(ParseErrorKind::NonPositiveCapacity, con_line,
                         "ENERGY_CONSUMPTION must be > 0");
    if (vehicles < 1)
        throw ParseError(ParseErrorKind::NonPositiveCapacity, veh_line, "VEHICLES must be >= 1");

    // Reads the entry lines of one section, stopping at the next keyword.
    auto expect_section = [&](const char* keyword) -> int {
        if (pos >= lines.size() || upper(tokens(lines[pos].text).front()) != keyword)
            throw ParseError(ParseErrorKind::MissingSection,
                             pos < lines.size() ? lines[pos].number
                                                : (lines.empty() ? 1 : lines.back().number),
                             std::string("expected section ") + keyword);
        return lines[pos++].number;
    };
    auto section_entries = [&]() {
        std::vector<Line> out;
        while (pos < lines.size() && !is_section_keyword(upper(tokens(lines[pos].text).front())))
            out.push_back(lines[pos++]);
        return out;
    };

    const int coord_line = expect_section("NODE_COORD_SECTION");
    const auto coord_entries = section_entries();
    const int demand_line = expect_section("DEMAND_SECTION");
    const auto demand_entries = section_entries();
    const int stations_line = expect_section("STATIONS_COORD_SECTION");
    const auto station_entries = section_entries();
    const int depot_line = expect_section("DEPOT_SECTION");
    const auto depot_entries = section_entries();

    if (static_cast<long long>(coord_entries.size()) != dimension + stations_declared)
        throw ParseError(ParseErrorKind::HeaderMismatch, coord_line,
                         "NODE_COORD_SECTION has " + std::to_string(coord_entries.size()) +
                             " entries, expected DIMENSION + STATIONS = " +
                             std::to_string(dimension + stations_declared));
    if (static_cast<long long>(demand_entries.size()) != dimension)
        throw ParseError(ParseErrorKind::HeaderMismatch, demand_line,
                         "DEMAND_SECTION has " + std::to_string(demand_entries.size()) +
                             " entries, expected DIMENSION = " + std::to_string(dimension));
    if (static_cast<long long>(station_entries.size()) != stations_declared)
        throw ParseError(ParseErrorKind::HeaderMismatch, stations_line,
                         "STATIONS_COORD_SECTION has " + std::to_string(station_entries.size()) +
                             " entries, expected STATIONS = " + std::to_string(stations_declared));

    struct Coord {
        double x, y;
        int line;
    };
    std::map<int, Coord> coords;
    for (const auto& entry : coord_entries) {
        const auto t = tokens(entry.text);
        if (t.size() != 3)
            throw ParseError(ParseErrorKind::Malformed, entry.number,
                             "expected 'id x y', got '" + entry.text + "'");
        const int id = static_cast<int>(parse_int(t[0], entry.number, "node id"));
        const double x = parse_number(t[1], entry.number, "x coordinate");
        const double y = parse_number(t[2], entry.number, "y coordinate");
        if (!coords.emplace(id, Coord{x, y, entry.number}).second)
            throw ParseError(ParseErrorKind::DuplicateNodeId, entry.number,
                             "duplicate node id " + std::to_string(id));
    }

    struct Demand {
        double value;
        int line;
    };
    std::map<int, Demand> demands;
    for (const auto& entry : demand_entries) {
        const auto t = tokens(entry.text);
        if (t.size() != 2)
            throw ParseError(ParseErrorKind::Malformed, entry.number,
                             "expected 'id demand', got '" + entry.text + "'");
        const int id = static_cast<int>(parse_int(t[0], entry.number, "node id"));
        const double demand = parse_number(t[1], entry.number, "demand");
        if (!coords.count(id))
            throw ParseError(ParseErrorKind::Malformed, entry.number,
                             "demand for node " + std::to_string(id) + " without coordinates");
        if (!demands.emplace(id, Demand{demand, entry.number}).second)
            throw ParseError(ParseErrorKind::DuplicateNodeId, entry.number,
                             "duplicate demand entry for node " + std::to_string(id));
    }

    std::vector<int> station_ids;
    std::set<int> station_set;
    for (const auto& entry : station_entries) {
        const auto t = tokens(entry.text);
        if (t.size() != 1)
            throw ParseError(ParseErrorKind::Malformed, entry.number,
                             "expected a station id, got '" + entry.text + "'");
        const int id = static_cast<int>(parse_int(t[0], entry.number, "station id"));
        if (!coords.count(id))
            throw ParseError(ParseErrorKind::Malformed, entry.number,
                             "station " + std::to_string(id) + " without coordinates");
        if (demands.count(id))
            throw ParseError(ParseErrorKind::Malformed, entry.number,
                             "station " + std::to_string(id) + " also listed in DEMAND_SECTION");
        if (!station_set.insert(id).second)
            throw ParseError(ParseErrorKind::DuplicateNodeId, entry.number,
                             "duplicate station id " + std::to_string(id));
        station_ids.push_back(id);
    }

    if (depot_entries.size() != 2)
        throw ParseError(ParseErrorKind::Malformed, depot_line,
                         "DEPOT_SECTION must list the depot id followed by -1");
    const int depot_id =
        static_cast<int>(parse_int(tokens(depot_entries[0].text)[0], depot_entries[0].number,
                                   "depot id"));
    if (parse_int(tokens(depot_entries[1].text)[0], depot_entries[1].number,
                  "depot terminator") != -1)
        throw ParseError(ParseErrorKind::Malformed, depot_entries[1].number,
                         "DEPOT_SECTION must end with -1");

    auto depot_demand = demands.find(depot_id);
    if (depot_demand == demands.end())
        throw ParseError(ParseErrorKind::Malformed, depot_entries[0].number,
                         "depot " + std::to_string(depot_id) + " has no demand entry");
    if (depot_demand->second.value != 0)
        throw ParseError(ParseErrorKind::InvalidDemand, depot_demand->second.line,
                         "depot demand must be 0");

    InstanceData data;
    if (auto it = header.find("NAME"); it != header.end()) data.name = it->second.first;
    data.num_vehicles = static_cast<int>(vehicles);
    data.vehicle_capacity = capacity;
    data.battery_capacity = battery;
    data.energy_consumption = consumption;
    data.depot = {depot_id, coords.at(depot_id).x, coords.at(depot_id).y};

    // Customers keep DEMAND_SECTION order; stations keep STATIONS_COORD_SECTION order.
    for (const auto& entry : demand_entries) {
        const int id = static_cast<int>(parse_int(tokens(entry.text)[0], entry.number, "id"));
        if (id == depot_id) continue;
        const Demand& d = demands.at(id);
        if (d.value <= 0)
            throw ParseError(ParseErrorKind::InvalidDemand, d.line,
                             "customer " + std::to_string(id) + " demand must be > 0");
        if (d.value > capacity)
            throw ParseError(ParseErrorKind::InvalidDemand, d.line,
                             "customer " + std::to_string(id) + " demand exceeds vehicle capacity");
        data.customers.push_back({id, coords.at(id).x, coords.at(id).y, d.value});
    }
    for (int id : station_ids) data.stations.push_back({id, coords.at(id).x, coords.at(id).y});

    try {
        return Instance::make(std::move(data));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ParseErrorKind::Malformed, 1, e.what());
    }
}

Instance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    out << "NAME: " << inst.name() << "\n";
    out << "TYPE: EVRP\n";
    out << "VEHICLES: " << inst.num_vehicles() << "\n";
    out << "DIMENSION: " << inst.num_depots() + inst.num_customers() << "\n";
    out << "STATIONS: " << inst.num_stations() << "\n";
    out << "CAPACITY: " << format_value(inst.vehicle_capacity()) << "\n";
    out << "ENERGY_CAPACITY: " << format_value(inst.battery_capacity()) << "\n";
    out << "ENERGY_CONSUMPTION: " << format_value(inst.energy_consumption()) << "\n";
    out << "EDGE_WEIGHT_FORMAT: EUC_2D\n";
    out << "NODE_COORD_SECTION\n";
    for (int i = 0; i < inst.num_nodes(); ++i)
        out << inst.file_id(i) << " " << format_value(inst.x(i)) << " " << format_value(inst.y(i))
            << "\n";
    out << "DEMAND_SECTION\n";
    out << inst.file_id(inst.depot()) << " 0\n";
    for (int i = 1; i <= inst.num_customers(); ++i)
        out << inst.file_id(i) << " " << format_value(inst.demand(i)) << "\n";
    out << "STATIONS_COORD_SECTION\n";
    for (int i = inst.num_customers() + 1; i < inst.num_nodes(); ++i)
        out << inst.file_id(i) << "\n";
    out << "DEPOT_SECTION\n";
    out << inst.file_id(inst.depot()) << "\n";
    out << "-1\n";
    out << "EOF\n";
    return out.str();
}

}  // namespace evrp
