#include "fairmtsp/instance.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fairmtsp {

namespace {

double tsplib_nint(double x) { return std::floor(x + 0.5); }

double euc2d_cost(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return tsplib_nint((a - b).norm());
}

// Degree-minute conversion and great-circle distance per the TSPLIB spec.
double geo_radians(double x) {
    constexpr double kPi = 3.141592;
    double deg = tsplib_nint(x);
    double min = x - deg;
    return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}

double geo_cost(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    constexpr double kEarthRadius = 6378.388;
    double lat_i = geo_radians(a.x());
    double lon_i = geo_radians(a.y());
    double lat_j = geo_radians(b.x());
    double lon_j = geo_radians(b.y());
    double q1 = std::cos(lon_i - lon_j);
    double q2 = std::cos(lat_i - lat_j);
    double q3 = std::cos(lat_i + lat_j);
    return std::floor(kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

double metric_cost(Metric metric, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return metric == Metric::Geo ? geo_cost(a, b) : euc2d_cost(a, b);
}

Eigen::MatrixXd cost_from_coords(Metric metric, const std::vector<Eigen::Vector2d>& pts) {
    const int n = static_cast<int>(pts.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            c(i, j) = c(j, i) = metric_cost(metric, pts[i], pts[j]);
    return c;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<int> Instance::targets() const {
    std::vector<int> t;
    for (int i = 0; i < num_vertices(); ++i)
        if (i != depot) t.push_back(i);
    return t;
}

Instance parse_tsplib(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string name = "unnamed";
    int dimension = -1;
    std::string edge_weight_type;
    std::string edge_weight_format = "FULL_MATRIX";
    std::vector<Eigen::Vector2d> coords;
    std::vector<double> weights;
    enum class Section { None, NodeCoord, EdgeWeight } section = Section::None;

    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "EOF") break;

        auto colon = t.find(':');
        std::string key = trim(colon == std::string::npos ? t : t.substr(0, colon));
        std::string value = colon == std::string::npos ? "" : trim(t.substr(colon + 1));

        if (key == "NAME") {
            name = value;
            section = Section::None;
        } else if (key == "TYPE" || key == "COMMENT" || key == "DISPLAY_DATA_TYPE" ||
                   key == "NODE_COORD_TYPE") {
            section = Section::None;
        } else if (key == "DIMENSION") {
            try {
                dimension = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError("DIMENSION: not an integer: " + value);
            }
            if (dimension <= 0) throw ParseError("DIMENSION: must be positive");
            section = Section::None;
        } else if (key == "EDGE_WEIGHT_TYPE") {
            edge_weight_type = value;
            section = Section::None;
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            edge_weight_format = value;
            section = Section::None;
        } else if (key == "NODE_COORD_SECTION") {
            section = Section::NodeCoord;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            section = Section::EdgeWeight;
        } else if (key == "DISPLAY_DATA_SECTION") {
            section = Section::None;
        } else if (section == Section::NodeCoord) {
            std::istringstream ls(t);
            int id;
            double x, y;
            if (!(ls >> id >> x >> y))
                throw ParseError("NODE_COORD_SECTION: malformed line: " + t);
            coords.emplace_back(x, y);
        } else if (section == Section::EdgeWeight) {
            std::istringstream ls(t);
            double w;
            while (ls >> w) weights.push_back(w);
        } else {
            throw ParseError("unrecognized header line: " + t);
        }
    }

    if (dimension < 0) throw ParseError("DIMENSION: missing");
    if (edge_weight_type.empty()) throw ParseError("EDGE_WEIGHT_TYPE: missing");

    Instance inst;
    inst.name = name;
    inst.depot = -1;

    if (edge_weight_type == "EUC_2D" || edge_weight_type == "GEO") {
        inst.metric = edge_weight_type == "GEO" ? Metric::Geo : Metric::Euc2d;
        if (static_cast<int>(coords.size()) != dimension)
            throw ParseError("NODE_COORD_SECTION: expected " + std::to_string(dimension) +
                             " nodes, got " + std::to_string(coords.size()));
        inst.coords = coords;
        inst.cost = cost_from_coords(inst.metric, coords);
    } else if (edge_weight_type == "EXPLICIT") {
        inst.metric = Metric::Explicit;
        const int n = dimension;
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
        if (edge_weight_format == "FULL_MATRIX") {
            if (static_cast<int>(weights.size()) != n * n)
                throw ParseError("EDGE_WEIGHT_SECTION: expected " + std::to_string(n * n) +
                                 " entries, got " + std::to_string(weights.size()));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) c(i, j) = weights[i * n + j];
        } else if (edge_weight_format == "UPPER_ROW") {
            if (static_cast<int>(weights.size()) != n * (n - 1) / 2)
                throw ParseError("EDGE_WEIGHT_SECTION: entry count mismatch for UPPER_ROW");
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) c(i, j) = c(j, i) = weights[k++];
        } else if (edge_weight_format == "LOWER_DIAG_ROW") {
            if (static_cast<int>(weights.size()) != n * (n + 1) / 2)
                throw ParseError("EDGE_WEIGHT_SECTION: entry count mismatch for LOWER_DIAG_ROW");
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) c(i, j) = c(j, i) = weights[k++];
        } else {
            throw ParseError("EDGE_WEIGHT_FORMAT: unsupported format " + edge_weight_format);
        }
        // symmetrize and clear the diagonal
        inst.cost = 0.5 * (c + c.transpose());
        inst.cost.diagonal().setZero();
    } else {
        throw ParseError("EDGE_WEIGHT_TYPE: unsupported type " + edge_weight_type);
    }
    return inst;
}

std::string to_tsplib(const Instance& inst) {
    std::ostringstream out;
    out.precision(17);
    out << "NAME : " << inst.name << "\n";
    out << "TYPE : TSP\n";
    out << "DIMENSION : " << inst.num_vertices() << "\n";
    if (inst.metric == Metric::Explicit) {
        out << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
        out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
        out << "EDGE_WEIGHT_SECTION\n";
        for (int i = 0; i < inst.num_vertices(); ++i) {
            for (int j = 0; j < inst.num_vertices(); ++j)
                out << inst.cost(i, j) << (j + 1 == inst.num_vertices() ? "" : " ");
            out << "\n";
        }
    } else {
        out << "EDGE_WEIGHT_TYPE : " << (inst.metric == Metric::Geo ? "GEO" : "EUC_2D") << "\n";
        out << "NODE_COORD_SECTION\n";
        const auto& pts = *inst.coords;
        for (int i = 0; i < inst.num_vertices(); ++i)
            out << (i + 1) << " " << pts[i].x() << " " << pts[i].y() << "\n";
    }
    out << "EOF\n";
    return out.str();
}

Instance parse_json_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("json: ") + e.what());
    }
    Instance inst;
    inst.name = j.value("name", "unnamed");
    inst.depot = j.value("depot", -1);
    std::string metric = j.value("metric", "explicit");
    inst.metric = metric == "euc2d" ? Metric::Euc2d : metric == "geo" ? Metric::Geo : Metric::Explicit;
    if (j.contains("coords")) {
        std::vector<Eigen::Vector2d> pts;
        for (const auto& p : j.at("coords")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        inst.coords = std::move(pts);
    }
    if (!j.contains("cost")) {
        if (!inst.coords || inst.metric == Metric::Explicit)
            throw ParseError("cost: missing and not derivable from coords");
        inst.cost = cost_from_coords(inst.metric, *inst.coords);
    } else {
        const auto& rows = j.at("cost");
        const int n = static_cast<int>(rows.size());
        inst.cost.resize(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n) throw ParseError("cost: matrix is not square");
            for (int k = 0; k < n; ++k) inst.cost(i, k) = rows[i][k].get<double>();
        }
    }
    if (inst.coords && static_cast<int>(inst.coords->size()) != inst.num_vertices())
        throw ParseError("coords: size does not match cost dimension");
    if (inst.depot >= inst.num_vertices()) throw ParseError("depot: out of range");
    return inst;
}

std::string to_json_instance(const Instance& inst) {
    nlohmann::json j;
    j["name"] = inst.name;
    j["depot"] = inst.depot;
    j["metric"] = inst.metric == Metric::Euc2d ? "euc2d" : inst.metric == Metric::Geo ? "geo" : "explicit";
    if (inst.coords) {
        auto arr = nlohmann::json::array();
        for (const auto& p : *inst.coords) arr.push_back({p.x(), p.y()});
        j["coords"] = arr;
    }
    auto cost = nlohmann::json::array();
    for (int i = 0; i < inst.num_vertices(); ++i) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < inst.num_vertices(); ++k) row.push_back(inst.cost(i, k));
        cost.push_back(row);
    }
    j["cost"] = cost;
    return j.dump(2);
}

Instance add_centroid_depot(const Instance& inst) {
    if (!inst.coords)
        throw ValidationError("add_centroid_depot: instance has no coordinates; "
                              "supply a depot row/column via make_instance");
    std::vector<Eigen::Vector2d> pts = *inst.coords;
    if (inst.has_depot())
        throw ValidationError("add_centroid_depot: instance already has a depot");
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());
    pts.push_back(centroid);

    Instance out;
    out.name = inst.name;
    out.metric = inst.metric;
    out.depot = static_cast<int>(pts.size()) - 1;
    out.coords = pts;
    out.cost = cost_from_coords(out.metric, pts);
    return out;
}

Instance make_instance(const Eigen::MatrixXd& cost, int depot, const std::string& name) {
    if (cost.rows() != cost.cols()) throw ValidationError("cost matrix is not square");
    const int n = static_cast<int>(cost.rows());
    if (depot < 0 || depot >= n) throw ValidationError("depot out of range");
    for (int i = 0; i < n; ++i) {
        if (cost(i, i) != 0.0) throw ValidationError("nonzero diagonal at vertex " + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            if (cost(i, j) < 0.0) throw ValidationError("negative cost at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (std::abs(cost(i, j) - cost(j, i)) > 1e-9)
                throw ValidationError("asymmetric cost at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    Instance inst;
    inst.name = name;
    inst.depot = depot;
    inst.metric = Metric::Explicit;
    inst.cost = 0.5 * (cost + cost.transpose());
    inst.cost.diagonal().setZero();
    return inst;
}

std::vector<std::tuple<int, int, int>> check_triangle_inequality(const Instance& inst) {
    std::vector<std::tuple<int, int, int>> violations;
    const int n = inst.num_vertices();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (inst.cost(i, j) > inst.cost(i, k) + inst.cost(k, j) + 1e-9)
                    violations.emplace_back(i, j, k);
            }
    return violations;
}

}  // namespace fairmtsp
