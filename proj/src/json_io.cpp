#include "snapbm/json_io.hpp"

#include <fstream>
#include <sstream>

namespace snapbm {

namespace {

using nlohmann::json;

Vec2 parse_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(where + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Curve parse_curve(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ConfigError(where + ": expected a curve object with a \"type\" field");
    std::string type = j["type"].get<std::string>();
    try {
        if (type == "circle") {
            if (!j.contains("center") || !j.contains("radius"))
                throw ConfigError(where + ": circle needs \"center\" and \"radius\"");
            return Curve::circle(parse_point(j["center"], where + ".center"),
                                 j["radius"].get<double>());
        }
        if (type == "ellipse") {
            if (!j.contains("center") || !j.contains("semi_axes"))
                throw ConfigError(where + ": ellipse needs \"center\" and \"semi_axes\"");
            Vec2 axes = parse_point(j["semi_axes"], where + ".semi_axes");
            double rot = j.value("rotation", 0.0);
            return Curve::ellipse(parse_point(j["center"], where + ".center"), axes.x,
                                  axes.y, rot);
        }
        if (type == "spline") {
            if (!j.contains("points") || !j["points"].is_array())
                throw ConfigError(where + ": spline needs a \"points\" array");
            std::vector<Vec2> pts;
            for (size_t i = 0; i < j["points"].size(); ++i)
                pts.push_back(parse_point(j["points"][i],
                                          where + ".points[" + std::to_string(i) + "]"));
            return Curve::closed_spline(std::move(pts));
        }
    } catch (const InvalidDomain& ex) {
        throw ConfigError(where + ": " + ex.what());
    }
    throw ConfigError(where + ": unknown curve type \"" + type + "\"");
}

json curve_to_json(const Curve& c) {
    json j;
    switch (c.kind()) {
        case Curve::Kind::Circle:
            j["type"] = "circle";
            j["center"] = {c.reference_center().x, c.reference_center().y};
            j["radius"] = *c.circle_radius();
            break;
        case Curve::Kind::Ellipse: {
            auto p = *c.ellipse_params();
            j["type"] = "ellipse";
            j["center"] = {c.reference_center().x, c.reference_center().y};
            j["semi_axes"] = {p[0], p[1]};
            j["rotation"] = p[2];
            break;
        }
        case Curve::Kind::Spline: {
            j["type"] = "spline";
            json pts = json::array();
            for (const Vec2& p : *c.spline_control_points()) pts.push_back({p.x, p.y});
            j["points"] = std::move(pts);
            break;
        }
    }
    return j;
}

}  // namespace

DomainSpec domain_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("boundary"))
        throw ConfigError("config: missing \"boundary\"");
    Curve boundary = parse_curve(j["boundary"], "boundary");
    std::vector<Barrier> barriers;
    if (j.contains("barriers")) {
        if (!j["barriers"].is_array()) throw ConfigError("barriers: expected an array");
        for (size_t i = 0; i < j["barriers"].size(); ++i) {
            const json& b = j["barriers"][i];
            std::string where = "barriers[" + std::to_string(i) + "]";
            if (!b.is_object()) throw ConfigError(where + ": expected an object");
            const json& cj = b.contains("curve") ? b["curve"] : b;
            Curve curve = parse_curve(cj, where + (b.contains("curve") ? ".curve" : ""));
            if (!b.contains("lambda_plus") || !b.contains("lambda_minus"))
                throw ConfigError(where + ": needs \"lambda_plus\" and \"lambda_minus\"");
            double lp = b["lambda_plus"].get<double>();
            double lm = b["lambda_minus"].get<double>();
            barriers.push_back({std::move(curve), lp, lm});
        }
    }
    try {
        return DomainSpec(std::move(boundary), std::move(barriers));
    } catch (const InvalidDomain& ex) {
        throw ConfigError(std::string("config: ") + ex.what());
    }
}

nlohmann::json domain_to_json(const DomainSpec& domain) {
    json j;
    j["boundary"] = curve_to_json(domain.boundary());
    json bs = json::array();
    for (const Barrier& b : domain.barriers()) {
        json e;
        e["curve"] = curve_to_json(b.curve);
        e["lambda_plus"] = b.lambda_plus;
        e["lambda_minus"] = b.lambda_minus;
        bs.push_back(std::move(e));
    }
    j["barriers"] = std::move(bs);
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

DomainSpec load_domain_config(const std::string& path) {
    std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw ConfigError(std::string("config parse error in ") + path + ": " + ex.what());
    }
    return domain_from_json(j);
}

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace snapbm
