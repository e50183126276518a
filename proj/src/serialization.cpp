#include "quadbox/serialization.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "quadbox/errors.hpp"

namespace quadbox {

using nlohmann::json;

std::string validation_report_to_json(const ValidationReport& r) {
    json j;
    j["face_planarity"] = r.face_planarity;
    j["edge_pairing_ok"] = r.edge_pairing_ok;
    j["vector_area_residual"] = r.vector_area_residual;
    j["volume"] = r.volume;
    j["passed"] = r.passed;
    if (!r.edge_pairing_detail.empty()) j["edge_pairing_detail"] = r.edge_pairing_detail;
    if (!r.face_detail.empty()) j["face_detail"] = r.face_detail;
    return j.dump(2);
}

std::string moments_to_json(const MomentVector& m) {
    json j;
    j["degree"] = m.degree;
    json triples = json::array();
    const MultiIndexSet idx(m.degree);
    for (const Triple& t : idx.triples())
        triples.push_back({t.a, t.b, t.c});
    j["triples"] = std::move(triples);
    j["values"] = m.values;
    return j.dump(2);
}

std::string rule_to_json(const QuadratureRule& rule) {
    json j;
    j["degree"] = rule.degree;
    j["label"] = rule.polyhedron_label;
    json nodes = json::array();
    for (const Vec3& p : rule.nodes) nodes.push_back({p[0], p[1], p[2]});
    j["nodes"] = std::move(nodes);
    j["weights"] = rule.weights;
    j["volume"] = rule.volume_estimate;
    j["stability_ratio"] = rule.stability_ratio;
    return j.dump(2);
}

QuadratureRule rule_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("rule JSON: ") + e.what());
    }
    QuadratureRule rule;
    try {
        rule.degree = j.at("degree").get<int>();
        rule.polyhedron_label = j.value("label", std::string{});
        for (const auto& node : j.at("nodes"))
            rule.nodes.push_back({node.at(0).get<double>(), node.at(1).get<double>(),
                                  node.at(2).get<double>()});
        rule.weights = j.at("weights").get<std::vector<double>>();
        rule.volume_estimate = j.at("volume").get<double>();
        rule.stability_ratio = j.at("stability_ratio").get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("rule JSON: ") + e.what());
    }
    if (rule.nodes.size() != rule.weights.size())
        throw ParseError("rule JSON: node/weight count mismatch");
    return rule;
}

void rule_to_csv(std::ostream& out, const QuadratureRule& rule) {
    out << "x,y,z,w\n";
    char buf[160];
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Vec3& p = rule.nodes[i];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p[0], p[1], p[2],
                      rule.weights[i]);
        out << buf;
    }
}

QuadratureRule rule_from_csv(std::istream& in) {
    QuadratureRule rule;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "x,y,z,w") continue;
        double x, y, z, w;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &y, &z, &w) != 4)
            throw ParseError("rule CSV line " + std::to_string(line_no) +
                             ": expected 'x,y,z,w'");
        rule.nodes.push_back({x, y, z});
        rule.weights.push_back(w);
        rule.volume_estimate += w;
    }
    return rule;
}

} // namespace quadbox
