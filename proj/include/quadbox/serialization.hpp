#pragma once

#include <iosfwd>
#include <string>

#include "quadbox/geometry.hpp"
#include "quadbox/moments.hpp"
#include "quadbox/rule.hpp"

namespace quadbox {

/// {face_planarity: [..], edge_pairing_ok, vector_area_residual, volume}
std::string validation_report_to_json(const ValidationReport& r);

/// {degree, triples, values}
std::string moments_to_json(const MomentVector& m);

/// {degree, nodes: [[x,y,z]..], weights, volume, stability_ratio}
std::string rule_to_json(const QuadratureRule& rule);
QuadratureRule rule_from_json(const std::string& text);

/// CSV rows "x,y,z,w", one node per line, 17 significant digits.
void rule_to_csv(std::ostream& out, const QuadratureRule& rule);
QuadratureRule rule_from_csv(std::istream& in);

} // namespace quadbox
