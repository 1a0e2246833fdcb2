#pragma once

#include <string>

#include "npairs/structure.hpp"

namespace npairs {

// Deterministic DOT text: vertices and arcs in index (name) order.
// Highlighted arcs get color/penwidth attributes, highlighted vertices a
// fill; capacities appear in arc labels.
std::string export_dot(const NetworkStructure& s, const Bitset* highlight_arcs = nullptr,
                       const Bitset* highlight_vertices = nullptr);

}  // namespace npairs
