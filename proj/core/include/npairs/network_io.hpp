#pragma once

#include <string>
#include <variant>
#include <vector>

#include "npairs/flows.hpp"
#include "npairs/structure.hpp"

namespace npairs {

struct ParseDiagnostic {
    int line = 0;  // 1-based; 0 for structure-level problems
    std::string message;
};

struct ParsedNetwork {
    NetworkStructure structure;
    DemandVector demands;
};

// Line-oriented network format:
//   # comment
//   vertex <id>
//   arc <id> <tail> <head> <capacity>     capacity: p/q | integer | inf
//   pair <source> <sink> <demand>         pair order = line order
std::variant<ParsedNetwork, std::vector<ParseDiagnostic>> parse_network(const std::string& text);

// Canonical emission: sorted vertex lines, sorted arc lines, pair lines in
// order, normalized rationals. parse(emit(x)) round-trips byte-identically.
std::string emit_network(const NetworkStructure& s, const DemandVector& demands);

std::string diagnostics_to_string(const std::vector<ParseDiagnostic>& ds);

}  // namespace npairs
