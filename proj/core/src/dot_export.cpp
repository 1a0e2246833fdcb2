#include "npairs/dot_export.hpp"

#include <sstream>

namespace npairs {

std::string export_dot(const NetworkStructure& s, const Bitset* highlight_arcs,
                       const Bitset* highlight_vertices) {
    std::ostringstream os;
    os << "digraph npairs {\n";
    os << "  rankdir=LR;\n";
    for (int v = 0; v < s.vertex_count(); ++v) {
        os << "  \"" << s.vertex_name(v) << "\" [";
        if (s.is_source(v)) os << "shape=invtriangle";
        else if (s.is_sink(v)) os << "shape=triangle";
        else os << "shape=circle";
        if (highlight_vertices && highlight_vertices->test(v))
            os << ",style=filled,fillcolor=lightblue";
        os << "];\n";
    }
    for (int a = 0; a < s.arc_count(); ++a) {
        const Arc& arc = s.arc(a);
        os << "  \"" << s.vertex_name(arc.tail) << "\" -> \"" << s.vertex_name(arc.head)
           << "\" [label=\"" << arc.name << " (" << ext_to_string(s.capacity(a).as_ext())
           << ")\"";
        if (highlight_arcs && highlight_arcs->test(a)) os << ",color=red,penwidth=2";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace npairs
