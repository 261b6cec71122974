#include "mgrz/dot.hpp"

namespace mgrz {

std::string frame_to_dot(const MKFrame& f, const DotOptions& opt) {
    std::string out = "digraph " + opt.graph_name + " {\n";
    out += "  rankdir=BT;\n";
    for (int b = 0; b < f.E.block_count(); ++b) {
        out += "  subgraph cluster_" + std::to_string(b) + " {\n";
        out += "    label=\"E" + std::to_string(b) + "\";\n";
        out += "    style=rounded;\n";
        out += "    color=blue;\n";
        const WorldSet& blk = f.E.block(b);
        for (int w = blk.first(); w >= 0; w = blk.next(w))
            out += "    n" + std::to_string(w) + " [label=\"" + f.world_name(w) + "\"];\n";
        out += "  }\n";
    }
    for (auto [i, j] : f.R.pairs()) {
        if (opt.skip_reflexive_loops && i == j) continue;
        out += "  n" + std::to_string(i) + " -> n" + std::to_string(j) + ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace mgrz
