#pragma once

#include <string>

#include "mgrz/frame.hpp"

namespace mgrz {

struct DotOptions {
    bool skip_reflexive_loops = false;
    std::string graph_name = "mkframe";
};

// Graphviz digraph with one subgraph cluster per E-block, solid edges for R.
std::string frame_to_dot(const MKFrame& f, const DotOptions& opt = {});

}  // namespace mgrz
