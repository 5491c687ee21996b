#pragma once

namespace ctj {

// Size caps for the deliberately-exponential ground-truth paths.
struct OracleLimits {
    int max_nodes_tree_enum = 8;   // spanning-tree enumeration
    int max_nodes_cut_enum = 20;   // exhaustive subset scans
    int max_d_matching_enum = 10;  // pairing enumeration
    int max_nodes_full_lp = 8;     // full-row L.P.1 / L.P.2 oracles
    int max_nodes_lp3 = 7;         // full L.P.3 oracle (2^n penalty columns)
};

}  // namespace ctj
