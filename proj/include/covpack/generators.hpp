#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "covpack/instance.hpp"

namespace covpack {

// Random k-row-sparse normalized instance: each row gets between 1 and k
// entries on distinct columns, values uniform in [1, a_max_target].
// Deterministic in the seed.
NormalizedInstance gen_random_rs(Index n_rows, Index n_cols, Index k,
                                 double a_max_target, std::uint64_t seed);

// LP relaxation of minimum vertex cover: one row per edge, one column per
// vertex, all coefficients 1. Rejects self-loops and duplicate edges.
NormalizedInstance gen_vertex_cover_lp(
    const std::vector<std::pair<Index, Index>>& edges);

// Fractional set cover: A(e, S) = 1 iff element e is in set S. An element
// contained in no set makes the covering instance infeasible and is rejected.
NormalizedInstance gen_set_cover(Index element_count,
                                 const std::vector<std::vector<Index>>& sets);

}  // namespace covpack
