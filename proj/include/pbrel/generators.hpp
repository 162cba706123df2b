#pragma once

#include <vector>

#include "pbrel/pb_core.hpp"

namespace pbrel {

/// Vertex cover of size at most ceil(n/2) - 1 on the complete graph K_n:
/// one clause x_i + x_j >= 1 per edge, then sum ~x_i >= n - k. Unsatisfiable.
std::vector<PBConstraint> generate_vertexcover_complete(int n);

}  // namespace pbrel
