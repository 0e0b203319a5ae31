#pragma once

#include <vector>

#include "qfreq/types.hpp"

namespace qfreq {

/// Exact minimum-cost assignment on a square cost matrix (Jonker-Volgenant
/// style shortest augmenting paths). Returns row -> column; cost is the sum
/// of the selected entries, recomputed in row order.
std::vector<int> min_cost_assignment(const MatX& cost, double* total = nullptr);

/// Minimum assignment cost without the permutation.
double min_assignment_cost(const MatX& cost);

/// The lexicographically smallest permutation among those attaining the
/// minimum cost (ties resolved at relative tolerance 1e-9).
std::vector<int> lex_min_assignment(const MatX& cost);

}  // namespace qfreq
