#pragma once

#include <vector>

#include "qfreq/curve.hpp"
#include "qfreq/frequency.hpp"
#include "qfreq/mesh.hpp"
#include "qfreq/qpoint.hpp"

namespace qfreq {

/// One Q-tuple per mesh vertex (n = 2 throughout).
struct QLabeling {
  int q = 1;
  std::vector<QPoint> labels;
};

/// Boundary vertices labeled with the curve fiber at their position;
/// interior entries are placeholders (Q copies of 0).
QLabeling boundary_trace(const AlgebraicCurve& curve, const DiskMesh& mesh);

/// Weighted sum over edges of the squared assignment distance.
double discrete_energy(const DiskMesh& mesh, const QLabeling& labeling);

struct MinimizeLogRow {
  int iteration = 0;
  double energy = 0.0;
  int matching_changes = 0;
};

struct MinimizeResult {
  QLabeling labels;
  std::vector<MinimizeLogRow> log;
  bool converged = false;
};

/// Alternating minimization: freeze per-edge optimal matchings, solve the Q
/// decoupled quadratic problems exactly on the lifted sheet graph, rematch,
/// repeat. Energy is nonincreasing across iterations. When no initial
/// interior labeling is given, the start point is the harmonic extension of
/// the angular-transport boundary matching (which carries the monodromy).
MinimizeResult minimize(const DiskMesh& mesh, const QLabeling& boundary,
                        const QLabeling* initial_interior, int max_iterations);

/// Discrete radial profile: ring-truncated energies and boundary-ring
/// masses at the rings nearest the requested radii.
RadialProfile compare_frequency_discrete(const DiskMesh& mesh,
                                         const QLabeling& labeling,
                                         const std::vector<double>& radii);

}  // namespace qfreq
