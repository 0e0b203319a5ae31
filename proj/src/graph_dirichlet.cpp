#include "qfreq/graph_dirichlet.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "qfreq/errors.hpp"
#include "qfreq/parallel.hpp"

namespace qfreq {

namespace {

using Triplet = Eigen::Triplet<double>;
using SparseMat = Eigen::SparseMatrix<double>;

std::vector<int> identity_perm(int q) {
  std::vector<int> p(q);
  for (int i = 0; i < q; ++i) p[i] = i;
  return p;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

double vertex_angle(const DiskMesh& mesh, int v) {
  const Vec2 p = mesh.vertices.col(v);
  double a = std::atan2(p.y(), p.x());
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Solve the quadratic problem with frozen matchings: unknowns are the
// interior (vertex, sheet) pairs, boundary sheets enter the right-hand side.
std::vector<QPoint> solve_lifted(const DiskMesh& mesh, int q,
                                 const std::vector<QPoint>& labels,
                                 const std::vector<std::vector<int>>& match) {
  const int nv = mesh.vertex_count();
  std::vector<int> interior_index(nv, -1);
  int n_int = 0;
  for (int v = 0; v < nv; ++v)
    if (!mesh.boundary[v]) interior_index[v] = n_int++;
  const int dim = n_int * q;

  std::vector<Triplet> trips;
  trips.reserve(mesh.edges.size() * q * 4);
  MatX rhs = MatX::Zero(dim, 2);
  for (size_t e = 0; e < mesh.edges.size(); ++e) {
    const auto& edge = mesh.edges[e];
    const auto& sigma = match[e];
    for (int i = 0; i < q; ++i) {
      const int iu = interior_index[edge.u];
      const int iv = interior_index[edge.v];
      const int a = (iu >= 0) ? iu * q + i : -1;
      const int b = (iv >= 0) ? iv * q + sigma[i] : -1;
      const double w = edge.weight;
      if (a >= 0 && b >= 0) {
        trips.emplace_back(a, a, w);
        trips.emplace_back(b, b, w);
        trips.emplace_back(a, b, -w);
        trips.emplace_back(b, a, -w);
      } else if (a >= 0) {
        trips.emplace_back(a, a, w);
        rhs.row(a) += w * labels[edge.v].value(sigma[i]).transpose();
      } else if (b >= 0) {
        trips.emplace_back(b, b, w);
        rhs.row(b) += w * labels[edge.u].value(i).transpose();
      }
    }
  }

  SparseMat a_mat(dim, dim);
  a_mat.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<SparseMat> solver(a_mat);
  if (solver.info() != Eigen::Success)
    throw NumericError("minimize: factorization of the sheet Laplacian failed");
  const MatX x = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    throw NumericError("minimize: sheet Laplacian solve failed");

  std::vector<QPoint> out = labels;
  for (int v = 0; v < nv; ++v) {
    if (mesh.boundary[v]) continue;
    MatX vals(2, q);
    for (int i = 0; i < q; ++i)
      vals.col(i) = x.row(interior_index[v] * q + i).transpose();
    out[v] = QPoint(std::move(vals));
  }
  return out;
}

}  // namespace

QLabeling boundary_trace(const AlgebraicCurve& curve, const DiskMesh& mesh) {
  QLabeling lab;
  lab.q = curve.degree_w();
  lab.labels.assign(mesh.vertex_count(),
                    QPoint::collapsed(lab.q, VecX::Zero(2)));
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.boundary[v])
      lab.labels[v] = eval_fiber(curve, to_complex(mesh.vertices.col(v)));
  return lab;
}

double discrete_energy(const DiskMesh& mesh, const QLabeling& labeling) {
  if (static_cast<int>(labeling.labels.size()) != mesh.vertex_count())
    throw DimensionMismatchError("discrete_energy: labeling size mismatch");
  std::vector<double> contrib(mesh.edges.size());
  parallel_for(static_cast<int>(mesh.edges.size()), [&](int e) {
    const auto& edge = mesh.edges[e];
    contrib[e] = edge.weight *
                 metric_g_sq(labeling.labels[edge.u], labeling.labels[edge.v]);
  });
  double total = 0.0;
  for (double c : contrib) total += c;
  return total;
}

MinimizeResult minimize(const DiskMesh& mesh, const QLabeling& boundary,
                        const QLabeling* initial_interior, int max_iterations) {
  const int q = boundary.q;
  const int nv = mesh.vertex_count();
  if (static_cast<int>(boundary.labels.size()) != nv)
    throw DimensionMismatchError("minimize: boundary labeling size mismatch");
  if (max_iterations < 0) throw DomainError("minimize: negative iteration cap");

  MinimizeResult res;
  res.labels.q = q;
  res.labels.labels = boundary.labels;

  // Boundary vertices in angular order (they are built that way).
  std::vector<int> bverts;
  for (int v = 0; v < nv; ++v)
    if (mesh.boundary[v]) bverts.push_back(v);

  std::vector<std::vector<int>> match(mesh.edges.size(), identity_perm(q));

  if (initial_interior != nullptr) {
    if (static_cast<int>(initial_interior->labels.size()) != nv ||
        initial_interior->q != q)
      throw DimensionMismatchError("minimize: initial labeling size mismatch");
    for (int v = 0; v < nv; ++v)
      if (!mesh.boundary[v]) res.labels.labels[v] = initial_interior->labels[v];
  } else if (q > 1) {
    // Transport the boundary fibers along the circle: sheet-order each fiber
    // against its predecessor, so the closing edge picks up the monodromy.
    std::vector<QPoint> ordered(bverts.size());
    ordered[0] = boundary.labels[bverts[0]];
    for (size_t k = 1; k < bverts.size(); ++k) {
      const QPoint& prev = ordered[k - 1];
      const QPoint& raw = boundary.labels[bverts[k]];
      const auto sigma = optimal_matching(prev, raw);
      MatX vals(2, q);
      for (int i = 0; i < q; ++i) vals.col(i) = raw.value(sigma[i]);
      ordered[k] = QPoint(std::move(vals));
    }
    for (size_t k = 0; k < bverts.size(); ++k)
      res.labels.labels[bverts[k]] = ordered[k];
    const auto monodromy = optimal_matching(ordered.back(), ordered.front());

    // Edges crossing the positive-x cut carry the monodromy; everything
    // else starts from the identity matching.
    for (size_t e = 0; e < mesh.edges.size(); ++e) {
      const auto& edge = mesh.edges[e];
      if (edge.u == 0 || edge.v == 0) continue;
      const double au = vertex_angle(mesh, edge.u);
      const double av = vertex_angle(mesh, edge.v);
      if (std::abs(au - av) > kPi)
        match[e] = (au > av) ? monodromy : inverse_perm(monodromy);
    }
    res.labels.labels = solve_lifted(mesh, q, res.labels.labels, match);
  } else {
    // Q = 1: plain harmonic extension is both the start and the minimizer.
    res.labels.labels = solve_lifted(mesh, q, res.labels.labels, match);
  }

  double energy = discrete_energy(mesh, res.labels);
  res.log.push_back({0, energy, 0});

  for (int it = 1; it <= max_iterations; ++it) {
    int changes = 0;
    std::vector<std::vector<int>> fresh(mesh.edges.size());
    parallel_for(static_cast<int>(mesh.edges.size()), [&](int e) {
      const auto& edge = mesh.edges[e];
      fresh[e] = optimal_matching(res.labels.labels[edge.u],
                                  res.labels.labels[edge.v]);
    });
    for (size_t e = 0; e < mesh.edges.size(); ++e)
      if (fresh[e] != match[e]) ++changes;
    match = std::move(fresh);

    res.labels.labels = solve_lifted(mesh, q, res.labels.labels, match);
    const double next = discrete_energy(mesh, res.labels);
    if (next > energy + 1e-9 * (1.0 + std::abs(energy)))
      throw InternalLogicError("minimize: energy increased across an iteration");
    res.log.push_back({it, next, changes});
    const bool done = (energy - next) < 1e-10 * (1.0 + std::abs(next));
    energy = next;
    if (done) {
      res.converged = true;
      break;
    }
  }
  return res;
}

RadialProfile compare_frequency_discrete(const DiskMesh& mesh,
                                         const QLabeling& labeling,
                                         const std::vector<double>& radii) {
  if (static_cast<int>(labeling.labels.size()) != mesh.vertex_count())
    throw DimensionMismatchError("compare_frequency_discrete: size mismatch");
  const int r = mesh.resolution;

  std::vector<int> rings;
  for (double want : radii) {
    const int i = static_cast<int>(std::lround(want * r));
    if (i < 1 || i > r ||
        std::abs(mesh.ring_radius(i) - want) > 0.5 / r + 1e-12)
      throw ResolutionError(
          "compare_frequency_discrete: no mesh ring near requested radius");
    if (rings.empty() || rings.back() != i) rings.push_back(i);
  }

  // Cumulative energy of the subgraph spanned by rings 0..i.
  std::vector<double> ring_energy(r + 1, 0.0);
  for (const auto& edge : mesh.edges) {
    const int outer = std::max(mesh.ring[edge.u], mesh.ring[edge.v]);
    ring_energy[outer] +=
        edge.weight * metric_g_sq(labeling.labels[edge.u], labeling.labels[edge.v]);
  }
  std::vector<double> cumulative(r + 1, 0.0);
  for (int i = 1; i <= r; ++i) cumulative[i] = cumulative[i - 1] + ring_energy[i];

  RadialProfile prof;
  prof.center = Complex(0, 0);
  for (int i : rings) {
    const double rad = mesh.ring_radius(i);
    double mass = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v)
      if (mesh.ring[v] == i)
        mass += labeling.labels[v].values().squaredNorm() * (kTwoPi * rad / (6 * i));
    prof.radii.push_back(rad);
    prof.D.push_back(cumulative[i]);
    prof.H.push_back(mass);
    if (mass <= 1e-14 * (1.0 + cumulative[i]))
      throw DegenerateHeightError(
          "compare_frequency_discrete: boundary-ring mass degenerates");
    prof.I.push_back(rad * cumulative[i] / mass);
  }
  return prof;
}

}  // namespace qfreq
