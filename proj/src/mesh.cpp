#include "qfreq/mesh.hpp"

#include <cmath>
#include <map>

#include "qfreq/errors.hpp"

namespace qfreq {

namespace {

double cot_at(const Vec2& apex, const Vec2& b, const Vec2& c) {
  const Vec2 u = b - apex, v = c - apex;
  const double cross = u.x() * v.y() - u.y() * v.x();
  return u.dot(v) / std::abs(cross);
}

}  // namespace

DiskMesh build_disk_mesh(int resolution, WeightScheme scheme) {
  if (resolution < 3) throw DomainError("build_disk_mesh: resolution >= 3");
  const int r = resolution;

  DiskMesh mesh;
  mesh.resolution = r;
  const int total = 1 + 3 * r * (r + 1);
  mesh.vertices.resize(2, total);
  mesh.boundary.assign(total, 0);
  mesh.ring.assign(total, 0);

  std::vector<int> ring_start(r + 1, 0);
  mesh.vertices.col(0) = Vec2::Zero();
  int idx = 1;
  for (int i = 1; i <= r; ++i) {
    ring_start[i] = idx;
    const int n = 6 * i;
    const double rad = static_cast<double>(i) / r;
    for (int j = 0; j < n; ++j, ++idx) {
      const double ang = kTwoPi * j / n;
      mesh.vertices.col(idx) = Vec2(rad * std::cos(ang), rad * std::sin(ang));
      mesh.ring[idx] = i;
      if (i == r) mesh.boundary[idx] = 1;
    }
  }

  // Fan around the center.
  for (int j = 0; j < 6; ++j)
    mesh.triangles.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % 6});

  // Annulus between ring i and ring i+1: merge the two angular sequences.
  for (int i = 1; i < r; ++i) {
    const int n1 = 6 * i, n2 = 6 * (i + 1);
    const int s1 = ring_start[i], s2 = ring_start[i + 1];
    int a = 0, b = 0;
    while (a < n1 || b < n2) {
      const double next_in = kTwoPi * (a + 1) / n1;
      const double next_out = kTwoPi * (b + 1) / n2;
      if (b >= n2 || (a < n1 && next_in <= next_out)) {
        mesh.triangles.push_back(
            {s1 + a % n1, s1 + (a + 1) % n1, s2 + b % n2});
        ++a;
      } else {
        mesh.triangles.push_back(
            {s1 + a % n1, s2 + (b + 1) % n2, s2 + b % n2});
        ++b;
      }
    }
  }

  std::map<std::pair<int, int>, double> weights;
  auto add = [&](int u, int v, double w) {
    if (u > v) std::swap(u, v);
    weights[{u, v}] += w;
  };
  for (const auto& t : mesh.triangles) {
    const Vec2 pa = mesh.vertices.col(t[0]);
    const Vec2 pb = mesh.vertices.col(t[1]);
    const Vec2 pc = mesh.vertices.col(t[2]);
    if (scheme == WeightScheme::kCotangent) {
      add(t[1], t[2], 0.5 * cot_at(pa, pb, pc));
      add(t[0], t[2], 0.5 * cot_at(pb, pa, pc));
      add(t[0], t[1], 0.5 * cot_at(pc, pa, pb));
    } else {
      add(t[1], t[2], 0.0);
      add(t[0], t[2], 0.0);
      add(t[0], t[1], 0.0);
    }
  }
  for (auto& [key, w] : weights) {
    if (scheme == WeightScheme::kUniform) w = 1.0;
    if (!(w > 1e-12))
      throw InternalLogicError("build_disk_mesh: nonpositive edge weight");
    mesh.edges.push_back({key.first, key.second, w});
  }
  return mesh;
}

}  // namespace qfreq
