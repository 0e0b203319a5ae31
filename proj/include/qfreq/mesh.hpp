#pragma once

#include <array>
#include <vector>

#include "qfreq/types.hpp"

namespace qfreq {

enum class WeightScheme { kCotangent, kUniform };

struct MeshEdge {
  int u = 0, v = 0;
  double weight = 0.0;
};

/// Triangulated unit disk built from concentric rings (6i vertices on ring
/// i), ring-structured so radial quantities can be read off per ring.
struct DiskMesh {
  Eigen::Matrix2Xd vertices;
  std::vector<MeshEdge> edges;
  std::vector<std::array<int, 3>> triangles;
  std::vector<char> boundary;
  std::vector<int> ring;
  int resolution = 0;

  int vertex_count() const { return static_cast<int>(vertices.cols()); }
  double ring_radius(int i) const {
    return static_cast<double>(i) / resolution;
  }
};

DiskMesh build_disk_mesh(int resolution,
                         WeightScheme scheme = WeightScheme::kCotangent);

}  // namespace qfreq
