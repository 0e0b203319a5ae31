#pragma once

#include <string>
#include <vector>

#include "qfreq/covering.hpp"
#include "qfreq/frequency.hpp"
#include "qfreq/graph_dirichlet.hpp"
#include "qfreq/mesh.hpp"
#include "qfreq/singular.hpp"

namespace qfreq {

/// 17 significant digits, locale-independent.
std::string format_g17(double v);

/// Write whole content to path.tmp, then rename over path; no partial files
/// are ever observable.
void write_file_atomic(const std::string& path, const std::string& content);

std::string profile_csv(const RadialProfile& prof);
std::string records_csv(const std::vector<SingularPointRecord>& records);
std::string trace_csv(const CoveringTrace& trace);
std::string mesh_vertices_csv(const DiskMesh& mesh);
std::string mesh_edges_csv(const DiskMesh& mesh);
std::string labels_csv(const QLabeling& labeling);
std::string convergence_csv(const std::vector<MinimizeLogRow>& log);

/// gnuplot script plotting I against log r from the profile CSV.
std::string profile_plot_script(const std::string& csv_name);

}  // namespace qfreq
