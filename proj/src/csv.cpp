#include "qfreq/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qfreq/errors.hpp"

namespace qfreq {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open for writing: " + tmp);
    out << content;
    if (!out.good()) throw DomainError("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string profile_csv(const RadialProfile& prof) {
  std::ostringstream out;
  out << "r,D,H,I\n";
  for (size_t i = 0; i < prof.radii.size(); ++i)
    out << format_g17(prof.radii[i]) << ',' << format_g17(prof.D[i]) << ','
        << format_g17(prof.H[i]) << ',' << format_g17(prof.I[i]) << '\n';
  return out.str();
}

std::string records_csv(const std::vector<SingularPointRecord>& records) {
  std::ostringstream out;
  out << "location_re,location_im,fiber_diameter,small_scale_frequency,"
         "is_full_multiplicity\n";
  for (const auto& r : records)
    out << format_g17(r.location.real()) << ',' << format_g17(r.location.imag())
        << ',' << format_g17(r.fiber_diameter) << ','
        << format_g17(r.small_scale_frequency) << ','
        << (r.is_full_multiplicity ? 1 : 0) << '\n';
  return out.str();
}

std::string trace_csv(const CoveringTrace& trace) {
  std::ostringstream out;
  out << "level,center_re,center_im,N_k,J_k,xi\n";
  for (const auto& lvl : trace.levels)
    out << lvl.k << ',' << format_g17(lvl.center.real()) << ','
        << format_g17(lvl.center.imag()) << ',' << lvl.n_k << ',' << lvl.j_k
        << ',' << lvl.xi << '\n';
  out << "# summary: N0=" << trace.n0 << " depth=" << trace.depth
      << " sum_xi=" << trace.sum_xi
      << " certificate=" << format_g17(trace.certificate)
      << " completed=" << (trace.completed ? 1 : 0)
      << " j_bound_ok=" << (trace.j_bound_ok ? 1 : 0)
      << " count_bound_ok=" << (trace.count_bound_ok ? 1 : 0) << '\n';
  return out.str();
}

std::string mesh_vertices_csv(const DiskMesh& mesh) {
  std::ostringstream out;
  out << "vertex,x,y,ring,boundary\n";
  for (int v = 0; v < mesh.vertex_count(); ++v)
    out << v << ',' << format_g17(mesh.vertices(0, v)) << ','
        << format_g17(mesh.vertices(1, v)) << ',' << mesh.ring[v] << ','
        << int(mesh.boundary[v]) << '\n';
  return out.str();
}

std::string mesh_edges_csv(const DiskMesh& mesh) {
  std::ostringstream out;
  out << "u,v,weight\n";
  for (const auto& e : mesh.edges)
    out << e.u << ',' << e.v << ',' << format_g17(e.weight) << '\n';
  return out.str();
}

std::string labels_csv(const QLabeling& labeling) {
  std::ostringstream out;
  out << "vertex,sheet,re,im\n";
  for (size_t v = 0; v < labeling.labels.size(); ++v)
    for (int i = 0; i < labeling.q; ++i) {
      const VecX p = labeling.labels[v].value(i);
      out << v << ',' << i << ',' << format_g17(p[0]) << ',' << format_g17(p[1])
          << '\n';
    }
  return out.str();
}

std::string convergence_csv(const std::vector<MinimizeLogRow>& log) {
  std::ostringstream out;
  out << "iteration,energy,matching_changes\n";
  for (const auto& row : log)
    out << row.iteration << ',' << format_g17(row.energy) << ','
        << row.matching_changes << '\n';
  return out.str();
}

std::string profile_plot_script(const std::string& csv_name) {
  std::ostringstream out;
  out << "set datafile separator ','\n"
      << "set logscale x\n"
      << "set xlabel 'r'\n"
      << "set ylabel 'I(r)'\n"
      << "set key left top\n"
      << "plot '" << csv_name << "' every ::1 using 1:4 with linespoints title 'frequency'\n";
  return out.str();
}

}  // namespace qfreq
