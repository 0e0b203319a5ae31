#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qfreq/covering.hpp"
#include "qfreq/csv.hpp"
#include "qfreq/curve.hpp"
#include "qfreq/errors.hpp"
#include "qfreq/frequency.hpp"
#include "qfreq/graph_dirichlet.hpp"
#include "qfreq/mesh.hpp"
#include "qfreq/singular.hpp"

namespace {

using namespace qfreq;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitInvariant = 3;

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw DomainError("expected 'x,y' pair, got: " + text);
  return Complex(std::stod(text.substr(0, comma)),
                 std::stod(text.substr(comma + 1)));
}

struct CurveOptions {
  std::string file;
  std::string example;
  double eps = 0.1;
  std::vector<std::string> zi;

  AlgebraicCurve build() const {
    if (!file.empty()) {
      if (!std::filesystem::exists(file))
        throw DomainError("curve descriptor not found: " + file);
      return load_curve(file);
    }
    if (example == "g") return make_g_eps(eps);
    if (example == "f") {
      std::vector<Complex> points;
      for (const auto& s : zi) points.push_back(parse_complex(s));
      if (points.empty())
        points = {Complex(0.3, 0.1), Complex(-0.25, 0.2), Complex(0.05, -0.35)};
      return make_f_eps(eps, points);
    }
    throw DomainError("no curve given: use --curve FILE or --example {f,g}");
  }
};

void add_curve_options(CLI::App* cmd, CurveOptions& opt) {
  cmd->add_option("--curve", opt.file, "curve descriptor (JSON)");
  cmd->add_option("--example", opt.example, "example family: f or g")
      ->check(CLI::IsMember({"f", "g"}));
  cmd->add_option("--eps", opt.eps, "family parameter epsilon");
  cmd->add_option("--zi", opt.zi,
                  "branch point 're,im' for family f (repeatable)");
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2)
    throw DomainError("need 0 < rmin < rmax and samples >= 2");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  out.back() = hi;
  return out;
}

std::filesystem::path out_file(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return std::filesystem::path(dir) / name;
}

int cmd_frequency(const CurveOptions& copt, const std::string& center,
                  double rmin, double rmax, int samples,
                  const std::string& out) {
  const AlgebraicCurve curve = copt.build();
  const Complex x = parse_complex(center);
  const RadialProfile prof =
      compute_radial_profile(curve, x, log_spaced(rmin, rmax, samples));
  write_file_atomic(out_file(out, "profile.csv").string(), profile_csv(prof));
  write_file_atomic(out_file(out, "profile.gp").string(),
                    profile_plot_script("profile.csv"));
  std::printf("r=%s I=%s D=%s H=%s\n", format_g17(prof.radii.back()).c_str(),
              format_g17(prof.I.back()).c_str(),
              format_g17(prof.D.back()).c_str(),
              format_g17(prof.H.back()).c_str());
  return kExitOk;
}

int cmd_singular(const CurveOptions& copt, double radius,
                 const std::string& out) {
  const AlgebraicCurve curve = copt.build();
  const auto records =
      classify_d_q(curve, find_singular_candidates(curve, Complex(0, 0), radius));
  write_file_atomic(out_file(out, "records.csv").string(), records_csv(records));
  int full = 0;
  for (const auto& r : records)
    if (r.is_full_multiplicity && std::abs(r.location) <= radius * (1 + 1e-12))
      ++full;
  std::printf("count=%d records=%zu\n", full, records.size());
  return kExitOk;
}

int cmd_count(const CurveOptions& copt, const CoveringConfig& config,
              const std::string& out) {
  const AlgebraicCurve curve = copt.build();
  validate(config);
  const BoundReport rep = theorem_bound_report(curve, config);
  write_file_atomic(out_file(out, "trace.csv").string(), trace_csv(rep.trace));
  std::printf("count=%d I02=%s fitted_base=%s cert=%s sum_xi=%d\n", rep.count,
              format_g17(rep.i02).c_str(), format_g17(rep.fitted_base).c_str(),
              format_g17(rep.trace.certificate).c_str(), rep.trace.sum_xi);
  std::printf("chain: delta*sum_xi=%s drop_sum=%s C(lambda)=%s claim_rhs=%s\n",
              format_g17(rep.delta_sum_xi).c_str(),
              format_g17(rep.drop_sum).c_str(), format_g17(rep.c_lambda).c_str(),
              format_g17(rep.claim_rhs).c_str());
  if (!rep.trace.completed) {
    std::fprintf(stderr,
                 "count: covering did not isolate a single point before "
                 "max_depth; check tolerances\n");
    return kExitNumeric;
  }
  if (!rep.trace.j_bound_ok || !rep.trace.count_bound_ok) {
    std::fprintf(stderr, "count: covering certificate failed\n");
    return kExitInvariant;
  }
  if (!rep.chain_ok) {
    std::fprintf(stderr,
                 "count: delta*sum_xi exceeds the measured drops; delta is "
                 "miscalibrated for this curve\n");
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_verify(const CurveOptions& copt,
               const std::vector<std::string>& centers, double rmin,
               double rmax, int samples, bool corrupt) {
  const AlgebraicCurve curve = copt.build();
  struct Violation {
    std::string what;
    double amount;
  };
  std::vector<Violation> violations;
  auto check = [&](const std::string& what, double margin, double slack) {
    std::printf("%-42s margin=%s\n", what.c_str(), format_g17(margin).c_str());
    if (margin < -slack) violations.push_back({what, margin});
  };

  for (const auto& ctext : centers) {
    const Complex x = parse_complex(ctext);
    const std::string tag = "[" + ctext + "] ";

    RadialProfile prof =
        compute_radial_profile(curve, x, log_spaced(rmin, rmax, samples));
    if (corrupt && prof.I.size() > 2) prof.I[prof.I.size() / 2] += 0.25;
    double worst = 0.0;
    for (size_t i = 1; i < prof.I.size(); ++i)
      worst = std::min(worst, prof.I[i] - prof.I[i - 1]);
    check(tag + "frequency_nondecreasing", worst, 1e-6);

    const MonotonicityReport mono = monotonicity_check(curve, x, rmin, rmax);
    check(tag + "difference_identity",
          1e-3 * (1.0 + std::abs(mono.lhs)) - mono.residual, 0.0);
    check(tag + "remainder_nonnegative", mono.rhs, 1e-9);

    const GrowthReport growth = verify_growth_bounds(curve, x, rmin, rmax);
    for (const auto& c : growth.checks) check(tag + c.name, c.margin, c.slack);

    try {
      const PoincareReport poincare = verify_poincare(curve, x, rmin);
      for (const auto& c : poincare.checks) check(tag + c.name, c.margin, c.slack);
    } catch (const PreconditionError&) {
      std::printf("%-42s skipped (not a Q-point)\n",
                  (tag + "poincare_chain").c_str());
    }
  }

  if (!violations.empty()) {
    const auto worst = *std::min_element(
        violations.begin(), violations.end(),
        [](const Violation& a, const Violation& b) { return a.amount < b.amount; });
    std::fprintf(stderr, "verify: %zu violation(s); worst: %s margin=%s\n",
                 violations.size(), worst.what.c_str(),
                 format_g17(worst.amount).c_str());
    return kExitInvariant;
  }
  std::printf("verify: all checks passed\n");
  return kExitOk;
}

int cmd_minimize(const CurveOptions& copt, int resolution, int max_iters,
                 const std::string& weights, const std::string& out) {
  const AlgebraicCurve curve = copt.build();
  const DiskMesh mesh = build_disk_mesh(
      resolution, weights == "uniform" ? WeightScheme::kUniform
                                       : WeightScheme::kCotangent);
  const QLabeling boundary = boundary_trace(curve, mesh);
  if (max_iters == 0)
    std::fprintf(stderr, "minimize: iteration cap 0, returning initialization\n");
  const MinimizeResult res = minimize(mesh, boundary, nullptr, max_iters);
  write_file_atomic(out_file(out, "vertices.csv").string(),
                    mesh_vertices_csv(mesh));
  write_file_atomic(out_file(out, "edges.csv").string(), mesh_edges_csv(mesh));
  write_file_atomic(out_file(out, "labels.csv").string(), labels_csv(res.labels));
  write_file_atomic(out_file(out, "convergence.csv").string(),
                    convergence_csv(res.log));
  std::printf("energy=%s iterations=%zu converged=%d\n",
              format_g17(res.log.back().energy).c_str(), res.log.size() - 1,
              res.converged ? 1 : 0);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency laboratory for plane multivalued energy minimizers"};
  app.require_subcommand(1);

  CurveOptions copt_freq, copt_sing, copt_count, copt_verify, copt_min;
  std::string center = "0,0";
  double rmin = 0.01, rmax = 2.0, radius = 0.5;
  int samples = 20;
  std::string out = ".";
  CoveringConfig config;
  std::vector<std::string> centers{"0,0"};
  double vmin = 0.5, vmax = 1.5;
  int vsamples = 10;
  bool corrupt = false;
  int resolution = 40, max_iters = 200;
  std::string weights = "cotangent";

  auto* freq = app.add_subcommand("frequency", "radial D/H/I profile");
  add_curve_options(freq, copt_freq);
  freq->add_option("--center", center, "profile center 'x,y'");
  freq->add_option("--rmin", rmin, "smallest radius");
  freq->add_option("--rmax", rmax, "largest radius");
  freq->add_option("--samples", samples, "number of radii");
  freq->add_option("--out", out, "output directory");

  auto* sing = app.add_subcommand("singular", "detect multiplicity-Q points");
  add_curve_options(sing, copt_sing);
  sing->add_option("--radius", radius, "detection disk radius");
  sing->add_option("--out", out, "output directory");

  auto* count = app.add_subcommand("count", "covering counter and certificate");
  add_curve_options(count, copt_count);
  count->add_option("--lambda", config.lambda, "scale ratio in (0, 1/5)");
  count->add_option("--delta", config.delta, "drop threshold");
  count->add_option("--max-depth", config.max_depth, "depth cap");
  count->add_option("--out", out, "output directory");

  auto* verify = app.add_subcommand("verify", "run the inequality battery");
  add_curve_options(verify, copt_verify);
  verify->add_option("--center", centers, "battery center 'x,y' (repeatable)");
  verify->add_option("--rmin", vmin, "inner radius");
  verify->add_option("--rmax", vmax, "outer radius");
  verify->add_option("--samples", vsamples, "profile samples");
  verify->add_flag("--corrupt-profile-for-testing", corrupt)->group("");

  auto* minim = app.add_subcommand("minimize", "discrete Dirichlet minimization");
  add_curve_options(minim, copt_min);
  minim->add_option("--resolution", resolution, "mesh resolution (rings)");
  minim->add_option("--max-iters", max_iters, "iteration cap");
  minim->add_option("--weights", weights, "cotangent or uniform")
      ->check(CLI::IsMember({"cotangent", "uniform"}));
  minim->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (freq->parsed())
      return cmd_frequency(copt_freq, center, rmin, rmax, samples, out);
    if (sing->parsed()) return cmd_singular(copt_sing, radius, out);
    if (count->parsed()) return cmd_count(copt_count, config, out);
    if (verify->parsed())
      return cmd_verify(copt_verify, centers, vmin, vmax, vsamples, corrupt);
    if (minim->parsed())
      return cmd_minimize(copt_min, resolution, max_iters, weights, out);
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const DimensionMismatchError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}
