#ifndef WOPSIP_EXPERIMENT_HPP
#define WOPSIP_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "wopsip/analysis.hpp"
#include "wopsip/mesh.hpp"
#include "wopsip/stokes.hpp"

namespace wopsip {

/// One convergence sweep: equation, mesh family, refinement levels, physical
/// and solver parameters, output format.
struct ExperimentConfig {
  std::string equation = "stokes";  // "poisson" | "stokes"
  MeshFamily mesh = MeshFamily::Uniform;
  std::vector<int> n_list = {16, 32, 64, 128};
  double nu = 1.0;
  double eta = 1.0;
  std::string example = "example1";  // stokes: example1|example2; poisson: sin|quadratic
  StokesVariant variant = StokesVariant::Robust;
  double tol = 0.0;  // 0 = equation default (poisson 1e-12, stokes 1e-10)
  std::string format = "csv";  // "csv" | "markdown"
  std::string out;             // empty = stdout
  bool allow_large = false;    // opt-in for n > 128
};

/// Parse a JSON document whose keys mirror the ExperimentConfig fields.
ExperimentConfig config_from_json(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& config);

/// Throws std::invalid_argument unless the n list is strictly increasing,
/// every entry is a power-of-two multiple of the first, and n > 128 only
/// appears with allow_large.
void validate(const ExperimentConfig& config);

/// Poisson manufactured solutions selectable by name:
/// "sin": u = sin(pi x) sin(pi y); "quadratic": u = x (1 - x).
ScalarField poisson_solution_catalog(const std::string& name);

struct ConvergenceResult {
  std::vector<ErrorRecord> records;
  bool solver_ok = true;
};

/// Generate, assemble, solve and measure for each n; rates are attached
/// between consecutive rows with doubled n. Solver failures flag the row and
/// the sweep continues.
ConvergenceResult run_convergence(const ExperimentConfig& config);

std::string render_table(const std::vector<ErrorRecord>& records,
                         const std::string& format);

struct MeshReportRow {
  int n = 0;
  double h = 0.0;
  double max_HT_over_hT = 0.0;
  double max_angle_deg = 0.0;
  double max_aspect_ratio = 0.0;
};

std::vector<MeshReportRow> run_mesh_report(MeshFamily family,
                                           const std::vector<int>& n_list);
std::string render_mesh_report(const std::vector<MeshReportRow>& rows,
                               const std::string& format);

}  // namespace wopsip

#endif
